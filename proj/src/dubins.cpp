#include "pdsim/dubins.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <optional>

namespace pdsim {

namespace {

constexpr double kLengthEps = 1e-12;

Configuration advance(const Configuration& c, const DubinsSegment& seg, double radius, double s) {
    const double psi = c.heading;
    switch (seg.kind) {
        case SegmentKind::Straight:
            return {c.position + s * unit_vector(psi), psi};
        case SegmentKind::LeftArc: {
            const Vec2 center = c.position + radius * Vec2{-std::sin(psi), std::cos(psi)};
            const double d = s / radius;
            return {center + radius * Vec2{std::sin(psi + d), -std::cos(psi + d)}, psi + d};
        }
        case SegmentKind::RightArc: {
            const Vec2 center = c.position + radius * Vec2{std::sin(psi), -std::cos(psi)};
            const double d = s / radius;
            return {center + radius * Vec2{-std::sin(psi - d), std::cos(psi - d)}, psi - d};
        }
    }
    return c;
}

struct Word {
    std::array<SegmentKind, 3> kinds;
    // normalized segment lengths (angles for arcs, distance for straight), or nullopt
    std::optional<std::array<double, 3>> params;
};

// Normalized-word parameter formulas; d is distance over radius, alpha/beta the
// start/goal headings relative to the connecting axis. All arcs in [0, 2*pi).
std::optional<std::array<double, 3>> word_lsl(double d, double a, double b) {
    const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
    const double tmp = 2.0 + d * d - 2.0 * (ca * cb + sa * sb - d * (sa - sb));
    if (tmp < 0.0) return std::nullopt;
    const double th = std::atan2(cb - ca, d + sa - sb);
    return std::array<double, 3>{mod_two_pi(-a + th), std::sqrt(std::max(tmp, 0.0)),
                                 mod_two_pi(b - th)};
}

std::optional<std::array<double, 3>> word_rsr(double d, double a, double b) {
    const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
    const double tmp = 2.0 + d * d - 2.0 * (ca * cb + sa * sb - d * (sb - sa));
    if (tmp < 0.0) return std::nullopt;
    const double th = std::atan2(ca - cb, d - sa + sb);
    return std::array<double, 3>{mod_two_pi(a - th), std::sqrt(std::max(tmp, 0.0)),
                                 mod_two_pi(-b + th)};
}

std::optional<std::array<double, 3>> word_lsr(double d, double a, double b) {
    const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
    const double tmp = -2.0 + d * d + 2.0 * (ca * cb + sa * sb + d * (sa + sb));
    if (tmp < 0.0) return std::nullopt;
    const double p = std::sqrt(std::max(tmp, 0.0));
    const double th = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
    return std::array<double, 3>{mod_two_pi(-a + th), p, mod_two_pi(-b + th)};
}

std::optional<std::array<double, 3>> word_rsl(double d, double a, double b) {
    const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
    const double tmp = d * d - 2.0 + 2.0 * (ca * cb + sa * sb - d * (sa + sb));
    if (tmp < 0.0) return std::nullopt;
    const double p = std::sqrt(std::max(tmp, 0.0));
    const double th = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
    return std::array<double, 3>{mod_two_pi(a - th), p, mod_two_pi(b - th)};
}

std::optional<std::array<double, 3>> word_rlr(double d, double a, double b) {
    const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
    const double tmp = (6.0 - d * d + 2.0 * (ca * cb + sa * sb + d * (sa - sb))) / 8.0;
    if (std::abs(tmp) > 1.0) return std::nullopt;
    const double p = kTwoPi - std::acos(tmp);
    const double th = std::atan2(ca - cb, d - sa + sb);
    const double t = mod_two_pi(a - th + 0.5 * p);
    return std::array<double, 3>{t, p, mod_two_pi(a - b - t + p)};
}

std::optional<std::array<double, 3>> word_lrl(double d, double a, double b) {
    const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
    const double tmp = (6.0 - d * d + 2.0 * (ca * cb + sa * sb - d * (sa - sb))) / 8.0;
    if (std::abs(tmp) > 1.0) return std::nullopt;
    const double p = kTwoPi - std::acos(tmp);
    const double th = std::atan2(-ca + cb, d + sa - sb);
    const double t = mod_two_pi(-a + th + 0.5 * p);
    return std::array<double, 3>{t, p, mod_two_pi(b - a - t + p)};
}

void append_segment(std::vector<DubinsSegment>& segs, SegmentKind kind, double length) {
    if (length > kLengthEps) segs.push_back({kind, length});
}

constexpr SegmentKind L = SegmentKind::LeftArc;
constexpr SegmentKind R = SegmentKind::RightArc;
constexpr SegmentKind S = SegmentKind::Straight;

// Free-heading candidate in the canonical frame (start at origin, heading 0).
struct FreeCandidate {
    double length = std::numeric_limits<double>::infinity();
    std::array<DubinsSegment, 2> segs{};
    int n = 0;
};

void consider_cs(FreeCandidate& best, Vec2 p, double radius, bool left) {
    const double ys = left ? p.y : -p.y;
    const Vec2 w{p.x, ys - radius};
    const double m = w.norm();
    if (m < radius - 1e-12) return;
    const double s = std::sqrt(std::max(m * m - radius * radius, 0.0));
    const double a = std::atan2(w.y, w.x) - std::atan2(s, radius);
    const double delta = mod_two_pi(a + 0.5 * kPi);
    const double len = radius * delta + s;
    if (len < best.length) {
        best.length = len;
        best.segs[0] = {left ? L : R, radius * delta};
        best.segs[1] = {S, s};
        best.n = 2;
    }
}

void consider_cc(FreeCandidate& best, Vec2 p, double radius, bool left_first) {
    const double ys = left_first ? p.y : -p.y;
    const Vec2 pp{p.x, ys};
    const Vec2 w{pp.x, pp.y - radius};
    const double m = w.norm();
    if (m < radius - 1e-12 || m > 3.0 * radius + 1e-12) return;
    const double h = (m * m + 3.0 * radius * radius) / (4.0 * radius);
    const double sv = std::clamp(h / m, -1.0, 1.0);
    const double delta0 = std::atan2(w.y, w.x);
    for (const double a_raw : {delta0 + std::asin(sv), delta0 + kPi - std::asin(sv)}) {
        const double a = mod_two_pi(a_raw);
        const Vec2 u{std::sin(a), -std::cos(a)};
        const Vec2 c2 = Vec2{0.0, radius} + 2.0 * radius * u;
        const Vec2 vp = pp - c2;
        const double b = mod_two_pi((a + 0.5 * kPi) - std::atan2(vp.y, vp.x));
        const double len = radius * (a + b);
        if (len < best.length) {
            best.length = len;
            best.segs[0] = {left_first ? L : R, radius * a};
            best.segs[1] = {left_first ? R : L, radius * b};
            best.n = 2;
        }
    }
}

}  // namespace

double DubinsPath::total_length() const {
    double s = 0.0;
    for (const auto& seg : segments) s += seg.length;
    return s;
}

Configuration DubinsPath::pose_at(double s) const {
    Configuration c = start;
    for (const auto& seg : segments) {
        if (s <= seg.length) return advance(c, seg, turning_radius, std::max(s, 0.0));
        c = advance(c, seg, turning_radius, seg.length);
        s -= seg.length;
    }
    return c;
}

DubinsPath shortest_path_fixed_heading(const Configuration& start, const Configuration& goal,
                                       double radius) {
    assert(radius > 0.0);
    const Vec2 diff = goal.position - start.position;
    const double dist = diff.norm();
    const double axis = dist > 1e-14 ? diff.angle() : 0.0;
    const double d = dist / radius;
    const double a = mod_two_pi(start.heading - axis);
    const double b = mod_two_pi(goal.heading - axis);

    const std::array<Word, 6> words{{
        {{L, S, L}, word_lsl(d, a, b)},
        {{R, S, R}, word_rsr(d, a, b)},
        {{L, S, R}, word_lsr(d, a, b)},
        {{R, S, L}, word_rsl(d, a, b)},
        {{R, L, R}, word_rlr(d, a, b)},
        {{L, R, L}, word_lrl(d, a, b)},
    }};

    const Word* best = nullptr;
    double best_len = std::numeric_limits<double>::infinity();
    for (const auto& w : words) {
        if (!w.params) continue;
        const double len = ((*w.params)[0] + (*w.params)[1] + (*w.params)[2]) * radius;
        if (len < best_len) {
            best_len = len;
            best = &w;
        }
    }
    assert(best != nullptr);  // at least LSL/RSR always admit a solution

    DubinsPath path{start, radius, {}};
    for (int i = 0; i < 3; ++i)
        append_segment(path.segments, best->kinds[i], (*best->params)[i] * radius);
    return path;
}

DubinsPath shortest_path_free_heading(const Configuration& start, Vec2 goal_point, double radius) {
    assert(radius > 0.0);
    DubinsPath path{start, radius, {}};
    const Vec2 local = (goal_point - start.position).rotated(-start.heading);
    if (local.norm() < 1e-12) return path;  // zero-distance: empty path

    FreeCandidate best;
    consider_cs(best, local, radius, true);
    consider_cs(best, local, radius, false);
    consider_cc(best, local, radius, true);
    consider_cc(best, local, radius, false);
    assert(best.n > 0);

    for (int i = 0; i < best.n; ++i)
        append_segment(path.segments, best.segs[i].kind, best.segs[i].length);
    return path;
}

double time_to_config(const Configuration& start, const Configuration& goal,
                      const Kinematics& kin) {
    return shortest_path_fixed_heading(start, goal, kin.turning_radius()).total_length() /
           kin.speed;
}

double time_to_point(const Configuration& start, Vec2 goal_point, const Kinematics& kin) {
    return shortest_path_free_heading(start, goal_point, kin.turning_radius()).total_length() /
           kin.speed;
}

std::vector<TimedPose> sample_path(const DubinsPath& path, double dt, const Kinematics& kin) {
    assert(dt > 0.0);
    const double total = path.total_length();
    const double t_end = total / kin.speed;
    std::vector<TimedPose> out;
    out.reserve(static_cast<std::size_t>(t_end / dt) + 2);
    for (double t = 0.0;; t += dt) {
        if (t >= t_end - 1e-12) break;
        out.push_back({t, path.pose_at(t * kin.speed)});
    }
    out.push_back({t_end, path.pose_at(total)});
    return out;
}

}  // namespace pdsim
