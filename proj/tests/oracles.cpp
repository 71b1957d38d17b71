#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

namespace pdsim::oracles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec2 heading_vec(double th) { return {std::cos(th), std::sin(th)}; }

// Oracle-local exact segment stepping (elementary circle geometry, written
// separately from the library's evaluator).
struct OracleSeg {
    int turn;  // +1 left, -1 right, 0 straight
    double length;
};

Configuration step_exact(const Configuration& c, const OracleSeg& seg, double R) {
    if (seg.turn == 0)
        return {c.position + seg.length * heading_vec(c.heading), c.heading};
    const double sweep = seg.turn * seg.length / R;
    const Vec2 center = c.position + R * heading_vec(c.heading + seg.turn * kPi / 2.0);
    const Vec2 radial = c.position - center;
    return {center + radial.rotated(sweep), c.heading + sweep};
}

Configuration run_exact(const Configuration& start, const std::vector<OracleSeg>& segs,
                        double R) {
    Configuration c = start;
    for (const auto& s : segs) c = step_exact(c, s, R);
    return c;
}

bool reaches(const Configuration& got, const Configuration& want, double tol) {
    return (got.position - want.position).norm() <= tol &&
           std::abs(wrap_angle(got.heading - want.heading)) <= tol;
}

double arc_amount(double from_angle, double to_angle, int turn) {
    return turn > 0 ? mod_two_pi(to_angle - from_angle) : mod_two_pi(from_angle - to_angle);
}

}  // namespace

Configuration integrate_unicycle(const DubinsPath& path, const Kinematics& kin, double dt) {
    double x = path.start.position.x, y = path.start.position.y, th = path.start.heading;
    for (const auto& seg : path.segments) {
        double omega = 0.0;
        if (seg.kind == SegmentKind::LeftArc) omega = kin.max_turn_rate;
        if (seg.kind == SegmentKind::RightArc) omega = -kin.max_turn_rate;
        const double duration = seg.length / kin.speed;
        const int n = std::max(1, static_cast<int>(std::ceil(duration / dt)));
        const double h = duration / n;
        for (int k = 0; k < n; ++k) {
            x += kin.speed * std::cos(th) * h;
            y += kin.speed * std::sin(th) * h;
            th += omega * h;
        }
    }
    return {x, y, th};
}

double fixed_heading_geometric(const Configuration& start, const Configuration& goal,
                               double radius) {
    const double R = radius;
    const double tol = 1e-6 * std::max(1.0, (goal.position - start.position).norm() + R);
    double best = kInf;

    auto circle = [&](const Configuration& c, int turn) {
        return c.position + R * heading_vec(c.heading + turn * kPi / 2.0);
    };

    // CSC words
    for (const int s1 : {+1, -1}) {
        for (const int s2 : {+1, -1}) {
            const Vec2 c1 = circle(start, s1);
            const Vec2 c2 = circle(goal, s2);
            const Vec2 d = c2 - c1;
            const double D = d.norm();
            double theta_t;
            if (s1 == s2) {
                if (D < 1e-14) {
                    // same circle: single arc
                    const double a = arc_amount((start.position - c1).angle(),
                                                (goal.position - c1).angle(), s1);
                    std::vector<OracleSeg> segs{{s1, R * a}};
                    if (reaches(run_exact(start, segs, R), goal, tol))
                        best = std::min(best, R * a);
                    continue;
                }
                theta_t = d.angle();
            } else {
                if (D < 2.0 * R) continue;
                theta_t = d.angle() + s1 * std::asin(std::min(1.0, 2.0 * R / D));
            }
            const Vec2 t1 = c1 + R * heading_vec(theta_t - s1 * kPi / 2.0);
            const Vec2 t2 = c2 + R * heading_vec(theta_t - s2 * kPi / 2.0);
            const double straight = (t2 - t1).dot(heading_vec(theta_t));
            if (straight < -1e-9) continue;
            const double a1 = arc_amount((start.position - c1).angle(), (t1 - c1).angle(), s1);
            const double a2 = arc_amount((t2 - c2).angle(), (goal.position - c2).angle(), s2);
            std::vector<OracleSeg> segs{
                {s1, R * a1}, {0, std::max(straight, 0.0)}, {s2, R * a2}};
            if (!reaches(run_exact(start, segs, R), goal, tol)) continue;
            best = std::min(best, R * (a1 + a2) + std::max(straight, 0.0));
        }
    }

    // CCC words (middle circle on either side of the center line)
    for (const int s1 : {+1, -1}) {
        const Vec2 c1 = circle(start, s1);
        const Vec2 c2 = circle(goal, s1);
        const Vec2 d = c2 - c1;
        const double D = d.norm();
        if (D > 4.0 * R || D < 1e-14) continue;
        const double h = std::sqrt(std::max(4.0 * R * R - 0.25 * D * D, 0.0));
        const Vec2 mid = c1 + 0.5 * d;
        const Vec2 perp = Vec2{-d.y, d.x} * (1.0 / D);
        for (const double side : {+1.0, -1.0}) {
            const Vec2 c3 = mid + side * h * perp;
            const Vec2 u1 = (c3 - c1) * (1.0 / (c3 - c1).norm());
            const Vec2 u2 = (c3 - c2) * (1.0 / (c3 - c2).norm());
            const Vec2 p1 = c1 + R * u1;
            const Vec2 p2 = c2 + R * u2;
            const double a1 = arc_amount((start.position - c1).angle(), (p1 - c1).angle(), s1);
            const double am = arc_amount((p1 - c3).angle(), (p2 - c3).angle(), -s1);
            const double a2 = arc_amount((p2 - c2).angle(), (goal.position - c2).angle(), s1);
            std::vector<OracleSeg> segs{{s1, R * a1}, {-s1, R * am}, {s1, R * a2}};
            if (!reaches(run_exact(start, segs, R), goal, tol)) continue;
            best = std::min(best, R * (a1 + am + a2));
        }
    }
    return best;
}

ScanResult fixed_heading_scan(const Configuration& start, const Configuration& goal,
                              double radius, int steps) {
    const double R = radius;
    const double step = kTwoPi / steps;
    const double dist = (goal.position - start.position).norm();
    const double accept = 2.0 * step * (dist + 6.0 * R);
    double best = kInf;

    auto circle = [&](const Configuration& c, int turn) {
        return c.position + R * heading_vec(c.heading + turn * kPi / 2.0);
    };

    for (const int s1 : {+1, -1}) {
        const Vec2 c1 = circle(start, s1);
        const double a0 = (start.position - c1).angle();
        for (int k = 0; k < steps; ++k) {
            const double a = k * step;
            const Vec2 pos1 = c1 + R * heading_vec(a0 + s1 * a);
            const double h1 = start.heading + s1 * a;
            // turn-straight-turn: final arc fixed by the heading defect
            for (const int s2 : {+1, -1}) {
                const double q = s2 > 0 ? mod_two_pi(goal.heading - h1)
                                        : mod_two_pi(h1 - goal.heading);
                // start point of the final arc, backed out from the goal
                const Vec2 c2 = circle(goal, s2);
                const Vec2 radial = (goal.position - c2).rotated(-s2 * q);
                const Vec2 g1 = c2 + radial;
                const Vec2 gap = g1 - pos1;
                const double along = gap.dot(heading_vec(h1));
                const double across = std::abs(gap.cross(heading_vec(h1)));
                if (across > accept || along < -accept) continue;
                best = std::min(best, R * (a + q) + std::max(along, 0.0));
            }
            // turn-turn-turn: middle circle must touch the goal-side circle
            const Vec2 cm = pos1 + R * heading_vec(h1 - s1 * kPi / 2.0);
            const Vec2 cg = circle(goal, s1);
            const double gap = std::abs((cm - cg).norm() - 2.0 * R);
            if (gap * 1.0 <= accept) {
                const Vec2 touch = cm + 0.5 * (cg - cm);
                const double am = arc_amount((pos1 - cm).angle(), (touch - cm).angle(), -s1);
                const double hm = h1 - s1 * am;
                const double a2 = s1 > 0 ? mod_two_pi(goal.heading - hm)
                                         : mod_two_pi(hm - goal.heading);
                best = std::min(best, R * (a + am + a2));
            }
        }
    }
    return {best, accept + 2.0 * step * (dist + 6.0 * R)};
}

ScanResult free_heading_scan(const Configuration& start, Vec2 goal, double radius, int steps) {
    const double R = radius;
    const double step = kTwoPi / steps;
    const double dist = (goal - start.position).norm();
    const double accept = 2.0 * step * (dist + 4.0 * R);
    double best = dist < 1e-12 ? 0.0 : kInf;

    for (const int s1 : {+1, -1}) {
        const Vec2 c1 = start.position + R * heading_vec(start.heading + s1 * kPi / 2.0);
        const double a0 = (start.position - c1).angle();
        for (int k = 0; k < steps; ++k) {
            const double a = k * step;
            const Vec2 pos1 = c1 + R * heading_vec(a0 + s1 * a);
            const double h1 = start.heading + s1 * a;
            const Vec2 gap = goal - pos1;
            // straight second segment
            const double along = gap.dot(heading_vec(h1));
            const double across = std::abs(gap.cross(heading_vec(h1)));
            if (across <= accept && along >= -accept)
                best = std::min(best, R * a + std::max(along, 0.0));
            // opposite-turn second arc
            const Vec2 c2 = pos1 + R * heading_vec(h1 - s1 * kPi / 2.0);
            if (std::abs((goal - c2).norm() - R) <= accept) {
                const double b = arc_amount((pos1 - c2).angle(), (goal - c2).angle(), -s1);
                best = std::min(best, R * (a + b));
            }
        }
    }
    return {best, accept + 2.0 * step * (dist + 4.0 * R)};
}

std::vector<double> power_iteration(double p1, double p2, int iterations) {
    double s1 = 1.0, s2 = 0.0;
    for (int k = 0; k < iterations; ++k) {
        const double n1 = (1.0 - p1) * s1 + (1.0 - p2) * s2;
        const double n2 = p1 * s1 + p2 * s2;
        s1 = n1;
        s2 = n2;
    }
    return {s1, s2};
}

double sampled_capture_percentage(double p1, double p2, int n_games, int n_runs,
                                  unsigned long long seed) {
    std::mt19937_64 gen(seed);
    auto uniform = [&gen] { return (gen() >> 11) * 0x1p-53; };
    long long captures = 0;
    for (int run = 0; run < n_runs; ++run) {
        bool on_circle = false;
        for (int game = 0; game < n_games; ++game) {
            const bool captured = uniform() < (on_circle ? p2 : p1);
            captures += captured ? 1 : 0;
            on_circle = captured;
        }
    }
    return 100.0 * static_cast<double>(captures) /
           (static_cast<double>(n_games) * static_cast<double>(n_runs));
}

}  // namespace pdsim::oracles
