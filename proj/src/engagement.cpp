#include "pdsim/engagement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pdsim/dubins.hpp"
#include "pdsim/errors.hpp"
#include "pdsim/parallel.hpp"

namespace pdsim {

void GameParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
    };
    positive(target_radius, "r_T");
    positive(tsr_radius, "rho_T");
    positive(intruder_sensing_radius, "rho_A");
    positive(speed_ratio, "nu");
    positive(defender_turn_rate, "omega_D");
    positive(intruder_turn_rate, "omega_A");
    if (!(speed_ratio < 1.0))
        throw std::invalid_argument("nu must be < 1 (the defender is faster)");
    if (!(intruder_sensing_radius < tsr_radius))
        throw std::invalid_argument("rho_A must be < rho_T");
}

bool GuardingArc::contains(double phi) const {
    const double w = wrap_angle(phi);
    for (const auto& iv : intervals)
        if (w >= iv.lo && w <= iv.hi) return true;
    return false;
}

Configuration engagement_defender_config(const GameParams&, const EngagementSolution& sol,
                                         double phi) {
    return {sol.r_d_star * unit_vector(phi), phi};
}

Configuration engagement_intruder_config(const GameParams& params, const EngagementSolution& sol,
                                         double phi) {
    return {(sol.r_d_star + params.intruder_sensing_radius) * unit_vector(phi), phi + kPi};
}

GridSpec default_grid(const GameParams& params, int resolution) {
    return {Vec2{0.0, 0.0}, params.arrival_radius(), resolution};
}

namespace {

// Head-on family at arrival angle 0: intruder inbound on the x-axis,
// defender detection-range ahead of it, both on the axis.
struct HeadOnFamily {
    const GameParams& params;

    Configuration intruder_at(double t) const {
        const double r_a = params.arrival_radius() - params.speed_ratio * t;
        return {r_a, 0.0, kPi};
    }
    Configuration defender_at(double t) const {
        const double r_d = params.arrival_radius() - params.intruder_sensing_radius -
                           params.speed_ratio * t;
        return {r_d, 0.0, 0.0};
    }

    bool feasible(double t, const GridSpec& grid) const {
        const Region region =
            dominance_region(intruder_at(t), params.intruder_kinematics(), defender_at(t),
                             params.defender_kinematics(), grid);
        return !region_intersects_disk(region, Vec2{0.0, 0.0}, params.target_radius);
    }
};

}  // namespace

EngagementSolution solve_critical_radius(const GameParams& params, const GridSpec& grid) {
    const HeadOnFamily family{params};
    const double span = params.engagement_radius_at_zero();
    const double t_max = span / params.speed_ratio;  // r_D(t_max) = 0
    const double r_tol = 1e-3;
    const double t_tol = r_tol / params.speed_ratio;

    constexpr int kPreScan = 50;
    std::vector<std::uint8_t> ok(kPreScan + 1);
    for (int k = 0; k <= kPreScan; ++k)
        ok[k] = family.feasible(t_max * k / kPreScan, grid) ? 1 : 0;
    if (!ok[0]) throw NoFeasibleEngagementError{};

    int sign_changes = 0;
    for (int k = 0; k < kPreScan; ++k) sign_changes += ok[k] != ok[k + 1];
    double t_lo, t_hi;
    if (sign_changes <= 1) {
        int first_bad = kPreScan + 1;
        for (int k = 1; k <= kPreScan; ++k)
            if (!ok[k]) { first_bad = k; break; }
        if (first_bad > kPreScan) {
            // feasible over the whole bracket: the latest engagement wins
            const double t_star = t_max;
            const double r_d = span - params.speed_ratio * t_star;
            return {t_star, r_d, (span - r_d) / params.speed_ratio};
        }
        t_lo = t_max * (first_bad - 1) / kPreScan;
        t_hi = t_max * first_bad / kPreScan;
    } else {
        // non-monotone at scan resolution: full scan, keep the first feasible run
        constexpr int kFullScan = 500;
        int last_good = 0;
        for (int k = 1; k <= kFullScan; ++k) {
            if (!family.feasible(t_max * k / kFullScan, grid)) break;
            last_good = k;
        }
        t_lo = t_max * last_good / kFullScan;
        t_hi = std::min(t_max, t_max * (last_good + 1) / kFullScan);
    }

    while (t_hi - t_lo > t_tol) {
        const double mid = 0.5 * (t_lo + t_hi);
        if (family.feasible(mid, grid)) t_lo = mid;
        else t_hi = mid;
    }
    const double t_star = t_lo;
    const double r_d = span - params.speed_ratio * t_star;
    return {t_star, r_d, (span - r_d) / params.speed_ratio};
}

double tau(const Configuration& xi_D, double phi, const GameParams& params,
           const EngagementSolution& sol) {
    return time_to_config(xi_D, engagement_defender_config(params, sol, phi),
                          params.defender_kinematics());
}

GuardingArc guarding_arc(const Configuration& xi_D, const GameParams& params,
                         const EngagementSolution& sol, int n_samples) {
    if (n_samples < 360) throw std::invalid_argument("guarding_arc: n_samples >= 360 required");
    const double step = kTwoPi / n_samples;
    auto member = [&](double phi) { return tau(xi_D, phi, params, sol) <= sol.deadline; };

    std::vector<std::uint8_t> m(n_samples);
    parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k)
            m[k] = member(-kPi + (static_cast<double>(k) + 1.0) * step) ? 1 : 0;
    });

    GuardingArc arc;
    const bool any = std::find(m.begin(), m.end(), 1) != m.end();
    const bool all = std::find(m.begin(), m.end(), 0) == m.end();
    if (!any) return arc;
    if (all) {
        arc.intervals.push_back({-kPi, kPi});
        arc.measure = kTwoPi;
        return arc;
    }

    // refine every membership transition between adjacent samples
    auto angle_of = [&](int k) { return -kPi + (k + 1) * step; };
    std::vector<std::pair<double, bool>> crossings;  // (unwrapped angle, membership before)
    for (int k = 0; k < n_samples; ++k) {
        const int nk = (k + 1) % n_samples;
        if (m[k] == m[nk]) continue;
        double a = angle_of(k), b = angle_of(k) + step;
        const bool ma = m[k] != 0;
        while (b - a > 1e-4) {
            const double mid = 0.5 * (a + b);
            if (member(wrap_angle(mid)) == ma) a = mid;
            else b = mid;
        }
        crossings.emplace_back(0.5 * (a + b), ma);
    }

    // walk member runs between consecutive crossings (cyclic)
    for (std::size_t c = 0; c < crossings.size(); ++c) {
        const auto& [ang, was_member] = crossings[c];
        if (was_member) continue;  // this crossing enters the arc
        const auto& next = crossings[(c + 1) % crossings.size()];
        double lo = ang, hi = next.first;
        if (hi <= lo) hi += kTwoPi;
        arc.measure += hi - lo;
        // store wrapped, splitting at pi
        const double wl = wrap_angle(lo);
        double wh = wl + (hi - lo);
        if (wh <= kPi + 1e-15) {
            arc.intervals.push_back({wl, std::min(wh, kPi)});
        } else {
            arc.intervals.push_back({wl, kPi});
            arc.intervals.push_back({-kPi, wh - kTwoPi});
        }
    }
    std::sort(arc.intervals.begin(), arc.intervals.end(),
              [](const AngleInterval& a, const AngleInterval& b) { return a.lo < b.lo; });
    return arc;
}

namespace {

// Exact dominance gap t_D - t_A at a point (no grid).
struct GapField {
    Configuration xi_A;
    Kinematics kin_A;
    Configuration xi_D;
    double defender_speed;

    double operator()(Vec2 p) const {
        const double t_d = (p - xi_D.position).norm() / defender_speed;
        return t_d - time_to_point(xi_A, p, kin_A);
    }
};

// Pull a contour vertex onto the exact gap zero along the ray from the
// intruder, bisecting within +-1.5 cells.
Vec2 polish_boundary_point(Vec2 q, const GapField& gap, Vec2 inner_anchor, double cell) {
    Vec2 dir = q - inner_anchor;
    const double n = dir.norm();
    if (n < 1e-12) return q;
    dir = (1.0 / n) * dir;
    double lo = -1.5 * cell, hi = 1.5 * cell;
    double g_lo = gap(q + lo * dir), g_hi = gap(q + hi * dir);
    if ((g_lo >= 0.0) == (g_hi >= 0.0)) return q;  // no bracket: keep contour vertex
    for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((gap(q + mid * dir) >= 0.0) == (g_lo >= 0.0)) lo = mid;
        else hi = mid;
    }
    return q + (0.5 * (lo + hi)) * dir;
}

std::vector<Vec2> resample_closed(const std::vector<Vec2>& poly, int n) {
    std::vector<double> s(poly.size(), 0.0);
    for (std::size_t k = 1; k < poly.size(); ++k)
        s[k] = s[k - 1] + (poly[k] - poly[k - 1]).norm();
    const double total = s.back();
    std::vector<Vec2> out;
    out.reserve(n);
    std::size_t j = 0;
    for (int k = 0; k < n; ++k) {
        const double target = total * k / n;
        while (j + 1 < s.size() && s[j + 1] < target) ++j;
        const double seg = s[j + 1] - s[j];
        const double t = seg > 0.0 ? (target - s[j]) / seg : 0.0;
        out.push_back(poly[j] + t * (poly[j + 1] - poly[j]));
    }
    return out;
}

}  // namespace

CapturePoint solve_capture_point(double phi, const GameParams& params,
                                 const EngagementSolution& sol, const GridSpec& grid,
                                 int n_boundary, Branch branch) {
    const Configuration xi_A = engagement_intruder_config(params, sol, phi);
    const Configuration xi_D = engagement_defender_config(params, sol, phi);
    const Kinematics kin_A = params.intruder_kinematics();
    const Region region =
        dominance_region(xi_A, kin_A, xi_D, params.defender_kinematics(), grid);
    if (region.boundary.empty()) throw NoBoundaryError{};

    // outer boundary = closed polyline with the largest extent
    const std::vector<Vec2>* outer = nullptr;
    double best_extent = -1.0;
    for (const auto& poly : region.boundary) {
        if (poly.size() < 4) continue;
        double xmin = poly[0].x, xmax = poly[0].x, ymin = poly[0].y, ymax = poly[0].y;
        for (const Vec2& v : poly) {
            xmin = std::min(xmin, v.x); xmax = std::max(xmax, v.x);
            ymin = std::min(ymin, v.y); ymax = std::max(ymax, v.y);
        }
        const double extent = (xmax - xmin) + (ymax - ymin);
        if (extent > best_extent) { best_extent = extent; outer = &poly; }
    }
    if (outer == nullptr) throw NoBoundaryError{};

    const GapField gap{xi_A, kin_A, xi_D, 1.0};
    std::vector<Vec2> samples = resample_closed(*outer, n_boundary);
    parallel_for(samples.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k)
            samples[k] = polish_boundary_point(samples[k], gap, xi_A.position, grid.cell_size());
    });

    constexpr int kArcSamples = 1440;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> measures(samples.size(), inf);
    std::vector<double> headings(samples.size(), 0.0);
    parallel_for(samples.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
            const Vec2 x = samples[k];
            const double side = wrap_angle(x.angle() - phi);
            if (branch == Branch::CCW ? side < 0.0 : side > 0.0) continue;
            const DubinsPath arrival = shortest_path_free_heading(
                xi_D, x, params.defender_kinematics().turning_radius());
            headings[k] = arrival.endpoint().heading;
            measures[k] = guarding_arc({x, headings[k]}, params, sol, kArcSamples).measure;
        }
    });

    std::size_t best = samples.size();
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (!std::isfinite(measures[k])) continue;
        if (best == samples.size() || measures[k] < measures[best] - 1e-6 ||
            (std::abs(measures[k] - measures[best]) <= 1e-6 &&
             wrap_angle(samples[k].angle()) < wrap_angle(samples[best].angle())))
            best = k;
    }
    if (best == samples.size()) throw NoBoundaryError{};

    const Vec2 x_cap = samples[best];
    const double psi = headings[best];
    return {x_cap, psi, x_cap.norm(), wrap_angle(x_cap.angle() - psi), measures[best]};
}

double capture_travel_time(const GameParams& params, const EngagementSolution& sol, double phi,
                           Vec2 x_cap) {
    return time_to_point(engagement_intruder_config(params, sol, phi), x_cap,
                         params.intruder_kinematics());
}

std::pair<double, double> capture_probabilities(const GameParams& params,
                                                const EngagementSolution& sol,
                                                const GridSpec& grid) {
    constexpr int kArcSamples = 1440;
    const double p1 =
        guarding_arc({0.0, 0.0, 0.0}, params, sol, kArcSamples).measure / kTwoPi;
    const CapturePoint cap = solve_capture_point(0.0, params, sol, grid, 720, Branch::CCW);
    const double p2 =
        guarding_arc({cap.x_cap, cap.psi_cap}, params, sol, kArcSamples).measure / kTwoPi;
    return {p1, p2};
}

}  // namespace pdsim
