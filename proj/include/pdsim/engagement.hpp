#pragma once

#include <utility>
#include <vector>

#include "pdsim/geometry.hpp"
#include "pdsim/reachability.hpp"

namespace pdsim {

/// Game parameters. The defender moves at unit speed; the intruder at
/// `speed_ratio` < 1. Lengths share one unit; turn rates are rad per time.
struct GameParams {
    double target_radius;           // r_T
    double tsr_radius;              // rho_T, sensing annulus width around the target
    double intruder_sensing_radius; // rho_A
    double speed_ratio;             // nu
    double defender_turn_rate;      // omega_D
    double intruder_turn_rate;      // omega_A

    Kinematics defender_kinematics() const { return {1.0, defender_turn_rate}; }
    Kinematics intruder_kinematics() const { return {speed_ratio, intruder_turn_rate}; }

    /// Radius of the TSR outer boundary where intruders appear.
    double arrival_radius() const { return target_radius + tsr_radius; }

    /// r_T + rho_T - rho_A: the defender radius at a detection-range head-on
    /// engagement with an intruder that just appeared (t = 0).
    double engagement_radius_at_zero() const {
        return target_radius + tsr_radius - intruder_sensing_radius;
    }

    /// Throws std::invalid_argument when any structural invariant fails.
    void validate() const;
};

/// Output of the critical-radius optimization.
struct EngagementSolution {
    double t_star;    // engagement instant along the head-on family
    double r_d_star;  // critical defender radius
    double deadline;  // (r_T + rho_T - rho_A - r_d_star) / nu
};

struct AngleInterval {
    double lo, hi;  // lo <= hi, both in [-pi, pi]
    double length() const { return hi - lo; }
};

/// Arrival angles capturable from a given defender configuration, as disjoint
/// intervals in (-pi, pi] with total measure.
struct GuardingArc {
    std::vector<AngleInterval> intervals;
    double measure = 0.0;

    bool contains(double phi) const;
};

struct CapturePoint {
    Vec2 x_cap;
    double psi_cap;      // defender heading at capture
    double r_cap;        // ||x_cap||
    double theta_cap;    // angle(x_cap) - psi_cap, wrapped
    double arc_measure;  // |theta_G| at the capture configuration
};

enum class Branch { CW, CCW };

/// Head-on engagement configurations for arrival angle phi.
Configuration engagement_defender_config(const GameParams& params, const EngagementSolution& sol,
                                         double phi);
Configuration engagement_intruder_config(const GameParams& params, const EngagementSolution& sol,
                                         double phi);

/// Grid covering the arrival disk (half extent r_T + rho_T, origin-centered).
GridSpec default_grid(const GameParams& params, int resolution = 512);

/// Smallest feasible head-on engagement radius: bisection on t against the
/// dominance-region/target separation predicate, to 1e-3 length units in r_D.
/// A 50-point pre-scan validates that feasibility is monotone and falls back
/// to a full scan otherwise. Throws NoFeasibleEngagementError when no t works.
EngagementSolution solve_critical_radius(const GameParams& params, const GridSpec& grid);

/// Defender time from xi_D to the head-on engagement configuration at angle phi.
double tau(const Configuration& xi_D, double phi, const GameParams& params,
           const EngagementSolution& sol);

/// Samples tau <= deadline at n_samples angles and refines each interval
/// endpoint to 1e-4 rad by bisection.
GuardingArc guarding_arc(const Configuration& xi_D, const GameParams& params,
                         const EngagementSolution& sol, int n_samples);

/// Optimal capture point: minimizes the guarding-arc measure of the defender's
/// arrival state over n_boundary points of the dominance boundary, restricted
/// to the requested side of the engagement axis. Boundary samples are polished
/// against the exact time gap before evaluation. Ties within 1e-6 break toward
/// the smaller polar angle.
CapturePoint solve_capture_point(double phi, const GameParams& params,
                                 const EngagementSolution& sol, const GridSpec& grid,
                                 int n_boundary, Branch branch);

/// Intruder travel time from its engagement configuration to the capture point
/// (free final heading); capture time = deadline + this.
double capture_travel_time(const GameParams& params, const EngagementSolution& sol, double phi,
                           Vec2 x_cap);

/// (p1, p2): capture probabilities from the target center and from the
/// post-capture configuration, each a guarding-arc measure over 2*pi.
std::pair<double, double> capture_probabilities(const GameParams& params,
                                                const EngagementSolution& sol,
                                                const GridSpec& grid);

}  // namespace pdsim
