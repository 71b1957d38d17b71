#include "pdsim/game.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pdsim/errors.hpp"

namespace pdsim {

ValidationReport validate_assumptions(const GameParams& params, const GridSpec& grid) {
    ValidationReport report;
    try {
        params.validate();
        report.params_ok = true;
    } catch (const std::invalid_argument& e) {
        report.params_error = e.what();
        report.assumption1.detail = "parameters invalid; not evaluated";
        report.assumption2.detail = "parameters invalid; not evaluated";
        return report;
    }

    const double rho_hat = params.engagement_radius_at_zero();

    // capture feasibility: the critical-radius problem admits a solution and
    // the dominance region at that solution stays within rho_hat of the center
    try {
        const EngagementSolution sol = solve_critical_radius(params, grid);
        const Region region = dominance_region(
            engagement_intruder_config(params, sol, 0.0), params.intruder_kinematics(),
            engagement_defender_config(params, sol, 0.0), params.defender_kinematics(), grid);
        report.assumption1.lhs = region_max_norm(region);
        report.assumption1.rhs = rho_hat;
        report.assumption1.passed = report.assumption1.lhs <= report.assumption1.rhs;
        report.assumption1.detail =
            "engagement solvable (r_D* = " + std::to_string(sol.r_d_star) +
            "); max region norm vs rho_T + r_T - rho_A";
    } catch (const NoFeasibleEngagementError&) {
        report.assumption1.passed = false;
        report.assumption1.detail = "no feasible head-on engagement";
    }

    // return-to-center timing bound
    const double m = 2.0 * rho_hat * params.defender_turn_rate / (rho_hat * rho_hat - 1.0);
    report.assumption2.lhs = rho_hat + (kPi + std::atan(m)) / params.defender_turn_rate;
    report.assumption2.rhs = params.tsr_radius / params.speed_ratio;
    report.assumption2.passed = report.assumption2.lhs <= report.assumption2.rhs;
    report.assumption2.detail = "rho_hat + (pi + arctan(m)) / omega_D vs rho_T / nu";
    return report;
}

bool is_head_on(const Configuration& xi_D, const Configuration& xi_A) {
    const Vec2 sep = xi_A.position - xi_D.position;
    if (sep.norm() == 0.0) throw CollocatedError{};
    constexpr double kTol = 1e-6;
    const bool defender_at_intruder = std::abs(wrap_angle(xi_D.heading - sep.angle())) <= kTol;
    const bool opposed = std::abs(wrap_angle(xi_A.heading - xi_D.heading - kPi)) <= kTol;
    return defender_at_intruder && opposed;
}

double ArrivalRng::next_angle() {
    const std::uint64_t u = gen_() >> 11;                       // 53 bits
    const double x = (static_cast<double>(u) + 1.0) * 0x1p-53;  // (0, 1]
    return -kPi + x * kTwoPi;
}

bool ArrivalRng::next_coin() { return (gen_() & 1u) != 0; }

namespace {

struct TrajectoryPiece {
    double duration;
    std::function<Configuration(double)> pose;
};

std::vector<TimedPose> sample_pieces(const std::vector<TrajectoryPiece>& pieces, double t_start,
                                     double dt) {
    double total = 0.0;
    for (const auto& p : pieces) total += p.duration;
    std::vector<TimedPose> out;
    out.reserve(static_cast<std::size_t>(total / dt) + 2);
    auto pose_at = [&](double t) {
        for (const auto& p : pieces) {
            if (t <= p.duration) return p.pose(std::max(0.0, t));
            t -= p.duration;
        }
        return pieces.back().pose(pieces.back().duration);
    };
    for (double t = 0.0; t < total - 1e-12; t += dt)
        out.push_back({t_start + t, pose_at(t)});
    out.push_back({t_start + total, pose_at(total)});
    return out;
}

TrajectoryPiece path_piece(const DubinsPath& path, double speed) {
    const double duration = path.total_length() / speed;
    return {duration, [path, speed](double t) { return path.pose_at(t * speed); }};
}

TrajectoryPiece hold_piece(const Configuration& config, double duration) {
    return {std::max(duration, 0.0), [config](double) { return config; }};
}

}  // namespace

GameRunner::GameRunner(GameParams params, GridSpec grid, SimOptions options)
    : params_(params), grid_(grid), options_(options) {}

const EngagementSolution& GameRunner::solution() {
    if (!sol_) sol_ = solve_critical_radius(params_, grid_);
    return *sol_;
}

const GameRunner::BranchSolution& GameRunner::branch_solution(Branch b) {
    auto& slot = (b == Branch::CCW) ? ccw_ : cw_;
    if (!slot) {
        const EngagementSolution& sol = solution();
        const CapturePoint cap =
            solve_capture_point(0.0, params_, sol, grid_, options_.boundary_samples, b);
        const double travel = capture_travel_time(params_, sol, 0.0, cap.x_cap);
        const double defender = time_to_point(engagement_defender_config(params_, sol, 0.0),
                                              cap.x_cap, params_.defender_kinematics());
        slot = BranchSolution{cap, travel, defender};
    }
    return *slot;
}

std::pair<double, double> GameRunner::probabilities() {
    if (!probabilities_) {
        const EngagementSolution& sol = solution();
        constexpr int kArcSamples = 1440;
        const double p1 =
            guarding_arc({0.0, 0.0, 0.0}, params_, sol, kArcSamples).measure / kTwoPi;
        const BranchSolution& bs = branch_solution(Branch::CCW);
        const double p2 = guarding_arc({bs.canonical.x_cap, bs.canonical.psi_cap}, params_, sol,
                                       kArcSamples)
                              .measure /
                          kTwoPi;
        probabilities_ = {p1, p2};
    }
    return *probabilities_;
}

EngagementRecord GameRunner::make_capture_record(const Configuration& xi_D, double phi,
                                                 Branch b) {
    const EngagementSolution& sol = solution();
    const BranchSolution& bs = branch_solution(b);

    EngagementRecord rec;
    rec.phi = phi;
    rec.outcome = Outcome::Capture;
    const Vec2 x_cap = bs.canonical.x_cap.rotated(phi);
    const double psi_cap = wrap_angle(bs.canonical.psi_cap + phi);
    rec.capture_point = CapturePoint{x_cap, psi_cap, bs.canonical.r_cap, bs.canonical.theta_cap,
                                     bs.canonical.arc_measure};
    rec.t_end = sol.deadline + bs.travel_time;

    if (options_.record_trajectories) {
        const Configuration xi_D_star = engagement_defender_config(params_, sol, phi);
        const Configuration xi_A_star = engagement_intruder_config(params_, sol, phi);
        const Kinematics kin_D = params_.defender_kinematics();
        const Kinematics kin_A = params_.intruder_kinematics();

        const DubinsPath approach =
            shortest_path_fixed_heading(xi_D, xi_D_star, kin_D.turning_radius());
        const DubinsPath pursuit =
            shortest_path_free_heading(xi_D_star, x_cap, kin_D.turning_radius());
        const double t_approach = approach.total_length() / kin_D.speed;
        const double t_pursuit = pursuit.total_length() / kin_D.speed;
        std::vector<TrajectoryPiece> defender{
            path_piece(approach, kin_D.speed),
            hold_piece(xi_D_star, sol.deadline - t_approach),
            path_piece(pursuit, kin_D.speed),
        };
        if (t_pursuit < bs.travel_time)
            defender.push_back(hold_piece(pursuit.endpoint(), bs.travel_time - t_pursuit));
        rec.defender_trajectory = sample_pieces(defender, 0.0, options_.trajectory_dt);

        const double r0 = params_.arrival_radius();
        const double nu = params_.speed_ratio;
        const Configuration inbound_start{r0 * unit_vector(phi), phi + kPi};
        std::vector<TrajectoryPiece> intruder{
            {sol.deadline,
             [inbound_start, nu, phi](double t) {
                 return Configuration{inbound_start.position +
                                          nu * t * unit_vector(phi + kPi),
                                      inbound_start.heading};
             }},
            path_piece(shortest_path_free_heading(xi_A_star, x_cap, kin_A.turning_radius()),
                       kin_A.speed),
        };
        rec.intruder_trajectory = sample_pieces(intruder, 0.0, options_.trajectory_dt);
    }
    return rec;
}

EngagementRecord GameRunner::make_breach_record(const Configuration& xi_D, double phi) {
    const Kinematics kin_D = params_.defender_kinematics();
    EngagementRecord rec;
    rec.phi = phi;
    rec.outcome = Outcome::Breach;
    rec.breach_point = params_.target_radius * unit_vector(phi);
    const double t_breach = params_.tsr_radius / params_.speed_ratio;

    const bool at_center = xi_D.position.norm() < 1e-9;
    DubinsPath retreat;
    double t_retreat = 0.0;
    if (!at_center) {
        retreat = shortest_path_free_heading(xi_D, Vec2{0.0, 0.0}, kin_D.turning_radius());
        t_retreat = retreat.total_length() / kin_D.speed;
    }
    rec.t_end = std::max(t_breach, t_retreat);

    if (options_.record_trajectories) {
        const double r0 = params_.arrival_radius();
        const double nu = params_.speed_ratio;
        const Configuration inbound{r0 * unit_vector(phi), phi + kPi};
        rec.intruder_trajectory = sample_pieces(
            {{t_breach,
              [inbound, nu, phi](double t) {
                  return Configuration{inbound.position + nu * t * unit_vector(phi + kPi),
                                       inbound.heading};
              }}},
            0.0, options_.trajectory_dt);

        std::vector<TrajectoryPiece> defender;
        if (!at_center) {
            defender.push_back(path_piece(retreat, kin_D.speed));
            defender.push_back(hold_piece(retreat.endpoint(), rec.t_end - t_retreat));
        } else {
            defender.push_back(hold_piece(xi_D, rec.t_end));
        }
        rec.defender_trajectory = sample_pieces(defender, 0.0, options_.trajectory_dt);
    }
    return rec;
}

EngagementRecord GameRunner::run_single_engagement(const Configuration& xi_D, double phi,
                                                   ArrivalRng& rng) {
    const EngagementSolution& sol = solution();
    EngagementRecord rec;
    if (tau(xi_D, phi, params_, sol) <= sol.deadline) {
        rec = make_capture_record(xi_D, phi, rng.next_coin() ? Branch::CCW : Branch::CW);
    } else {
        rec = make_breach_record(xi_D, phi);
    }
    rec.start_state =
        xi_D.position.norm() < 1e-9 ? StartState::Center : StartState::CaptureCircle;
    return rec;
}

SequenceResult GameRunner::run_with(int n_arrivals, const double* angles, std::uint64_t seed) {
    ArrivalRng rng(seed);
    SequenceResult result;
    result.records.reserve(static_cast<std::size_t>(std::max(n_arrivals, 0)));
    Configuration defender{0.0, 0.0, 0.0};  // Algorithm start: center, heading 0
    StartState state = StartState::Center;
    double clock = 0.0;
    const EngagementSolution& sol = solution();

    for (int i = 0; i < n_arrivals; ++i) {
        const double phi = angles ? angles[i] : rng.next_angle();
        EngagementRecord rec;
        if (tau(defender, phi, params_, sol) <= sol.deadline) {
            rec = make_capture_record(defender, phi, rng.next_coin() ? Branch::CCW : Branch::CW);
            defender = {rec.capture_point->x_cap, rec.capture_point->psi_cap};
            ++result.n_captures;
        } else {
            rec = make_breach_record(defender, phi);
            if (defender.position.norm() < 1e-9) {
                // stays put; heading unchanged
            } else {
                const DubinsPath retreat = shortest_path_free_heading(
                    defender, Vec2{0.0, 0.0}, params_.defender_kinematics().turning_radius());
                defender = retreat.endpoint();
            }
        }
        rec.index = i;
        rec.start_state = state;
        rec.t_start = clock;
        rec.t_end += clock;
        if (options_.record_trajectories) {
            for (auto& p : rec.defender_trajectory) p.t += clock;
            for (auto& p : rec.intruder_trajectory) p.t += clock;
        }
        state = rec.outcome == Outcome::Capture ? StartState::CaptureCircle : StartState::Center;
        clock = rec.t_end;
        result.records.push_back(std::move(rec));
    }
    result.capture_fraction =
        static_cast<double>(result.n_captures) / std::max(1, n_arrivals);
    return result;
}

SequenceResult GameRunner::run_sequence(int n_arrivals, std::uint64_t seed) {
    return run_with(n_arrivals, nullptr, seed);
}

SequenceResult GameRunner::run_scripted(std::span<const double> angles, std::uint64_t seed) {
    return run_with(static_cast<int>(angles.size()), angles.data(), seed);
}

}  // namespace pdsim
