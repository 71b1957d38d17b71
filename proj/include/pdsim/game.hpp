#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pdsim/dubins.hpp"
#include "pdsim/engagement.hpp"
#include "pdsim/geometry.hpp"

namespace pdsim {

struct AssumptionCheck {
    bool passed = false;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string detail;
};

struct ValidationReport {
    bool params_ok = false;
    std::string params_error;
    AssumptionCheck assumption1;  // capture feasibility + dominance containment
    AssumptionCheck assumption2;  // return-to-center timing bound

    bool all_passed() const { return params_ok && assumption1.passed && assumption2.passed; }
};

/// Evaluates both parametric assumptions. Failures are reported, not thrown;
/// callers decide whether to proceed.
ValidationReport validate_assumptions(const GameParams& params, const GridSpec& grid);

/// True iff the defender heads at the intruder and the intruder heads back
/// (both within 1e-6 rad). Throws CollocatedError for coincident positions.
bool is_head_on(const Configuration& xi_D, const Configuration& xi_A);

/// Seeded portable random stream: arrival angles uniform on (-pi, pi] and fair
/// coins. mt19937_64 output is fully specified by the standard and the
/// integer-to-double mapping is explicit, so sequences are bit-reproducible
/// across platforms.
class ArrivalRng {
  public:
    explicit ArrivalRng(std::uint64_t seed) : gen_(seed) {}

    double next_angle();
    bool next_coin();

  private:
    std::mt19937_64 gen_;
};

enum class Outcome { Capture, Breach };
enum class StartState { Center, CaptureCircle };

struct EngagementRecord {
    int index = 0;
    double phi = 0.0;
    Outcome outcome = Outcome::Breach;
    StartState start_state = StartState::Center;
    double t_start = 0.0;
    double t_end = 0.0;
    std::optional<CapturePoint> capture_point;
    std::optional<Vec2> breach_point;
    std::vector<TimedPose> defender_trajectory;
    std::vector<TimedPose> intruder_trajectory;
};

struct SequenceResult {
    std::vector<EngagementRecord> records;
    int n_captures = 0;
    double capture_fraction = 0.0;
};

struct SimOptions {
    double trajectory_dt = 0.05;
    bool record_trajectories = true;
    int boundary_samples = 720;
};

/// Executes the defender strategy: per arrival, engage head-on when the
/// engagement configuration is reachable by the deadline, otherwise concede
/// and re-center. Holds the solved engagement geometry and the per-branch
/// canonical capture solutions (rotated per arrival), so sequences run in
/// O(1) per game after the first solve.
class GameRunner {
  public:
    GameRunner(GameParams params, GridSpec grid, SimOptions options = {});

    const GameParams& params() const { return params_; }
    SimOptions& options() { return options_; }
    const EngagementSolution& solution();

    /// (p1, p2) consistent with the cached capture geometry.
    std::pair<double, double> probabilities();

    /// One game from an arbitrary defender configuration. `rng` supplies the
    /// branch coin for captures.
    EngagementRecord run_single_engagement(const Configuration& xi_D, double phi,
                                           ArrivalRng& rng);

    /// Seeded sequence of `n_arrivals` random arrivals per the arrival process.
    SequenceResult run_sequence(int n_arrivals, std::uint64_t seed);

    /// Sequence with scripted arrival angles (seed still drives branch coins).
    SequenceResult run_scripted(std::span<const double> angles, std::uint64_t seed);

  private:
    struct BranchSolution {
        CapturePoint canonical;   // solved at arrival angle 0
        double travel_time;       // intruder time from engagement to capture
        double defender_time;     // defender free-heading time to the capture point
    };

    const BranchSolution& branch_solution(Branch b);
    SequenceResult run_with(int n_arrivals, const double* angles, std::uint64_t seed);
    EngagementRecord make_capture_record(const Configuration& xi_D, double phi, Branch b);
    EngagementRecord make_breach_record(const Configuration& xi_D, double phi);

    GameParams params_;
    GridSpec grid_;
    SimOptions options_;
    std::optional<EngagementSolution> sol_;
    std::optional<BranchSolution> ccw_, cw_;
    std::optional<std::pair<double, double>> probabilities_;
};

}  // namespace pdsim
