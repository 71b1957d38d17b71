#pragma once

#include <string>

#include "pdsim/analytics.hpp"
#include "pdsim/config.hpp"
#include "pdsim/game.hpp"

namespace pdsim {

inline constexpr const char* kToolName = "pdsim";
inline constexpr const char* kToolVersion = "0.1.0";

/// Solver outputs reported by the `solve` command.
struct SolveSummary {
    EngagementSolution sol;
    CapturePoint capture;  // canonical (arrival angle 0, CCW branch)
    double p1 = 0.0;
    double p2 = 0.0;
    GuardingArc arc_center;
    GuardingArc arc_capture;
};

SolveSummary compute_solve_summary(const RunConfig& config, GameRunner& runner);

std::string solve_summary_to_json(const SolveSummary& summary, const RunConfig& config);

/// Full run record: config snapshot, solver outputs, validation report and
/// per-engagement results. Trajectories are written separately as CSVs.
std::string run_record_to_json(const RunConfig& config, GameRunner& runner,
                               const ValidationReport& report, const SequenceResult& result,
                               double wall_seconds);

/// t, agent, x, y, heading, config_hash rows for one agent (RFC-4180).
std::string trajectory_csv(const std::vector<TimedPose>& trajectory, const std::string& agent,
                           const std::string& hash);

/// n, empirical_mean_pct, theory_pct, asymptotic_pct, config_hash rows.
std::string curves_csv(const TrialSummary& summary, const std::string& hash);

/// trial, fraction, config_hash rows.
std::string trials_csv(const TrialSummary& summary, const std::string& hash);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pdsim
