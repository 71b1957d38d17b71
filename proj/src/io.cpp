#include "pdsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pdsim {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json arc_to_json(const GuardingArc& arc) {
    ordered_json intervals = ordered_json::array();
    for (const auto& iv : arc.intervals) intervals.push_back({iv.lo, iv.hi});
    return ordered_json{{"measure", arc.measure}, {"intervals", intervals}};
}

ordered_json config_to_json(const RunConfig& c) {
    return ordered_json{
        {"r_T", c.params.target_radius},
        {"rho_T", c.params.tsr_radius},
        {"rho_A", c.params.intruder_sensing_radius},
        {"nu", c.params.speed_ratio},
        {"omega_D", c.params.defender_turn_rate},
        {"omega_A", c.params.intruder_turn_rate},
        {"resolution", c.resolution},
        {"arc_samples", c.arc_samples},
        {"boundary_samples", c.boundary_samples},
        {"dt", c.trajectory_dt},
        {"seed", c.seed},
        {"n_arrivals", c.n_arrivals},
        {"n_trials", c.n_trials},
        {"out_dir", c.out_dir},
    };
}

ordered_json capture_to_json(const CapturePoint& cap) {
    return ordered_json{
        {"x", cap.x_cap.x},         {"y", cap.x_cap.y},
        {"psi_cap", cap.psi_cap},   {"r_cap", cap.r_cap},
        {"theta_cap", cap.theta_cap}, {"arc_measure", cap.arc_measure},
    };
}

ordered_json validation_to_json(const ValidationReport& report) {
    auto check = [](const AssumptionCheck& c) {
        return ordered_json{{"passed", c.passed},
                            {"lhs", c.lhs},
                            {"rhs", c.rhs},
                            {"detail", c.detail}};
    };
    return ordered_json{{"params_ok", report.params_ok},
                        {"params_error", report.params_error},
                        {"assumption1", check(report.assumption1)},
                        {"assumption2", check(report.assumption2)}};
}

}  // namespace

SolveSummary compute_solve_summary(const RunConfig& config, GameRunner& runner) {
    SolveSummary summary;
    summary.sol = runner.solution();
    summary.capture = solve_capture_point(0.0, config.params, summary.sol, config.grid(),
                                          config.boundary_samples, Branch::CCW);
    summary.arc_center =
        guarding_arc({0.0, 0.0, 0.0}, config.params, summary.sol, config.arc_samples);
    summary.arc_capture = guarding_arc({summary.capture.x_cap, summary.capture.psi_cap},
                                       config.params, summary.sol, config.arc_samples);
    summary.p1 = summary.arc_center.measure / kTwoPi;
    summary.p2 = summary.arc_capture.measure / kTwoPi;
    return summary;
}

std::string solve_summary_to_json(const SolveSummary& s, const RunConfig& config) {
    ordered_json j{
        {"config_hash", config_hash(config)},
        {"r_D_star", s.sol.r_d_star},
        {"t_star", s.sol.t_star},
        {"deadline", s.sol.deadline},
        {"r_cap", s.capture.r_cap},
        {"theta_cap", s.capture.theta_cap},
        {"p1", s.p1},
        {"p2", s.p2},
        {"guarding_arc_center", arc_to_json(s.arc_center)},
        {"guarding_arc_capture", arc_to_json(s.arc_capture)},
    };
    return j.dump(2) + "\n";
}

std::string run_record_to_json(const RunConfig& config, GameRunner& runner,
                               const ValidationReport& report, const SequenceResult& result,
                               double wall_seconds) {
    const auto [p1, p2] = runner.probabilities();
    ordered_json records = ordered_json::array();
    for (const auto& rec : result.records) {
        ordered_json r{
            {"index", rec.index},
            {"phi", rec.phi},
            {"outcome", rec.outcome == Outcome::Capture ? "capture" : "breach"},
            {"start_state",
             rec.start_state == StartState::Center ? "center" : "capture_circle"},
            {"t_start", rec.t_start},
            {"t_end", rec.t_end},
        };
        if (rec.capture_point) r["capture_point"] = capture_to_json(*rec.capture_point);
        if (rec.breach_point)
            r["breach_point"] = ordered_json{rec.breach_point->x, rec.breach_point->y};
        records.push_back(std::move(r));
    }

    const EngagementSolution& sol = runner.solution();
    ordered_json j{
        {"tool", ordered_json{{"name", kToolName}, {"version", kToolVersion}}},
        {"config_hash", config_hash(config)},
        {"config", config_to_json(config)},
        {"solution",
         ordered_json{{"r_D_star", sol.r_d_star}, {"t_star", sol.t_star},
                      {"deadline", sol.deadline}}},
        {"probabilities", ordered_json{{"p1", p1}, {"p2", p2}}},
        {"validation", validation_to_json(report)},
        {"model_notes",
         ordered_json{{"defender_hold_idealization", true},
                      {"dominance_defender_time", "straight_line"}}},
        {"sequence", ordered_json{{"n_arrivals", static_cast<int>(result.records.size())},
                                  {"n_captures", result.n_captures},
                                  {"capture_fraction", result.capture_fraction},
                                  {"records", records}}},
        {"meta", ordered_json{{"wall_seconds", wall_seconds}}},
    };
    return j.dump(2) + "\n";
}

std::string trajectory_csv(const std::vector<TimedPose>& trajectory, const std::string& agent,
                           const std::string& hash) {
    std::string out = "t,agent,x,y,heading,config_hash\r\n";
    char buf[160];
    for (const auto& tp : trajectory) {
        std::snprintf(buf, sizeof(buf), "%.17g,%s,%.17g,%.17g,%.17g,%s\r\n", tp.t,
                      agent.c_str(), tp.config.position.x, tp.config.position.y,
                      tp.config.heading, hash.c_str());
        out += buf;
    }
    return out;
}

std::string curves_csv(const TrialSummary& summary, const std::string& hash) {
    std::string out = "n,empirical_mean_pct,theory_pct,asymptotic_pct,config_hash\r\n";
    char buf[160];
    for (std::size_t i = 0; i < summary.mean_curve.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%s\r\n", i + 1,
                      summary.mean_curve[i], summary.theory_curve[i], summary.asymptotic,
                      hash.c_str());
        out += buf;
    }
    return out;
}

std::string trials_csv(const TrialSummary& summary, const std::string& hash) {
    std::string out = "trial,fraction,config_hash\r\n";
    char buf[96];
    for (std::size_t i = 0; i < summary.per_trial_fractions.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%s\r\n", i,
                      summary.per_trial_fractions[i], hash.c_str());
        out += buf;
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write '" + path + "'");
    os << content;
}

}  // namespace pdsim
