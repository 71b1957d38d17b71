#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdsim/analytics.hpp"
#include "pdsim/config.hpp"
#include "pdsim/errors.hpp"
#include "pdsim/game.hpp"
#include "pdsim/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitValidationWarning = 2;
constexpr int kExitSolverInfeasible = 3;

struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> arrivals;
    std::optional<int> trials;
    std::optional<std::string> out_dir;
    std::string angles_csv;
};

pdsim::RunConfig load_with_overrides(const CliOverrides& cli) {
    pdsim::RunConfig config = pdsim::load_config(cli.config_path);
    if (cli.seed) config.seed = *cli.seed;
    if (cli.arrivals) config.n_arrivals = *cli.arrivals;
    if (cli.trials) config.n_trials = *cli.trials;
    if (cli.out_dir) config.out_dir = *cli.out_dir;
    config.validate();
    return config;
}

std::vector<double> parse_angles(const std::string& csv) {
    std::vector<double> angles;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        angles.push_back(std::stod(item));
    }
    return angles;
}

pdsim::GameRunner make_runner(const pdsim::RunConfig& config, bool trajectories) {
    pdsim::SimOptions options;
    options.trajectory_dt = config.trajectory_dt;
    options.record_trajectories = trajectories;
    options.boundary_samples = config.boundary_samples;
    return {config.params, config.grid(), options};
}

int cmd_validate(const CliOverrides& cli) {
    const pdsim::RunConfig config = load_with_overrides(cli);
    const pdsim::ValidationReport report =
        pdsim::validate_assumptions(config.params, config.grid());
    auto show = [](const char* name, const pdsim::AssumptionCheck& c) {
        std::printf("%s: %s  (lhs = %.6g, rhs = %.6g)  %s\n", name,
                    c.passed ? "PASS" : "FAIL", c.lhs, c.rhs, c.detail.c_str());
    };
    std::printf("parameters: %s%s\n", report.params_ok ? "ok" : "invalid",
                report.params_ok ? "" : (" - " + report.params_error).c_str());
    show("assumption 1 (capture feasibility)", report.assumption1);
    show("assumption 2 (return-to-center bound)", report.assumption2);
    if (!report.params_ok) return kExitConfigError;
    return report.all_passed() ? kExitOk : kExitValidationWarning;
}

int cmd_solve(const CliOverrides& cli) {
    const pdsim::RunConfig config = load_with_overrides(cli);
    pdsim::GameRunner runner = make_runner(config, false);
    const pdsim::SolveSummary summary = pdsim::compute_solve_summary(config, runner);

    std::filesystem::create_directories(config.out_dir);
    pdsim::write_text_file(config.out_dir + "/solve_summary.json",
                           pdsim::solve_summary_to_json(summary, config));

    std::printf("engagement: r_D* = %.4f  t* = %.4f  deadline = %.4f\n",
                summary.sol.r_d_star, summary.sol.t_star, summary.sol.deadline);
    std::printf("capture circle: r_cap = %.4f  theta_cap = %.4f\n", summary.capture.r_cap,
                summary.capture.theta_cap);
    std::printf("capture probabilities: p1 = %.4f  p2 = %.4f\n", summary.p1, summary.p2);
    std::printf("guarding arc measures: center = %.4f rad, capture circle = %.4f rad\n",
                summary.arc_center.measure, summary.arc_capture.measure);
    std::printf("wrote %s/solve_summary.json\n", config.out_dir.c_str());
    return kExitOk;
}

int cmd_simulate(const CliOverrides& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    const pdsim::RunConfig config = load_with_overrides(cli);
    const std::vector<double> angles = parse_angles(cli.angles_csv);

    pdsim::GameRunner runner = make_runner(config, true);
    const pdsim::SequenceResult result =
        angles.empty() ? runner.run_sequence(config.n_arrivals, config.seed)
                       : runner.run_scripted(angles, config.seed);
    const pdsim::ValidationReport report =
        pdsim::validate_assumptions(config.params, config.grid());

    std::filesystem::create_directories(config.out_dir);
    const std::string hash = pdsim::config_hash(config);
    for (const auto& rec : result.records) {
        const std::string stem = config.out_dir + "/traj_" + std::to_string(rec.index);
        pdsim::write_text_file(stem + "_defender.csv",
                               pdsim::trajectory_csv(rec.defender_trajectory, "defender", hash));
        pdsim::write_text_file(stem + "_intruder.csv",
                               pdsim::trajectory_csv(rec.intruder_trajectory, "intruder", hash));
        if (rec.outcome == pdsim::Outcome::Capture) {
            const pdsim::Region region = pdsim::dominance_region(
                pdsim::engagement_intruder_config(config.params, runner.solution(), rec.phi),
                config.params.intruder_kinematics(),
                pdsim::engagement_defender_config(config.params, runner.solution(), rec.phi),
                config.params.defender_kinematics(), config.grid());
            std::ostringstream os;
            pdsim::write_boundary_json(os, region);
            pdsim::write_text_file(
                config.out_dir + "/dominance_boundary_" + std::to_string(rec.index) + ".json",
                os.str());
        }
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    pdsim::write_text_file(config.out_dir + "/run_record.json",
                           pdsim::run_record_to_json(config, runner, report, result, wall));

    for (const auto& rec : result.records) {
        if (rec.outcome == pdsim::Outcome::Capture)
            std::printf("game %d: phi = %+.4f  CAPTURE at (%.3f, %.3f), t = %.3f\n", rec.index,
                        rec.phi, rec.capture_point->x_cap.x, rec.capture_point->x_cap.y,
                        rec.t_end);
        else
            std::printf("game %d: phi = %+.4f  BREACH at (%.3f, %.3f), t_end = %.3f\n",
                        rec.index, rec.phi, rec.breach_point->x, rec.breach_point->y, rec.t_end);
    }
    std::printf("captures: %d / %zu (fraction %.4f)\n", result.n_captures,
                result.records.size(), result.capture_fraction);
    std::printf("wrote %s/run_record.json (wall %.1f s)\n", config.out_dir.c_str(), wall);
    return kExitOk;
}

int cmd_montecarlo(const CliOverrides& cli) {
    const pdsim::RunConfig config = load_with_overrides(cli);
    pdsim::GameRunner runner = make_runner(config, false);
    const pdsim::TrialSummary summary =
        pdsim::monte_carlo_summary(runner, config.n_trials, config.n_arrivals, config.seed);

    std::filesystem::create_directories(config.out_dir);
    const std::string hash = pdsim::config_hash(config);
    pdsim::write_text_file(config.out_dir + "/percentage_curves.csv",
                           pdsim::curves_csv(summary, hash));
    pdsim::write_text_file(config.out_dir + "/trials.csv", pdsim::trials_csv(summary, hash));

    std::printf("p1 = %.4f  p2 = %.4f  percentage(inf) = %.3f\n", summary.p1, summary.p2,
                summary.asymptotic);
    if (!summary.mean_curve.empty())
        std::printf("n = %d: empirical mean = %.3f%%, theory = %.3f%%\n", summary.n_arrivals,
                    summary.mean_curve.back(), summary.theory_curve.back());
    std::printf("wrote %s/percentage_curves.csv and trials.csv\n", config.out_dir.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential perimeter-defense game simulator"};
    app.require_subcommand(1);

    CliOverrides cli;
    auto add_common = [&](CLI::App* sub, bool with_angles) {
        sub->add_option("--config", cli.config_path, "config file (key = value lines)")
            ->required();
        sub->add_option("--seed", cli.seed, "override RNG seed");
        sub->add_option("--arrivals", cli.arrivals, "override number of arrivals");
        sub->add_option("--trials", cli.trials, "override number of Monte Carlo trials");
        sub->add_option("--out", cli.out_dir, "override output directory");
        if (with_angles)
            sub->add_option("--angles", cli.angles_csv,
                            "comma-separated scripted arrival angles (rad)");
    };

    CLI::App* validate = app.add_subcommand("validate", "check the parametric assumptions");
    CLI::App* solve = app.add_subcommand("solve", "solve the engagement geometry");
    CLI::App* simulate = app.add_subcommand("simulate", "run one arrival sequence");
    CLI::App* montecarlo = app.add_subcommand("montecarlo", "run seeded random trials");
    add_common(validate, false);
    add_common(solve, false);
    add_common(simulate, true);
    add_common(montecarlo, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(cli);
        if (solve->parsed()) return cmd_solve(cli);
        if (simulate->parsed()) return cmd_simulate(cli);
        if (montecarlo->parsed()) return cmd_montecarlo(cli);
    } catch (const pdsim::ConfigParseError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const pdsim::NoFeasibleEngagementError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitSolverInfeasible;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSolverInfeasible;
    }
    return kExitOk;
}
