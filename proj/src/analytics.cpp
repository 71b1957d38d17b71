#include "pdsim/analytics.hpp"

#include <cmath>
#include <stdexcept>

#include "pdsim/errors.hpp"

namespace pdsim {

MarkovModel::MarkovModel(double p1_, double p2_) : p1(p1_), p2(p2_) {
    if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0))
        throw std::invalid_argument("MarkovModel: probabilities must lie in [0, 1]");
}

std::array<std::array<double, 2>, 2> transition_matrix(const MarkovModel& m) {
    return {{{1.0 - m.p1, 1.0 - m.p2}, {m.p1, m.p2}}};
}

DistributionVector state_distribution(const MarkovModel& model, int i) {
    if (i < 1) throw IndexError("state_distribution: game index must be >= 1");
    DistributionVector eta{{1.0, 0.0}};
    for (int k = 1; k < i; ++k) {
        const double s1 = eta.eta[0], s2 = eta.eta[1];
        eta.eta = {(1.0 - model.p1) * s1 + (1.0 - model.p2) * s2,
                   model.p1 * s1 + model.p2 * s2};
    }
    return eta;
}

double expected_percentage(const MarkovModel& model, int n) {
    if (n < 1) throw IndexError("expected_percentage: n must be >= 1");
    DistributionVector eta{{1.0, 0.0}};
    double acc = 0.0;
    for (int i = 1; i <= n; ++i) {
        acc += model.p1 * eta.eta[0] + model.p2 * eta.eta[1];
        const double s1 = eta.eta[0], s2 = eta.eta[1];
        eta.eta = {(1.0 - model.p1) * s1 + (1.0 - model.p2) * s2,
                   model.p1 * s1 + model.p2 * s2};
    }
    return acc / n * 100.0;
}

DistributionVector stationary_distribution(const MarkovModel& model) {
    const double denom = 1.0 + model.p1 - model.p2;
    if (std::abs(denom) < 1e-15) throw DegenerateChainError{};
    return {{(1.0 - model.p2) / denom, model.p1 / denom}};
}

double asymptotic_percentage(const MarkovModel& model) {
    const DistributionVector eta = stationary_distribution(model);
    return 100.0 * (model.p1 * eta.eta[0] + model.p2 * eta.eta[1]);
}

TrialSummary monte_carlo_summary(GameRunner& runner, int n_trials, int n_arrivals,
                                 std::uint64_t seed) {
    if (n_trials < 1) throw std::invalid_argument("monte_carlo_summary: n_trials >= 1");

    TrialSummary summary;
    summary.n_trials = n_trials;
    summary.n_arrivals = n_arrivals;
    const auto [p1, p2] = runner.probabilities();
    summary.p1 = p1;
    summary.p2 = p2;

    std::vector<double> capture_sums(static_cast<std::size_t>(std::max(n_arrivals, 0)), 0.0);
    summary.per_trial_fractions.reserve(n_trials);
    const bool record = runner.options().record_trajectories;
    runner.options().record_trajectories = false;  // trials only need outcomes
    for (int trial = 0; trial < n_trials; ++trial) {
        const SequenceResult result =
            runner.run_sequence(n_arrivals, seed + static_cast<std::uint64_t>(trial));
        summary.per_trial_fractions.push_back(result.capture_fraction);
        int captures = 0;
        for (int i = 0; i < n_arrivals; ++i) {
            captures += result.records[i].outcome == Outcome::Capture ? 1 : 0;
            capture_sums[i] += 100.0 * captures / (i + 1);
        }
    }
    runner.options().record_trajectories = record;
    summary.mean_curve.resize(capture_sums.size());
    for (std::size_t i = 0; i < capture_sums.size(); ++i)
        summary.mean_curve[i] = capture_sums[i] / n_trials;

    const MarkovModel model{p1, p2};
    summary.theory_curve.resize(static_cast<std::size_t>(std::max(n_arrivals, 0)));
    DistributionVector eta{{1.0, 0.0}};
    double acc = 0.0;
    for (int i = 1; i <= n_arrivals; ++i) {
        acc += model.p1 * eta.eta[0] + model.p2 * eta.eta[1];
        summary.theory_curve[i - 1] = acc / i * 100.0;
        const double s1 = eta.eta[0], s2 = eta.eta[1];
        eta.eta = {(1.0 - model.p1) * s1 + (1.0 - model.p2) * s2,
                   model.p1 * s1 + model.p2 * s2};
    }
    summary.asymptotic = asymptotic_percentage(model);
    return summary;
}

}  // namespace pdsim
