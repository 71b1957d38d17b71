#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pdsim/game.hpp"

namespace pdsim {

/// Two-state capture chain: S1 = defender at the target center, S2 = defender
/// on the capture circle. p1/p2 are the single-game capture probabilities
/// from each state.
struct MarkovModel {
    double p1;
    double p2;

    MarkovModel(double p1_, double p2_);
};

/// (probability at S1, probability at S2); components sum to 1.
struct DistributionVector {
    std::array<double, 2> eta;

    double operator[](int j) const { return eta[j]; }
};

/// Column-stochastic transition matrix [[1-p1, 1-p2], [p1, p2]];
/// m[r][c] = P(next = S_{r+1} | current = S_{c+1}).
std::array<std::array<double, 2>, 2> transition_matrix(const MarkovModel& model);

/// State distribution at the START of game i (i >= 1): eta_i = P^(i-1) e1,
/// so game 1 starts at the center with probability 1.
DistributionVector state_distribution(const MarkovModel& model, int i);

/// Expected capture percentage after n games: (sum_{i=1..n} p . eta_i) / n * 100.
double expected_percentage(const MarkovModel& model, int n);

/// Closed-form stationary vector ((1-p2), p1) / (1 + p1 - p2).
DistributionVector stationary_distribution(const MarkovModel& model);

/// 100 * p . eta*.
double asymptotic_percentage(const MarkovModel& model);

struct TrialSummary {
    int n_trials = 0;
    int n_arrivals = 0;
    std::vector<double> per_trial_fractions;  // final capture fraction per trial
    std::vector<double> mean_curve;           // empirical mean percentage vs n (1-based)
    std::vector<double> theory_curve;         // expected_percentage(n)
    double asymptotic = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

/// Runs n_trials seeded sequences (substream seed + trial index, trajectories
/// off) and pairs the empirical mean capture-percentage curve with the chain
/// prediction from the runner's capture probabilities.
TrialSummary monte_carlo_summary(GameRunner& runner, int n_trials, int n_arrivals,
                                 std::uint64_t seed);

}  // namespace pdsim
