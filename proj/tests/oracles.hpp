#pragma once

// Test-only reference computations, kept independent of the library's solver
// formulas: candidate paths are built from explicit circle/tangent geometry or
// dense control scans and validated by numeric integration of the unicycle
// dynamics.

#include <vector>

#include "pdsim/dubins.hpp"
#include "pdsim/geometry.hpp"

namespace pdsim::oracles {

/// Euler-integrates the unicycle dynamics with the bang-bang controls implied
/// by the path segments. Error is O(dt).
Configuration integrate_unicycle(const DubinsPath& path, const Kinematics& kin, double dt);

/// Fixed-heading shortest length by geometric word construction: each word's
/// tangent points from circle geometry, every candidate re-validated by
/// integration before it can win.
double fixed_heading_geometric(const Configuration& start, const Configuration& goal,
                               double radius);

struct ScanResult {
    double length;      // best candidate length found by the scan
    double resolution;  // length uncertainty bound of the scan
};

/// Fixed-heading brute force: dense scan over the first-arc angle for each
/// turn-straight-turn / turn-turn-turn control pattern, accepting candidates
/// whose closure residual is below the scan step.
ScanResult fixed_heading_scan(const Configuration& start, const Configuration& goal,
                              double radius, int steps);

/// Free-heading brute force: dense scan over the first-arc angle with a
/// straight or opposite-arc second segment.
ScanResult free_heading_scan(const Configuration& start, Vec2 goal, double radius, int steps);

/// Markov-chain oracles.
std::vector<double> power_iteration(double p1, double p2, int iterations);
double sampled_capture_percentage(double p1, double p2, int n_games, int n_runs,
                                  unsigned long long seed);

}  // namespace pdsim::oracles
