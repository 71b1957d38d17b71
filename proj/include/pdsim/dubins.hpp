#pragma once

#include <vector>

#include "pdsim/geometry.hpp"

namespace pdsim {

enum class SegmentKind { LeftArc, RightArc, Straight };

struct DubinsSegment {
    SegmentKind kind;
    double length;  // >= 0, arc lengths measured along the path
};

/// A curvature-bounded forward path: up to three arc/straight segments
/// anchored at `start`. Arcs use `turning_radius`.
struct DubinsPath {
    Configuration start;
    double turning_radius = 1.0;
    std::vector<DubinsSegment> segments;

    double total_length() const;

    /// Pose after driving distance `s` from the start (clamped to the path).
    Configuration pose_at(double s) const;

    Configuration endpoint() const { return pose_at(total_length()); }
};

/// Minimum-length path between two full configurations (CSC/CCC words).
/// Ties between equal-length words resolve in the fixed order
/// LSL, RSR, LSR, RSL, RLR, LRL.
DubinsPath shortest_path_fixed_heading(const Configuration& start, const Configuration& goal,
                                       double radius);

/// Minimum-length path from a configuration to a point, final heading free.
/// Candidates are the single arc, arc+straight (both turn directions) and
/// opposite-turn arc pairs; the latter cover goal points inside a turning
/// circle. The achieved final heading is reported by `endpoint()`.
DubinsPath shortest_path_free_heading(const Configuration& start, Vec2 goal_point, double radius);

/// Fixed-heading travel time under `kin` (radius = speed / max_turn_rate).
double time_to_config(const Configuration& start, const Configuration& goal, const Kinematics& kin);

/// Free-heading travel time to a point; the t_i(x) of the dominance test.
double time_to_point(const Configuration& start, Vec2 goal_point, const Kinematics& kin);

struct TimedPose {
    double t;
    Configuration config;
};

/// Poses at t = 0, dt, 2dt, ..., T_end by exact segment evaluation.
/// The last sample is the exact endpoint.
std::vector<TimedPose> sample_path(const DubinsPath& path, double dt, const Kinematics& kin);

}  // namespace pdsim
