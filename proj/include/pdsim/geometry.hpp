#pragma once

#include <cmath>
#include <stdexcept>

namespace pdsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
    double r = std::fmod(a + kPi, kTwoPi);
    if (r <= 0.0) r += kTwoPi;
    return r - kPi;
}

/// Wraps an angle to [0, 2*pi).
inline double mod_two_pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double squared_norm() const { return x * x + y * y; }
    double angle() const { return std::atan2(y, x); }

    Vec2 rotated(double a) const {
        const double c = std::cos(a), s = std::sin(a);
        return {c * x - s * y, s * x + c * y};
    }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Planar pose: position plus heading, heading always kept in (-pi, pi].
struct Configuration {
    Vec2 position;
    double heading = 0.0;

    Configuration() = default;
    Configuration(double x, double y, double psi) : position(x, y), heading(wrap_angle(psi)) {}
    Configuration(Vec2 p, double psi) : position(p), heading(wrap_angle(psi)) {}

    /// Pose rotated by `a` about the origin (position and heading together).
    Configuration rotated_about_origin(double a) const {
        return {position.rotated(a), heading + a};
    }
};

/// Constant-speed, bounded-turn-rate motion limits.
struct Kinematics {
    double speed;
    double max_turn_rate;

    Kinematics(double v, double omega) : speed(v), max_turn_rate(omega) {
        if (!(v > 0.0) || !(omega > 0.0))
            throw std::invalid_argument("Kinematics: speed and turn rate must be positive");
    }

    double turning_radius() const { return speed / max_turn_rate; }
};

}  // namespace pdsim
