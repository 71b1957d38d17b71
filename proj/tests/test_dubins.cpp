#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pdsim/dubins.hpp"

using namespace pdsim;

namespace {

std::mt19937_64 rng(2024);

double uniform(double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1p-53);
}

Configuration random_config(double span) {
    return {uniform(-span, span), uniform(-span, span), uniform(-kPi, kPi)};
}

}  // namespace

TEST_CASE("angle wrapping stays in (-pi, pi]") {
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(0.0) == 0.0);
    for (int k = 0; k < 100; ++k) {
        const double w = wrap_angle(uniform(-50.0, 50.0));
        CHECK(w > -kPi - 1e-15);
        CHECK(w <= kPi + 1e-15);
    }
}

TEST_CASE("fixed heading: collinear aligned straight line") {
    const DubinsPath p = shortest_path_fixed_heading({0, 0, 0}, {10, 0, 0}, 2.0);
    CHECK(p.total_length() == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(p.segments.size() == 1);
    CHECK(p.segments[0].kind == SegmentKind::Straight);
}

TEST_CASE("fixed heading: reversal matches the geometric oracle") {
    const Configuration start{0, 0, 0}, goal{0, 0, kPi};
    const double expect = oracles::fixed_heading_geometric(start, goal, 2.0);
    const DubinsPath p = shortest_path_fixed_heading(start, goal, 2.0);
    CHECK(p.total_length() == doctest::Approx(expect).epsilon(1e-9));
    const Configuration end = p.endpoint();
    CHECK((end.position - goal.position).norm() < 1e-9);
    CHECK(std::abs(wrap_angle(end.heading - goal.heading)) < 1e-9);
}

TEST_CASE("fixed heading: diagonal goal matches the geometric oracle") {
    const Configuration start{0, 0, 0}, goal{4, 4, kPi / 2};
    const double expect = oracles::fixed_heading_geometric(start, goal, 2.0);
    const DubinsPath p = shortest_path_fixed_heading(start, goal, 2.0);
    CHECK(p.total_length() == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("fixed heading: identity query gives an empty path") {
    const DubinsPath p = shortest_path_fixed_heading({3, -2, 0.7}, {3, -2, 0.7}, 1.5);
    CHECK(p.total_length() == doctest::Approx(0.0));
    CHECK(p.segments.empty());
}

TEST_CASE("free heading: point dead ahead") {
    const DubinsPath p = shortest_path_free_heading({0, 0, 0}, {5, 0}, 2.0);
    CHECK(p.total_length() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(p.endpoint().heading == doctest::Approx(0.0));
}

TEST_CASE("free heading: point on the turning circle") {
    const DubinsPath p = shortest_path_free_heading({0, 0, 0}, {0, 4}, 2.0);
    CHECK(p.total_length() == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK(std::abs(wrap_angle(p.endpoint().heading - kPi)) < 1e-9);
}

TEST_CASE("free heading: goal inside the turning circle needs two arcs") {
    const DubinsPath p = shortest_path_free_heading({0, 0, 0}, {0, 2}, 2.0);
    const auto scan = oracles::free_heading_scan({0, 0, 0}, {0, 2}, 2.0, 20000);
    CHECK(p.segments.size() == 2);
    CHECK(p.segments[0].kind != p.segments[1].kind);
    CHECK(std::abs(p.total_length() - scan.length) <= scan.resolution);
    CHECK((p.endpoint().position - Vec2{0, 2}).norm() < 1e-9);
}

TEST_CASE("free heading: zero-distance query gives an empty path") {
    const DubinsPath p = shortest_path_free_heading({1, 1, 0.3}, {1, 1}, 2.0);
    CHECK(p.total_length() == 0.0);
    CHECK(p.segments.empty());
}

TEST_CASE("time_to_config and time_to_point examples") {
    const Kinematics slow{1.0, 0.5};
    CHECK(time_to_config({0, 0, 0}, {10, 0, 0}, slow) == doctest::Approx(10.0));
    const double oracle_len = oracles::fixed_heading_geometric({0, 0, 0}, {0, 0, kPi}, 2.0);
    CHECK(time_to_config({0, 0, 0}, {0, 0, kPi}, slow) == doctest::Approx(oracle_len));
    CHECK(time_to_config({2, 2, 1.0}, {2, 2, 1.0}, slow) == doctest::Approx(0.0));

    CHECK(time_to_point({0, 0, 0}, {5, 0}, Kinematics{0.8, 1.5}) == doctest::Approx(6.25));
    CHECK(time_to_point({0, 0, 0}, {0, 4}, slow) == doctest::Approx(kTwoPi));
}

TEST_CASE("sample_path: straight line sampling") {
    const DubinsPath p = shortest_path_fixed_heading({0, 0, 0}, {10, 0, 0}, 2.0);
    const auto samples = sample_path(p, 1.0, Kinematics{1.0, 0.5});
    REQUIRE(samples.size() == 11);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        CHECK(samples[k].t == doctest::Approx(static_cast<double>(k)));
        CHECK(samples[k].config.position.x == doctest::Approx(static_cast<double>(k)));
        CHECK(samples[k].config.position.y == doctest::Approx(0.0));
    }
}

TEST_CASE("sample_path: arc samples stay on the turning circle") {
    const Kinematics kin{1.0, 0.5};
    const DubinsPath p = shortest_path_free_heading({0, 0, 0}, {0, 4}, 2.0);
    const Vec2 center{0, 2};
    for (const auto& tp : sample_path(p, 0.1, kin))
        CHECK(std::abs((tp.config.position - center).norm() - 2.0) < 1e-9);
}

TEST_CASE("sample_path agrees with Euler integration of the dynamics") {
    const Kinematics kin{0.8, 1.5};
    for (int trial = 0; trial < 20; ++trial) {
        const Configuration a = random_config(6.0), b = random_config(6.0);
        const DubinsPath p = shortest_path_fixed_heading(a, b, kin.turning_radius());
        const Configuration integrated = oracles::integrate_unicycle(p, kin, 1e-4);
        const Configuration analytic = p.endpoint();
        CHECK((integrated.position - analytic.position).norm() < 5e-3);
        CHECK(std::abs(wrap_angle(integrated.heading - analytic.heading)) < 5e-3);
    }
}

TEST_CASE("lower bound: never shorter than the straight-line distance") {
    for (int trial = 0; trial < 300; ++trial) {
        const double radius = uniform(0.2, 4.0);
        const Configuration a = random_config(8.0), b = random_config(8.0);
        const double euclid = (b.position - a.position).norm();
        CHECK(shortest_path_fixed_heading(a, b, radius).total_length() >= euclid - 1e-9);
        CHECK(shortest_path_free_heading(a, b.position, radius).total_length() >=
              euclid - 1e-9);
    }
}

TEST_CASE("relaxation: free final heading is never longer than fixed") {
    for (int trial = 0; trial < 300; ++trial) {
        const double radius = uniform(0.2, 4.0);
        const Configuration a = random_config(8.0), b = random_config(8.0);
        CHECK(shortest_path_free_heading(a, b.position, radius).total_length() <=
              shortest_path_fixed_heading(a, b, radius).total_length() + 1e-9);
    }
}

TEST_CASE("rigid-motion equivariance of path lengths") {
    for (int trial = 0; trial < 200; ++trial) {
        const double radius = uniform(0.3, 3.0);
        const Configuration a = random_config(6.0), b = random_config(6.0);
        const double rot = uniform(-kPi, kPi);
        const Vec2 shift{uniform(-5, 5), uniform(-5, 5)};
        auto moved = [&](const Configuration& c) {
            return Configuration{c.position.rotated(rot) + shift, c.heading + rot};
        };
        const double base = shortest_path_fixed_heading(a, b, radius).total_length();
        const double after =
            shortest_path_fixed_heading(moved(a), moved(b), radius).total_length();
        CHECK(after == doctest::Approx(base).epsilon(1e-9));

        const double base_free =
            shortest_path_free_heading(a, b.position, radius).total_length();
        const double after_free =
            shortest_path_free_heading(moved(a), moved(b).position, radius).total_length();
        CHECK(after_free == doctest::Approx(base_free).epsilon(1e-9));
    }
}

TEST_CASE("small-radius limit: fixed-heading length decreases toward Euclidean") {
    const Configuration a{0, 0, 0.4}, b{7, 3, -1.0};
    const double euclid = (b.position - a.position).norm();
    double prev = 1e100;
    for (const double radius : {2.0, 1.0, 0.5, 0.25, 0.125, 0.0625}) {
        const double len = shortest_path_fixed_heading(a, b, radius).total_length();
        CHECK(len <= prev + 1e-9);
        prev = len;
    }
    CHECK(prev == doctest::Approx(euclid).epsilon(1e-2));
}

TEST_CASE("forward evaluation reproduces the requested goal") {
    for (int trial = 0; trial < 400; ++trial) {
        const double radius = uniform(0.2, 4.0);
        const Configuration a = random_config(8.0), b = random_config(8.0);
        const Configuration end = shortest_path_fixed_heading(a, b, radius).endpoint();
        CHECK((end.position - b.position).norm() < 1e-6);
        CHECK(std::abs(wrap_angle(end.heading - b.heading)) < 1e-6);

        const Configuration end_free =
            shortest_path_free_heading(a, b.position, radius).endpoint();
        CHECK((end_free.position - b.position).norm() < 1e-6);
    }
}

TEST_CASE("closed form matches the dense control scan") {
    for (int trial = 0; trial < 150; ++trial) {
        const double radius = uniform(0.3, 3.0);
        const Configuration a = random_config(6.0), b = random_config(6.0);
        const double closed = shortest_path_fixed_heading(a, b, radius).total_length();
        const auto scan = oracles::fixed_heading_scan(a, b, radius, 4096);
        CHECK(std::abs(closed - scan.length) <= scan.resolution);

        const double closed_free =
            shortest_path_free_heading(a, b.position, radius).total_length();
        const auto scan_free = oracles::free_heading_scan(a, b.position, radius, 4096);
        CHECK(std::abs(closed_free - scan_free.length) <= scan_free.resolution);
    }
}
