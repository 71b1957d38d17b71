#pragma once

#include <stdexcept>
#include <string>

namespace pdsim {

/// Agents occupy the same point; relative geometry is undefined.
struct CollocatedError : std::runtime_error {
    CollocatedError() : std::runtime_error("agents are collocated") {}
};

struct SpeedRatioError : std::runtime_error {
    explicit SpeedRatioError(double nu)
        : std::runtime_error("speed ratio must lie in (0, 1), got " + std::to_string(nu)) {}
};

struct EmptyRegionError : std::runtime_error {
    EmptyRegionError() : std::runtime_error("region has no member cells") {}
};

struct NoBoundaryError : std::runtime_error {
    NoBoundaryError() : std::runtime_error("region boundary extraction produced no polyline") {}
};

struct NoFeasibleEngagementError : std::runtime_error {
    NoFeasibleEngagementError()
        : std::runtime_error("no engagement time keeps the dominance region off the target") {}
};

struct DegenerateChainError : std::runtime_error {
    DegenerateChainError()
        : std::runtime_error("chain has no unique stationary distribution (1 + p1 - p2 = 0)") {}
};

struct IndexError : std::runtime_error {
    explicit IndexError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigParseError : std::runtime_error {
    int line;
    ConfigParseError(int line_, const std::string& what)
        : std::runtime_error("config line " + std::to_string(line_) + ": " + what), line(line_) {}
};

}  // namespace pdsim
