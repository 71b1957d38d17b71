#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pdsim/engagement.hpp"

namespace pdsim {

/// Run configuration: flat `key = value` text file with `#` comments.
/// Required keys: r_T, rho_T, rho_A, nu, omega_D, omega_A. The rest default.
struct RunConfig {
    GameParams params{};
    int resolution = 512;
    int arc_samples = 1440;
    int boundary_samples = 720;
    double trajectory_dt = 0.05;
    std::uint64_t seed = 1;
    int n_arrivals = 200;
    int n_trials = 100;
    std::string out_dir = "out";

    GridSpec grid() const { return default_grid(params, resolution); }

    /// Throws std::invalid_argument on any structural violation.
    void validate() const;
};

/// Parses a config stream. Throws ConfigParseError with the offending line on
/// malformed input or unknown keys; throws std::invalid_argument (via
/// validate) on invariant violations.
RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::string& path);

/// Canonical serialization: fixed key order, 17 significant digits.
/// parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

/// FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace pdsim
