#include "pdsim/config.hpp"

#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "pdsim/errors.hpp"

namespace pdsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ConfigParseError(line, "expected a number, got '" + v + "'");
    }
}

int parse_int(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const int i = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return i;
    } catch (const std::exception&) {
        throw ConfigParseError(line, "expected an integer, got '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const unsigned long long u = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return u;
    } catch (const std::exception&) {
        throw ConfigParseError(line, "expected a non-negative integer, got '" + v + "'");
    }
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void RunConfig::validate() const {
    params.validate();
    if (resolution < 16) throw std::invalid_argument("resolution must be >= 16");
    if (arc_samples < 360) throw std::invalid_argument("arc_samples must be >= 360");
    if (boundary_samples < 8) throw std::invalid_argument("boundary_samples must be >= 8");
    if (!(trajectory_dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (n_arrivals < 0) throw std::invalid_argument("n_arrivals must be >= 0");
    if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
    if (out_dir.empty()) throw std::invalid_argument("out_dir must not be empty");
}

RunConfig parse_config(std::istream& is) {
    RunConfig config;
    config.params = GameParams{0, 0, 0, 0, 0, 0};
    bool seen[6] = {};
    const char* required[6] = {"r_T", "rho_T", "rho_A", "nu", "omega_D", "omega_A"};

    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigParseError(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigParseError(line_no, "expected 'key = value'");

        if (key == "r_T") { config.params.target_radius = parse_double(value, line_no); seen[0] = true; }
        else if (key == "rho_T") { config.params.tsr_radius = parse_double(value, line_no); seen[1] = true; }
        else if (key == "rho_A") { config.params.intruder_sensing_radius = parse_double(value, line_no); seen[2] = true; }
        else if (key == "nu") { config.params.speed_ratio = parse_double(value, line_no); seen[3] = true; }
        else if (key == "omega_D") { config.params.defender_turn_rate = parse_double(value, line_no); seen[4] = true; }
        else if (key == "omega_A") { config.params.intruder_turn_rate = parse_double(value, line_no); seen[5] = true; }
        else if (key == "resolution") config.resolution = parse_int(value, line_no);
        else if (key == "arc_samples") config.arc_samples = parse_int(value, line_no);
        else if (key == "boundary_samples") config.boundary_samples = parse_int(value, line_no);
        else if (key == "dt") config.trajectory_dt = parse_double(value, line_no);
        else if (key == "seed") config.seed = parse_u64(value, line_no);
        else if (key == "n_arrivals") config.n_arrivals = parse_int(value, line_no);
        else if (key == "n_trials") config.n_trials = parse_int(value, line_no);
        else if (key == "out_dir") config.out_dir = value;
        else throw ConfigParseError(line_no, "unknown key '" + key + "'");
    }
    for (int k = 0; k < 6; ++k)
        if (!seen[k])
            throw ConfigParseError(line_no, std::string("missing required key '") + required[k] + "'");
    config.validate();
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigParseError(0, "cannot open '" + path + "'");
    return parse_config(is);
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    os << "r_T = " << fmt_double(c.params.target_radius) << "\n"
       << "rho_T = " << fmt_double(c.params.tsr_radius) << "\n"
       << "rho_A = " << fmt_double(c.params.intruder_sensing_radius) << "\n"
       << "nu = " << fmt_double(c.params.speed_ratio) << "\n"
       << "omega_D = " << fmt_double(c.params.defender_turn_rate) << "\n"
       << "omega_A = " << fmt_double(c.params.intruder_turn_rate) << "\n"
       << "resolution = " << c.resolution << "\n"
       << "arc_samples = " << c.arc_samples << "\n"
       << "boundary_samples = " << c.boundary_samples << "\n"
       << "dt = " << fmt_double(c.trajectory_dt) << "\n"
       << "seed = " << c.seed << "\n"
       << "n_arrivals = " << c.n_arrivals << "\n"
       << "n_trials = " << c.n_trials << "\n"
       << "out_dir = " << c.out_dir << "\n";
    return os.str();
}

std::string config_hash(const RunConfig& config) {
    const std::string text = serialize_config(config);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

}  // namespace pdsim
