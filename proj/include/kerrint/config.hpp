#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kerrint/model.hpp"

namespace kerrint {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parsed `key = value` configuration (SI units throughout).
///
/// Required keys: l, a_width, m, omega, d, Q, C0, V0, n, t and at least one
/// of {chi, a_c}. Optional: f (default 1), chi_b (default 0),
/// threshold_much_less, threshold_much_greater.
struct Config {
    PhysicalParams phys;
    double n = 0;
    double t = 0;
    RegimeThresholds thresholds;
    std::vector<std::string> warnings;  // non-fatal findings, e.g. chi vs a_c mismatch
};

/// Throws ConfigError naming the offending key on missing/unknown/bad input.
Config parse_config(std::istream& in);
Config load_config(const std::string& path);

}  // namespace kerrint
