#pragma once

#include "relaysurv/experiments.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace relaysurv {

// Raised for unreadable, malformed, or out-of-range configuration input.
// The message always names the offending file and field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double dbm_to_mw(double dbm);

// Parsed run configuration. The region and sweep specs carry their own
// copies of the system parameters and node geometry, already synced.
struct AppConfig {
    RegionMapSpec region;
    SweepSpec sweep;
    std::uint64_t seed = 2024;
};

// `source_name` labels error messages (normally the file path).
AppConfig parse_config(const std::string& text, const std::string& source_name);
AppConfig load_config_file(const std::string& path);

} // namespace relaysurv
