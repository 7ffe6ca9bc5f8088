#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "chsplice/eval_harness.hpp"

namespace chsplice::cli {

/// Unreadable or malformed configuration. Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario files are INI-style, one section per concern, every physical
// quantity carrying its unit in the key name:
//
//   [scenario]   name, packets, seed
//   [band_plan]  total_bw_mhz, sub_bw_mhz, center_ghz, subcarrier_spacing_khz
//   [channel]    delays_ns, powers_db, gain_mode, snr_db, distortion
//   [subset]     fraction, policy, bands
//   [splicer]    grid_factor, sparsity, tol
//   [match]      window_samples
//
// See docs/file_formats.md for defaults and accepted values.

ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

/// Renders a config back to the same INI format. Parsing the result gives
/// the same config up to unit-conversion rounding.
std::string render_scenario_config(const ScenarioConfig& cfg);

std::string to_string(GainMode mode);
std::string to_string(SubsetPolicy policy);

}  // namespace chsplice::cli
