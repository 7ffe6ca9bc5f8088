#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "chsplice/splicer.hpp"

namespace chsplice::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitScenarioError = 1;
inline constexpr int kExitParseError = 2;

struct SimulateOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> subset_fraction;
  std::optional<int> grid_factor;
  std::optional<std::size_t> packets;
  bool dump_cfr = false;
  unsigned threads = 1;
};

/// Writes report.json, peaks.csv, ecdf.csv, recovered.csv and manifest.json
/// (plus cfr_trace.csv with dump_cfr) into out_dir. Nothing is written unless
/// the config parses and the scenario validates.
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

struct SpliceOptions {
  std::filesystem::path trace;
  std::filesystem::path out_dir = ".";
  std::optional<std::size_t> sparsity;  // falls back to the trace header
  std::optional<int> grid_factor;       // falls back to the trace header, then 3
  std::optional<double> tol;           // falls back to the trace header, then 1e-6
};

/// Splices every packet of a CFR trace; writes splice.csv into out_dir.
int cmd_splice(const SpliceOptions& opts, std::ostream& out, std::ostream& err);

struct ResolutionOptions {
  double band_bw_hz = 0.0;  // N * f_s of one sub-band
  std::size_t bands = 1;
};

/// Prints single-band and spliced delay resolution with path-length equivalents.
int cmd_resolution(const ResolutionOptions& opts, std::ostream& out, std::ostream& err);

std::string tool_version();

}  // namespace chsplice::cli
