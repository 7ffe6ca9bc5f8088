#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chsplice/channel_model.hpp"
#include "chsplice/ofdm_link.hpp"
#include "chsplice/splicer.hpp"

namespace chsplice {

enum class SubsetPolicy { kAlternating, kLowest, kExplicit };

/// Everything needed to reproduce one simulated splicing experiment.
struct ScenarioConfig {
  std::string name = "scenario";

  double total_bw_hz = 160e6;
  double sub_bw_hz = 20e6;
  double center_hz = 5e9;
  double spacing_hz = 312.5e3;

  std::vector<PathSpec> paths;
  GainMode gain_mode = GainMode::kDeterministic;  // applied to every path
  std::optional<double> snr_db;                   // empty = noiseless
  bool distortion = false;  // random per-band timing/phase offsets

  double subset_fraction = 1.0;
  SubsetPolicy subset_policy = SubsetPolicy::kAlternating;
  std::vector<std::size_t> explicit_bands;  // 0-based, used by kExplicit

  int grid_factor = kDefaultGridFactor;
  std::size_t sparsity = 0;  // 0 = number of paths
  double omp_tol = kDefaultOmpTol;

  std::size_t packets = 1;
  std::uint64_t seed = 0;
  double match_window_samples = 3.0;

  std::size_t effective_sparsity() const noexcept {
    return sparsity == 0 ? paths.size() : sparsity;
  }
  double wideband_sample_s() const noexcept { return 1.0 / total_bw_hz; }
  BandPlan band_plan() const;
  std::vector<PathSpec> realized_specs() const;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

/// Band subset selection. `fraction * M` must be a positive integer.
/// kAlternating takes floor(i M / count) for i < count, i.e. every other band
/// from the lowest when fraction = 0.5. kLowest takes the lowest `count`
/// bands. kExplicit returns `explicit_bands` (validated, sorted) and ignores
/// `fraction`.
std::vector<std::size_t> select_subbands(const BandPlan& plan, double fraction,
                                         SubsetPolicy policy,
                                         std::span<const std::size_t> explicit_bands = {});

struct PeakMatch {
  double true_delay_s = 0.0;
  std::optional<double> est_delay_s;
  std::optional<double> error_samples;  // signed, (est - true) / wideband sample

  bool matched() const noexcept { return est_delay_s.has_value(); }
};

struct PeakMatchReport {
  std::vector<PeakMatch> paths;  // one per truth delay, in input order
  double sample_duration_s = 0.0;

  std::size_t missed() const noexcept;
  /// Every truth path matched with |error| <= `samples`.
  bool all_within(double samples) const noexcept;
};

/// Greedy nearest-delay matching: candidate pairs within window * (1/total_bw)
/// are taken in order of increasing |delay difference|; every estimate and
/// every truth path is used at most once.
PeakMatchReport match_peaks(std::span<const double> estimated_s, std::span<const double> truth_s,
                            double total_bw_hz, double window_samples);
PeakMatchReport match_peaks(std::span<const RecoveredPath> estimated,
                            std::span<const double> truth_s, double total_bw_hz,
                            double window_samples);

/// Empirical CDF as steps: distinct sorted values with P(X <= value).
struct EcdfSeries {
  std::vector<double> values;
  std::vector<double> probabilities;
};

/// Throws std::invalid_argument on empty input.
EcdfSeries ecdf(std::span<const double> values);

/// Full-bandwidth single-band LS estimate used as the comparison baseline.
struct WidebandReference {
  CVector taps;
  double tap_spacing_s = 0.0;
  std::vector<double> peak_delays_s;  // strongest local maxima, ascending
};

/// Indices of the `count` strongest local maxima of |taps| (circular
/// neighbourhood), returned in ascending order.
std::vector<std::size_t> strongest_peaks(std::span<const cplx> taps, std::size_t count);

WidebandReference wideband_reference(const SparseChannel& channel, const ScenarioConfig& cfg,
                                     const NoiseModel& noise, std::size_t num_peaks);

struct PacketResult {
  std::size_t index = 0;
  bool ok = false;
  std::string error;
  SparseChannel channel;
  std::vector<RecoveredPath> recovered;  // ascending delay
  std::vector<double> residual_norms;
  SpliceStatus status = SpliceStatus::kOk;
  PeakMatchReport vs_truth;
  std::vector<double> reference_peaks_s;
  PeakMatchReport vs_reference;
  std::vector<CfrMeasurement> measurements;  // only with RunOptions::keep_measurements
};

struct PathSummary {
  double true_delay_s = 0.0;
  std::size_t matched = 0;
  std::size_t within_one_sample = 0;
  double max_abs_error_samples = 0.0;
};

struct ScenarioReport {
  ScenarioConfig config;
  std::vector<std::size_t> bands_used;
  std::size_t stacked_length = 0;
  std::size_t grid_size = 0;
  std::vector<PacketResult> packets;    // indexed by packet number
  std::vector<EcdfSeries> ecdf_by_rank;  // r-th smallest recovered delay
  std::vector<PathSummary> path_summary;
  std::size_t failed_packets = 0;
};

struct RunOptions {
  unsigned threads = 1;
  bool keep_measurements = false;
};

/// Runs every packet of the scenario: realize the channel, sound the selected
/// bands, LS-estimate, stack, splice with OMP and compare against the truth
/// and the wideband reference. Deterministic for a given config. A packet
/// that throws is recorded as failed. Throws std::invalid_argument for an
/// invalid config.
ScenarioReport run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

}  // namespace chsplice
