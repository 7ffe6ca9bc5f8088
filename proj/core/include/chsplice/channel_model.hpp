#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chsplice/types.hpp"

namespace chsplice {

enum class GainMode { kDeterministic, kRayleigh };

/// One multipath component: delay in seconds, complex amplitude.
struct Path {
  double delay_s = 0.0;
  cplx gain{1.0, 0.0};

  friend bool operator==(const Path&, const Path&) = default;
};

/// Ground-truth sparse CIR h(tau) = sum_k c_k delta(tau - tau_k).
/// Paths are kept sorted by strictly increasing delay.
class SparseChannel {
 public:
  SparseChannel() = default;
  /// Sorts by delay. Throws std::invalid_argument on an empty list, a
  /// negative delay or duplicate delays.
  explicit SparseChannel(std::vector<Path> paths);

  const std::vector<Path>& paths() const noexcept { return paths_; }
  std::size_t size() const noexcept { return paths_.size(); }
  std::vector<double> delays() const;
  double max_delay() const;

  /// Same delays, every gain multiplied by `alpha`.
  SparseChannel scaled(cplx alpha) const;

  /// Throws std::domain_error unless every delay lies in [0, 1/spacing_hz),
  /// the unambiguous delay range for a comb with that subcarrier spacing.
  void require_within_period(double spacing_hz) const;

  friend bool operator==(const SparseChannel&, const SparseChannel&) = default;

 private:
  std::vector<Path> paths_;
};

/// Path profile entry: delay, average power relative to the strongest path,
/// and whether the realized gain is fixed (phase 0) or Rayleigh-faded.
struct PathSpec {
  double delay_s = 0.0;
  double avg_power_db = 0.0;
  GainMode gain_mode = GainMode::kDeterministic;
};

/// Per-band hardware distortion: timing offset (seconds, in [0, 1/f_s)) and
/// phase offset (cycles, in [0, 1)).
struct DistortionParams {
  double timing_offset_s = 0.0;
  double phase_offset_cycles = 0.0;
};

/// Complex AWGN with variance 1/snr per sample. An empty snr means noiseless.
struct NoiseModel {
  std::optional<double> snr;
  std::uint64_t seed = 0;

  static NoiseModel noiseless() { return {}; }
  static NoiseModel from_snr_db(double snr_db, std::uint64_t seed);
  bool is_noiseless() const noexcept { return !snr.has_value(); }
  double variance() const { return is_noiseless() ? 0.0 : 1.0 / *snr; }
};

struct DelayResolution {
  double seconds = 0.0;
  double meters = 0.0;
};

/// Realizes a channel from a path profile. Gain magnitude is
/// 10^(avg_power_db/20); Rayleigh paths draw CN(0, 10^(avg_power_db/10)).
/// Deterministic for a given (specs, seed).
SparseChannel make_sparse_channel(std::span<const PathSpec> specs,
                                  std::uint64_t seed);

/// CFR at arbitrary frequencies: H(f) = sum_k c_k exp(-j 2 pi f tau_k).
CVector synth_cfr(const SparseChannel& channel, std::span<const double> freqs_hz);

/// Multiplies each sample by exp(j psi[n]) with
/// psi[n] = -2 pi (delta * n * f_s + phi).
CVector apply_distortion(std::span<const cplx> samples,
                         std::span<const int> subcarrier_indices,
                         const DistortionParams& d, double spacing_hz);

/// The phase psi[n] applied by apply_distortion, in radians.
double distortion_phase(const DistortionParams& d, int subcarrier_index,
                        double spacing_hz) noexcept;

/// Adds seeded i.i.d. CN(0, 1/snr) noise. Identity for the noiseless model.
CVector add_awgn(std::span<const cplx> samples, const NoiseModel& noise);

/// Delay resolution 1/bw and its path-length equivalent c/bw.
DelayResolution delay_resolution(double total_bw_hz);

}  // namespace chsplice
