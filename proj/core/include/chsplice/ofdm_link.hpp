#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "chsplice/channel_model.hpp"
#include "chsplice/types.hpp"

namespace chsplice {

/// M contiguous sub-bands sharing one odd subcarrier count N and spacing f_s.
/// Subcarrier n of band m sits at f_{m,0} + n f_s, n in {-(N-1)/2 .. (N-1)/2}.
class BandPlan {
 public:
  /// Throws std::invalid_argument unless N is odd and positive, f_s > 0,
  /// there is at least one band and centers are strictly increasing.
  BandPlan(std::vector<double> centers_hz, int num_subcarriers, double spacing_hz,
           double sub_bw_hz = 0.0);

  std::size_t num_bands() const noexcept { return centers_.size(); }
  int num_subcarriers() const noexcept { return n_; }
  double spacing_hz() const noexcept { return spacing_; }
  /// Nominal channel width of one sub-band (defaults to N f_s).
  double sub_bw_hz() const noexcept { return sub_bw_; }
  double center_hz(std::size_t m) const;
  const std::vector<double>& centers_hz() const noexcept { return centers_; }

  friend bool operator==(const BandPlan&, const BandPlan&) = default;

 private:
  std::vector<double> centers_;
  int n_ = 1;
  double spacing_ = 1.0;
  double sub_bw_ = 0.0;
};

/// Contiguous split of `total_bw_hz` into total/sub bands centred on
/// `overall_center_hz`. N is the largest odd integer <= sub_bw/f_s.
BandPlan build_band_plan(double total_bw_hz, double sub_bw_hz, double overall_center_hz,
                         double spacing_hz);

/// {-(N-1)/2, ..., (N-1)/2}.
std::vector<int> subcarrier_indices(int num_subcarriers);

/// Absolute subcarrier frequencies of band m. Throws std::out_of_range.
std::vector<double> subcarrier_freqs(const BandPlan& plan, std::size_t m);

/// Known pilot symbols of one band, one per subcarrier, all unit modulus.
struct PilotGrid {
  std::size_t band = 0;
  CVector symbols;

  static PilotGrid all_ones(std::size_t band, int num_subcarriers);
  /// Throws std::invalid_argument if any |S| deviates from 1 by more than 1e-12.
  void validate() const;
};

enum MeasurementFlags : unsigned {
  kClean = 0u,
  kNoisy = 1u << 0,
  kDistorted = 1u << 1,
};

/// Per-band complex samples over the band's subcarriers, in subcarrier order.
/// Holds either received pilots y[m,n] or an estimated CFR H[m,n].
struct CfrMeasurement {
  std::size_t band = 0;
  std::vector<double> freqs_hz;
  CVector samples;
  unsigned flags = kClean;
};

/// One OFDM symbol in the time domain at rate N f_s, cyclic prefix first.
struct TimeDomainFrame {
  CVector samples;
  std::size_t cp_len = 0;

  std::size_t symbol_len() const noexcept { return samples.size() - cp_len; }
  std::span<const cplx> useful() const noexcept {
    return std::span<const cplx>(samples).subspan(cp_len);
  }
};

class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChannelTooLongError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// IDFT of the pilot symbols with `cp_len` cyclic-prefix samples prepended.
TimeDomainFrame make_pilot_frame(const BandPlan& plan, std::size_t m, const PilotGrid& grid,
                                 long cp_len);

/// Discrete-time taps at `sample_rate_hz`: each delay rounded to the nearest
/// sample, gains include the carrier phase exp(-j 2 pi f_c tau).
CVector channel_taps(const SparseChannel& channel, double sample_rate_hz,
                     double carrier_hz = 0.0);

/// Linear convolution with `taps` truncated to the frame length, plus AWGN.
/// Throws ChannelTooLongError when taps.size() > cp_len + 1.
TimeDomainFrame propagate_time(const TimeDomainFrame& frame, std::span<const cplx> taps,
                               const NoiseModel& noise);

/// N x L Toeplitz matrix X with X(r, l) = tx[cp + r - l] (zero before the
/// frame start), so that the useful part of rx equals X h.
Eigen::MatrixXcd pilot_toeplitz(const TimeDomainFrame& tx, std::size_t channel_len);

/// Time-domain LS: h = pinv(X) y over the useful part of `rx`. The channel
/// length defaults to cp_len + 1. Throws RankDeficientError when the smallest
/// singular value of X is below 1e-12 of the largest.
CVector ls_estimate_time(const TimeDomainFrame& rx, const TimeDomainFrame& tx,
                         std::optional<std::size_t> channel_len = std::nullopt);

/// Strips the cyclic prefix and takes the N-point DFT: the received grid Y[n].
CfrMeasurement demodulate_frame(const TimeDomainFrame& rx, const BandPlan& plan, std::size_t m);

/// Frequency-domain LS: H[n] = Y[n] / S[n]. Throws std::invalid_argument on a
/// band/length mismatch or any |S[n]| < 1e-12.
CfrMeasurement ls_estimate_freq(const CfrMeasurement& rx_grid, const PilotGrid& pilots);

/// Received pilot grid of band m for a passband channel:
/// y[m,n] = exp(j psi[m,n]) H(f_{m,n}) S[m,n] + z[m,n].
/// Delays stay continuous. Throws std::domain_error if a delay is outside [0, 1/f_s).
CfrMeasurement sound_band(const SparseChannel& channel, const BandPlan& plan, std::size_t m,
                          const PilotGrid& pilots, const NoiseModel& noise,
                          const std::optional<DistortionParams>& distortion = std::nullopt);

}  // namespace chsplice
