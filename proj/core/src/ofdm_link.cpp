#include "chsplice/ofdm_link.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "chsplice/dft.hpp"

namespace chsplice {
namespace {

// Integer quotient a/b when b divides a up to floating-point noise.
std::optional<long long> exact_ratio(double a, double b) {
  const double q = a / b;
  const double r = std::round(q);
  if (r < 1.0 || std::abs(q - r) > 1e-9 * std::max(1.0, r)) return std::nullopt;
  return static_cast<long long>(r);
}

}  // namespace

BandPlan::BandPlan(std::vector<double> centers_hz, int num_subcarriers, double spacing_hz,
                   double sub_bw_hz)
    : centers_(std::move(centers_hz)), n_(num_subcarriers), spacing_(spacing_hz) {
  if (centers_.empty()) throw std::invalid_argument("BandPlan: no sub-bands");
  if (n_ < 1 || n_ % 2 == 0)
    throw std::invalid_argument("BandPlan: subcarrier count must be odd and positive, got " +
                                std::to_string(n_));
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
    throw std::invalid_argument("BandPlan: subcarrier spacing must be positive");
  for (std::size_t m = 0; m < centers_.size(); ++m) {
    if (!std::isfinite(centers_[m])) throw std::invalid_argument("BandPlan: non-finite center");
    if (m > 0 && !(centers_[m] > centers_[m - 1]))
      throw std::invalid_argument("BandPlan: centers must be strictly increasing");
  }
  sub_bw_ = sub_bw_hz > 0.0 ? sub_bw_hz : n_ * spacing_;
}

double BandPlan::center_hz(std::size_t m) const {
  if (m >= centers_.size())
    throw std::out_of_range("band index " + std::to_string(m) + " out of range");
  return centers_[m];
}

BandPlan build_band_plan(double total_bw_hz, double sub_bw_hz, double overall_center_hz,
                         double spacing_hz) {
  if (!(total_bw_hz > 0.0) || !(sub_bw_hz > 0.0) || !(spacing_hz > 0.0))
    throw std::invalid_argument("build_band_plan: bandwidths and spacing must be positive");
  const auto bands = exact_ratio(total_bw_hz, sub_bw_hz);
  if (!bands)
    throw std::invalid_argument("build_band_plan: sub-band width does not divide total bandwidth");
  const auto tones = exact_ratio(sub_bw_hz, spacing_hz);
  if (!tones)
    throw std::invalid_argument("build_band_plan: subcarrier spacing does not divide sub-band width");

  const long long m_count = *bands;
  const int n = static_cast<int>(*tones % 2 == 1 ? *tones : *tones - 1);
  if (n < 1) throw std::invalid_argument("build_band_plan: fewer than one subcarrier per band");

  std::vector<double> centers;
  centers.reserve(static_cast<std::size_t>(m_count));
  for (long long m = 0; m < m_count; ++m) {
    const double offset = static_cast<double>(2 * m - (m_count - 1)) * (sub_bw_hz / 2.0);
    centers.push_back(overall_center_hz + offset);
  }
  return BandPlan(std::move(centers), n, spacing_hz, sub_bw_hz);
}

std::vector<int> subcarrier_indices(int num_subcarriers) {
  if (num_subcarriers < 1) throw std::invalid_argument("subcarrier_indices: N < 1");
  std::vector<int> out(static_cast<std::size_t>(num_subcarriers));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = subcarrier_index(i, out.size());
  return out;
}

std::vector<double> subcarrier_freqs(const BandPlan& plan, std::size_t m) {
  const double center = plan.center_hz(m);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(plan.num_subcarriers()));
  for (int n : subcarrier_indices(plan.num_subcarriers()))
    out.push_back(center + n * plan.spacing_hz());
  return out;
}

PilotGrid PilotGrid::all_ones(std::size_t band, int num_subcarriers) {
  return PilotGrid{band, CVector(static_cast<std::size_t>(num_subcarriers), cplx{1.0, 0.0})};
}

void PilotGrid::validate() const {
  for (const auto& s : symbols)
    if (std::abs(std::abs(s) - 1.0) > 1e-12)
      throw std::invalid_argument("PilotGrid: pilot symbols must have unit modulus");
}

TimeDomainFrame make_pilot_frame(const BandPlan& plan, std::size_t m, const PilotGrid& grid,
                                 long cp_len) {
  if (cp_len < 0) throw std::invalid_argument("make_pilot_frame: negative cyclic prefix");
  if (grid.band != m) throw std::invalid_argument("make_pilot_frame: pilot grid is for another band");
  (void)plan.center_hz(m);
  if (grid.symbols.size() != static_cast<std::size_t>(plan.num_subcarriers()))
    throw std::invalid_argument("make_pilot_frame: pilot count != N");
  grid.validate();

  const CVector symbol = cfr_to_cir(grid.symbols);
  const std::size_t cp = static_cast<std::size_t>(cp_len);
  if (cp > symbol.size()) throw std::invalid_argument("make_pilot_frame: cyclic prefix longer than symbol");

  TimeDomainFrame frame;
  frame.cp_len = cp;
  frame.samples.reserve(symbol.size() + cp);
  frame.samples.insert(frame.samples.end(), symbol.end() - static_cast<long>(cp), symbol.end());
  frame.samples.insert(frame.samples.end(), symbol.begin(), symbol.end());
  return frame;
}

CVector channel_taps(const SparseChannel& channel, double sample_rate_hz, double carrier_hz) {
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("channel_taps: sample rate must be > 0");
  std::map<std::size_t, cplx> by_index;
  for (const auto& p : channel.paths()) {
    const auto idx = static_cast<std::size_t>(std::llround(p.delay_s * sample_rate_hz));
    const double cycles = carrier_hz * p.delay_s;
    by_index[idx] += p.gain * std::polar(1.0, -kTwoPi * (cycles - std::round(cycles)));
  }
  CVector taps(by_index.empty() ? 1 : by_index.rbegin()->first + 1, cplx{0.0, 0.0});
  for (const auto& [idx, g] : by_index) taps[idx] = g;
  return taps;
}

TimeDomainFrame propagate_time(const TimeDomainFrame& frame, std::span<const cplx> taps,
                               const NoiseModel& noise) {
  if (taps.empty()) throw std::invalid_argument("propagate_time: no channel taps");
  if (taps.size() > frame.cp_len + 1)
    throw ChannelTooLongError("propagate_time: channel of " + std::to_string(taps.size()) +
                              " taps exceeds cyclic prefix of " + std::to_string(frame.cp_len) +
                              " samples");
  const auto& x = frame.samples;
  CVector y(x.size(), cplx{0.0, 0.0});
  for (std::size_t t = 0; t < x.size(); ++t) {
    const std::size_t upto = std::min(taps.size(), t + 1);
    for (std::size_t l = 0; l < upto; ++l) y[t] += taps[l] * x[t - l];
  }
  return TimeDomainFrame{add_awgn(y, noise), frame.cp_len};
}

Eigen::MatrixXcd pilot_toeplitz(const TimeDomainFrame& tx, std::size_t channel_len) {
  const std::size_t rows = tx.symbol_len();
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows),
                                              static_cast<Eigen::Index>(channel_len));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t l = 0; l < channel_len; ++l) {
      const long src = static_cast<long>(tx.cp_len + r) - static_cast<long>(l);
      if (src >= 0) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l)) =
                        tx.samples[static_cast<std::size_t>(src)];
    }
  }
  return x;
}

CVector ls_estimate_time(const TimeDomainFrame& rx, const TimeDomainFrame& tx,
                         std::optional<std::size_t> channel_len) {
  if (rx.samples.size() != tx.samples.size() || rx.cp_len != tx.cp_len)
    throw std::invalid_argument("ls_estimate_time: rx/tx frame layout mismatch");
  const std::size_t len = channel_len.value_or(tx.cp_len + 1);
  if (len == 0 || len > tx.symbol_len())
    throw std::invalid_argument("ls_estimate_time: channel length must be in [1, N]");

  const Eigen::MatrixXcd x = pilot_toeplitz(tx, len);
  const auto useful = rx.useful();
  const Eigen::VectorXcd y = Eigen::Map<const Eigen::VectorXcd>(
      useful.data(), static_cast<Eigen::Index>(useful.size()));

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || !(sv(0) > 0.0) || sv(sv.size() - 1) < 1e-12 * sv(0))
    throw RankDeficientError("ls_estimate_time: pilot Toeplitz matrix is rank deficient");
  const Eigen::VectorXcd h = svd.solve(y);
  return CVector(h.data(), h.data() + h.size());
}

CfrMeasurement demodulate_frame(const TimeDomainFrame& rx, const BandPlan& plan, std::size_t m) {
  if (rx.symbol_len() != static_cast<std::size_t>(plan.num_subcarriers()))
    throw std::invalid_argument("demodulate_frame: symbol length != N");
  return CfrMeasurement{m, subcarrier_freqs(plan, m), cir_to_cfr(rx.useful()), kClean};
}

CfrMeasurement ls_estimate_freq(const CfrMeasurement& rx_grid, const PilotGrid& pilots) {
  if (rx_grid.band != pilots.band)
    throw std::invalid_argument("ls_estimate_freq: pilot grid is for another band");
  if (rx_grid.samples.size() != pilots.symbols.size())
    throw std::invalid_argument("ls_estimate_freq: sample/pilot length mismatch");
  CfrMeasurement out = rx_grid;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const cplx s = pilots.symbols[i];
    if (std::abs(s) < 1e-12)
      throw std::invalid_argument("ls_estimate_freq: pilot magnitude below 1e-12 at position " +
                                  std::to_string(i));
    out.samples[i] = rx_grid.samples[i] / s;
  }
  return out;
}

CfrMeasurement sound_band(const SparseChannel& channel, const BandPlan& plan, std::size_t m,
                          const PilotGrid& pilots, const NoiseModel& noise,
                          const std::optional<DistortionParams>& distortion) {
  channel.require_within_period(plan.spacing_hz());
  if (pilots.band != m || pilots.symbols.size() != static_cast<std::size_t>(plan.num_subcarriers()))
    throw std::invalid_argument("sound_band: pilot grid does not match band");
  pilots.validate();

  CfrMeasurement out;
  out.band = m;
  out.freqs_hz = subcarrier_freqs(plan, m);
  CVector h = synth_cfr(channel, out.freqs_hz);
  if (distortion) {
    h = apply_distortion(h, subcarrier_indices(plan.num_subcarriers()), *distortion,
                         plan.spacing_hz());
    out.flags |= kDistorted;
  }
  for (std::size_t i = 0; i < h.size(); ++i) h[i] *= pilots.symbols[i];
  out.samples = add_awgn(h, noise);
  if (!noise.is_noiseless()) out.flags |= kNoisy;
  return out;
}

}  // namespace chsplice
