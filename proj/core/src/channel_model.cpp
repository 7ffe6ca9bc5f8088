#include "chsplice/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace chsplice {
namespace {

// exp(-j 2 pi x) with x reduced to [-0.5, 0.5] first.
cplx unit_phasor_neg(double cycles) {
  const double frac = cycles - std::round(cycles);
  return std::polar(1.0, -kTwoPi * frac);
}

}  // namespace

SparseChannel::SparseChannel(std::vector<Path> paths) : paths_(std::move(paths)) {
  if (paths_.empty()) throw std::invalid_argument("SparseChannel: no paths");
  std::stable_sort(paths_.begin(), paths_.end(),
                   [](const Path& a, const Path& b) { return a.delay_s < b.delay_s; });
  for (std::size_t k = 0; k < paths_.size(); ++k) {
    if (!std::isfinite(paths_[k].delay_s) || paths_[k].delay_s < 0.0)
      throw std::invalid_argument("SparseChannel: delay must be finite and >= 0");
    if (k > 0 && paths_[k].delay_s == paths_[k - 1].delay_s)
      throw std::invalid_argument("SparseChannel: duplicate delay " +
                                  std::to_string(paths_[k].delay_s));
  }
}

std::vector<double> SparseChannel::delays() const {
  std::vector<double> out;
  out.reserve(paths_.size());
  for (const auto& p : paths_) out.push_back(p.delay_s);
  return out;
}

double SparseChannel::max_delay() const {
  return paths_.empty() ? 0.0 : paths_.back().delay_s;
}

SparseChannel SparseChannel::scaled(cplx alpha) const {
  auto copy = paths_;
  for (auto& p : copy) p.gain *= alpha;
  return SparseChannel(std::move(copy));
}

void SparseChannel::require_within_period(double spacing_hz) const {
  if (!(spacing_hz > 0.0)) throw std::invalid_argument("subcarrier spacing must be > 0");
  const double period = 1.0 / spacing_hz;
  for (const auto& p : paths_) {
    if (p.delay_s < 0.0 || p.delay_s >= period)
      throw std::domain_error("path delay " + std::to_string(p.delay_s) +
                              " s outside [0, 1/f_s) = [0, " + std::to_string(period) + ")");
  }
}

NoiseModel NoiseModel::from_snr_db(double snr_db, std::uint64_t seed) {
  return NoiseModel{std::pow(10.0, snr_db / 10.0), seed};
}

SparseChannel make_sparse_channel(std::span<const PathSpec> specs, std::uint64_t seed) {
  if (specs.empty()) throw std::invalid_argument("make_sparse_channel: empty path list");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Path> paths;
  paths.reserve(specs.size());
  for (const auto& s : specs) {
    if (!std::isfinite(s.avg_power_db))
      throw std::invalid_argument("make_sparse_channel: non-finite path power");
    const double amplitude = std::pow(10.0, s.avg_power_db / 20.0);
    cplx gain{amplitude, 0.0};
    if (s.gain_mode == GainMode::kRayleigh) {
      // CN(0, amplitude^2): each quadrature carries half the power.
      const double sigma = amplitude / std::sqrt(2.0);
      const double re = gauss(rng);
      const double im = gauss(rng);
      gain = {sigma * re, sigma * im};
    }
    paths.push_back({s.delay_s, gain});
  }
  return SparseChannel(std::move(paths));
}

CVector synth_cfr(const SparseChannel& channel, std::span<const double> freqs_hz) {
  CVector out(freqs_hz.size(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < freqs_hz.size(); ++i) {
    const double f = freqs_hz[i];
    if (!std::isfinite(f)) throw std::invalid_argument("synth_cfr: non-finite frequency");
    cplx acc{0.0, 0.0};
    for (const auto& p : channel.paths()) acc += p.gain * unit_phasor_neg(f * p.delay_s);
    out[i] = acc;
  }
  return out;
}

double distortion_phase(const DistortionParams& d, int subcarrier_index,
                        double spacing_hz) noexcept {
  return -kTwoPi * (d.timing_offset_s * subcarrier_index * spacing_hz + d.phase_offset_cycles);
}

CVector apply_distortion(std::span<const cplx> samples, std::span<const int> subcarrier_indices,
                         const DistortionParams& d, double spacing_hz) {
  if (samples.size() != subcarrier_indices.size())
    throw std::invalid_argument("apply_distortion: samples/indices length mismatch");
  CVector out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    out[i] = samples[i] * std::polar(1.0, distortion_phase(d, subcarrier_indices[i], spacing_hz));
  return out;
}

CVector add_awgn(std::span<const cplx> samples, const NoiseModel& noise) {
  CVector out(samples.begin(), samples.end());
  if (noise.is_noiseless()) return out;
  if (!(*noise.snr > 0.0) || !std::isfinite(*noise.snr))
    throw std::invalid_argument("add_awgn: snr must be positive and finite");
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(noise.variance() / 2.0));
  for (auto& s : out) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    s += cplx{re, im};
  }
  return out;
}

DelayResolution delay_resolution(double total_bw_hz) {
  if (!(total_bw_hz > 0.0) || !std::isfinite(total_bw_hz))
    throw std::invalid_argument("delay_resolution: bandwidth must be positive");
  return {1.0 / total_bw_hz, kSpeedOfLight / total_bw_hz};
}

}  // namespace chsplice
