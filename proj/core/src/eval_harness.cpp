#include "chsplice/eval_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "chsplice/dft.hpp"
#include "chsplice/seeding.hpp"

namespace chsplice {
namespace {

constexpr double kMatchSlack = 1e-9;  // relative slack on window edges

std::uint64_t band_noise_seed(std::uint64_t master, std::size_t packet, std::size_t band) {
  return derive_seed(derive_seed(master, SeedStream::kBandNoise, packet), 0, band);
}

}  // namespace

BandPlan ScenarioConfig::band_plan() const {
  return build_band_plan(total_bw_hz, sub_bw_hz, center_hz, spacing_hz);
}

std::vector<PathSpec> ScenarioConfig::realized_specs() const {
  auto specs = paths;
  for (auto& s : specs) s.gain_mode = gain_mode;
  return specs;
}

void ScenarioConfig::validate() const {
  if (paths.empty()) throw std::invalid_argument("scenario: at least one path is required");
  if (packets < 1) throw std::invalid_argument("scenario: packets must be >= 1");
  if (!(subset_fraction > 0.0) || subset_fraction > 1.0)
    throw std::invalid_argument("scenario: subset fraction must be in (0, 1]");
  if (grid_factor < 2) throw std::invalid_argument("scenario: grid_factor must be >= 2");
  if (omp_tol < 0.0) throw std::invalid_argument("scenario: omp tolerance must be >= 0");
  if (match_window_samples < 0.0) throw std::invalid_argument("scenario: match window must be >= 0");
  if (snr_db && !std::isfinite(*snr_db)) throw std::invalid_argument("scenario: snr must be finite");
  const BandPlan plan = band_plan();
  (void)select_subbands(plan, subset_fraction, subset_policy, explicit_bands);
  // Duplicate or negative delays and out-of-period delays.
  const SparseChannel probe = make_sparse_channel(realized_specs(), 0);
  probe.require_within_period(spacing_hz);
}

std::vector<std::size_t> select_subbands(const BandPlan& plan, double fraction,
                                         SubsetPolicy policy,
                                         std::span<const std::size_t> explicit_bands) {
  const std::size_t m = plan.num_bands();
  if (policy == SubsetPolicy::kExplicit) {
    if (explicit_bands.empty()) throw std::invalid_argument("select_subbands: explicit band list is empty");
    std::vector<std::size_t> out(explicit_bands.begin(), explicit_bands.end());
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
      throw std::invalid_argument("select_subbands: duplicate band in explicit list");
    if (out.back() >= m) throw std::invalid_argument("select_subbands: explicit band out of range");
    return out;
  }

  if (!(fraction > 0.0) || fraction > 1.0)
    throw std::invalid_argument("select_subbands: fraction must be in (0, 1]");
  const double exact = fraction * static_cast<double>(m);
  const double rounded = std::round(exact);
  if (rounded < 1.0 || std::abs(exact - rounded) > 1e-9)
    throw std::invalid_argument("select_subbands: fraction * M = " + std::to_string(exact) +
                                " is not a positive integer");
  const auto count = static_cast<std::size_t>(rounded);

  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(policy == SubsetPolicy::kLowest ? i : (i * m) / count);
  return out;
}

std::size_t PeakMatchReport::missed() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(paths.begin(), paths.end(), [](const PeakMatch& p) { return !p.matched(); }));
}

bool PeakMatchReport::all_within(double samples) const noexcept {
  return std::all_of(paths.begin(), paths.end(), [&](const PeakMatch& p) {
    return p.matched() && std::abs(*p.error_samples) <= samples * (1.0 + kMatchSlack);
  });
}

PeakMatchReport match_peaks(std::span<const double> estimated_s, std::span<const double> truth_s,
                            double total_bw_hz, double window_samples) {
  if (window_samples < 0.0) throw std::invalid_argument("match_peaks: window must be >= 0");
  if (!(total_bw_hz > 0.0)) throw std::invalid_argument("match_peaks: bandwidth must be > 0");

  PeakMatchReport report;
  report.sample_duration_s = 1.0 / total_bw_hz;
  report.paths.resize(truth_s.size());
  for (std::size_t t = 0; t < truth_s.size(); ++t) report.paths[t].true_delay_s = truth_s[t];

  // (|error| in samples, truth index, estimate index)
  std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
  const double limit = window_samples * (1.0 + kMatchSlack) + kMatchSlack;
  for (std::size_t t = 0; t < truth_s.size(); ++t)
    for (std::size_t e = 0; e < estimated_s.size(); ++e) {
      const double err = std::abs(estimated_s[e] - truth_s[t]) * total_bw_hz;
      if (err <= limit) candidates.emplace_back(err, t, e);
    }
  std::sort(candidates.begin(), candidates.end());

  std::vector<bool> truth_used(truth_s.size(), false);
  std::vector<bool> est_used(estimated_s.size(), false);
  for (const auto& [err, t, e] : candidates) {
    if (truth_used[t] || est_used[e]) continue;
    truth_used[t] = est_used[e] = true;
    report.paths[t].est_delay_s = estimated_s[e];
    report.paths[t].error_samples = (estimated_s[e] - truth_s[t]) * total_bw_hz;
  }
  return report;
}

PeakMatchReport match_peaks(std::span<const RecoveredPath> estimated,
                            std::span<const double> truth_s, double total_bw_hz,
                            double window_samples) {
  std::vector<double> delays;
  delays.reserve(estimated.size());
  for (const auto& p : estimated) delays.push_back(p.delay_s);
  return match_peaks(delays, truth_s, total_bw_hz, window_samples);
}

EcdfSeries ecdf(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("ecdf: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::stable_sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  EcdfSeries out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    // Ties stack into one step placed at the last occurrence.
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    out.values.push_back(sorted[i]);
    out.probabilities.push_back(static_cast<double>(i + 1) / n);
  }
  return out;
}

std::vector<std::size_t> strongest_peaks(std::span<const cplx> taps, std::size_t count) {
  const std::size_t n = taps.size();
  std::vector<std::size_t> peaks;
  if (n == 0 || count == 0) return peaks;
  for (std::size_t l = 0; l < n; ++l) {
    const double here = std::abs(taps[l]);
    const double prev = std::abs(taps[(l + n - 1) % n]);
    const double next = std::abs(taps[(l + 1) % n]);
    if (n == 1 || (here > prev && here >= next)) peaks.push_back(l);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(taps[a]) > std::abs(taps[b]);
  });
  if (peaks.size() > count) peaks.resize(count);
  std::sort(peaks.begin(), peaks.end());
  return peaks;
}

WidebandReference wideband_reference(const SparseChannel& channel, const ScenarioConfig& cfg,
                                     const NoiseModel& noise, std::size_t num_peaks) {
  const BandPlan wide = build_band_plan(cfg.total_bw_hz, cfg.total_bw_hz, cfg.center_hz,
                                        cfg.spacing_hz);
  const PilotGrid pilots = PilotGrid::all_ones(0, wide.num_subcarriers());
  const CfrMeasurement est = ls_estimate_freq(sound_band(channel, wide, 0, pilots, noise), pilots);

  WidebandReference ref;
  ref.taps = cfr_to_cir(est.samples);
  ref.tap_spacing_s = 1.0 / (wide.num_subcarriers() * wide.spacing_hz());
  for (auto l : strongest_peaks(ref.taps, num_peaks))
    ref.peak_delays_s.push_back(static_cast<double>(l) * ref.tap_spacing_s);
  return ref;
}

namespace {

struct PreparedScenario {
  BandPlan plan;
  std::vector<std::size_t> bands;
  Dictionary dict;
  std::vector<PathSpec> specs;
  std::vector<double> truth;
};

PacketResult run_packet(const ScenarioConfig& cfg, const PreparedScenario& prep, std::size_t p,
                        bool keep_measurements) {
  PacketResult out;
  out.index = p;
  try {
    out.channel = make_sparse_channel(prep.specs, derive_seed(cfg.seed, SeedStream::kChannel, p));

    std::vector<CfrMeasurement> estimates;
    estimates.reserve(prep.bands.size());
    for (auto m : prep.bands) {
      const PilotGrid pilots = PilotGrid::all_ones(m, prep.plan.num_subcarriers());
      NoiseModel noise;
      if (cfg.snr_db) noise = NoiseModel::from_snr_db(*cfg.snr_db, band_noise_seed(cfg.seed, p, m));
      std::optional<DistortionParams> distortion;
      if (cfg.distortion) {
        std::mt19937_64 rng(derive_seed(derive_seed(cfg.seed, SeedStream::kDistortion, p), 0, m));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double delta = unit(rng) / prep.plan.spacing_hz();
        const double phi = unit(rng);
        distortion = DistortionParams{delta, phi};
      }
      const auto rx = sound_band(out.channel, prep.plan, m, pilots, noise, distortion);
      estimates.push_back(ls_estimate_freq(rx, pilots));
    }

    const StackedMeasurement stacked = stack_measurements(estimates, prep.plan);
    const SpliceResult spliced = omp(stacked, prep.dict, cfg.effective_sparsity(), cfg.omp_tol);
    out.recovered = support_to_delays(spliced, prep.dict);
    out.residual_norms = spliced.residual_norms;
    out.status = spliced.status;
    out.vs_truth =
        match_peaks(out.recovered, prep.truth, cfg.total_bw_hz, cfg.match_window_samples);

    NoiseModel ref_noise;
    if (cfg.snr_db)
      ref_noise = NoiseModel::from_snr_db(
          *cfg.snr_db, derive_seed(cfg.seed, SeedStream::kReferenceNoise, p));
    const auto ref = wideband_reference(out.channel, cfg, ref_noise, cfg.effective_sparsity());
    out.reference_peaks_s = ref.peak_delays_s;
    out.vs_reference =
        match_peaks(out.recovered, ref.peak_delays_s, cfg.total_bw_hz, cfg.match_window_samples);

    if (keep_measurements) out.measurements = std::move(estimates);
    out.ok = true;
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

}  // namespace

ScenarioReport run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
  cfg.validate();

  const BandPlan plan = cfg.band_plan();
  auto bands = select_subbands(plan, cfg.subset_fraction, cfg.subset_policy, cfg.explicit_bands);
  std::vector<double> freqs;
  for (auto m : bands) {
    const auto f = subcarrier_freqs(plan, m);
    freqs.insert(freqs.end(), f.begin(), f.end());
  }
  std::vector<double> truth;
  for (const auto& s : cfg.paths) truth.push_back(s.delay_s);
  std::sort(truth.begin(), truth.end());

  const PreparedScenario prep{plan, bands, build_dictionary(freqs, plan.spacing_hz(), cfg.grid_factor),
                              cfg.realized_specs(), truth};

  ScenarioReport report;
  report.config = cfg;
  report.bands_used = bands;
  report.stacked_length = freqs.size();
  report.grid_size = prep.dict.grid_size();
  report.packets.resize(cfg.packets);

  const unsigned workers =
      std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(cfg.packets)));
  if (workers == 1) {
    for (std::size_t p = 0; p < cfg.packets; ++p)
      report.packets[p] = run_packet(cfg, prep, p, opts.keep_measurements);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t p = next++; p < cfg.packets; p = next++)
          report.packets[p] = run_packet(cfg, prep, p, opts.keep_measurements);
      });
  }

  const std::size_t k = cfg.effective_sparsity();
  std::vector<std::vector<double>> by_rank(k);
  report.path_summary.resize(truth.size());
  for (std::size_t t = 0; t < truth.size(); ++t) report.path_summary[t].true_delay_s = truth[t];

  for (const auto& pkt : report.packets) {
    if (!pkt.ok) {
      ++report.failed_packets;
      continue;
    }
    for (std::size_t r = 0; r < pkt.recovered.size() && r < k; ++r)
      by_rank[r].push_back(pkt.recovered[r].delay_s);
    for (std::size_t t = 0; t < pkt.vs_truth.paths.size(); ++t) {
      const auto& match = pkt.vs_truth.paths[t];
      if (!match.matched()) continue;
      auto& s = report.path_summary[t];
      ++s.matched;
      const double err = std::abs(*match.error_samples);
      if (err <= 1.0 + kMatchSlack) ++s.within_one_sample;
      s.max_abs_error_samples = std::max(s.max_abs_error_samples, err);
    }
  }
  for (auto& values : by_rank)
    report.ecdf_by_rank.push_back(values.empty() ? EcdfSeries{} : ecdf(values));
  return report;
}

}  // namespace chsplice
