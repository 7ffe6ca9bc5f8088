#include "report_io.hpp"

#include <cmath>
#include <ostream>

#include "config_file.hpp"
#include "number_format.hpp"

namespace chsplice::cli {
namespace {

constexpr double kNs = 1e9;

Json optional_number(const std::optional<double>& v, double scale = 1.0) {
  return v ? Json(*v * scale) : Json(nullptr);
}

Json matches_to_json(const PeakMatchReport& r) {
  Json out = Json::array();
  for (const auto& m : r.paths)
    out.push_back({{"true_delay_ns", m.true_delay_s * kNs},
                   {"est_delay_ns", optional_number(m.est_delay_s, kNs)},
                   {"error_samples", optional_number(m.error_samples)}});
  return out;
}

Json packet_to_json(const PacketResult& p) {
  Json j;
  j["index"] = p.index;
  j["ok"] = p.ok;
  if (!p.ok) {
    j["error"] = p.error;
    return j;
  }
  j["status"] = p.status == SpliceStatus::kOk ? "ok" : "ill_conditioned";
  Json channel = Json::array();
  for (const auto& path : p.channel.paths())
    channel.push_back({{"delay_ns", path.delay_s * kNs},
                       {"gain_re", path.gain.real()},
                       {"gain_im", path.gain.imag()}});
  j["channel"] = std::move(channel);
  Json recovered = Json::array();
  for (const auto& r : p.recovered)
    recovered.push_back({{"grid_index", r.grid_index},
                         {"delay_ns", r.delay_s * kNs},
                         {"coef_re", r.coefficient.real()},
                         {"coef_im", r.coefficient.imag()}});
  j["recovered"] = std::move(recovered);
  j["residual_norms"] = p.residual_norms;
  j["matches"] = matches_to_json(p.vs_truth);
  Json ref = Json::array();
  for (double d : p.reference_peaks_s) ref.push_back(d * kNs);
  j["reference_peaks_ns"] = std::move(ref);
  j["reference_matches"] = matches_to_json(p.vs_reference);
  return j;
}

}  // namespace

Json config_to_json(const ScenarioConfig& cfg) {
  Json paths = Json::array();
  for (const auto& p : cfg.paths)
    paths.push_back({{"delay_ns", p.delay_s * kNs}, {"avg_power_db", p.avg_power_db}});
  return Json{
      {"name", cfg.name},
      {"total_bw_hz", cfg.total_bw_hz},
      {"sub_bw_hz", cfg.sub_bw_hz},
      {"center_hz", cfg.center_hz},
      {"subcarrier_spacing_hz", cfg.spacing_hz},
      {"paths", std::move(paths)},
      {"gain_mode", to_string(cfg.gain_mode)},
      {"snr_db", cfg.snr_db ? Json(*cfg.snr_db) : Json("noiseless")},
      {"distortion", cfg.distortion},
      {"subset_fraction", cfg.subset_fraction},
      {"subset_policy", to_string(cfg.subset_policy)},
      {"explicit_bands", cfg.explicit_bands},
      {"grid_factor", cfg.grid_factor},
      {"sparsity", cfg.effective_sparsity()},
      {"omp_tol", cfg.omp_tol},
      {"packets", cfg.packets},
      {"seed", cfg.seed},
      {"match_window_samples", cfg.match_window_samples},
  };
}

Json report_to_json(const ScenarioReport& report) {
  Json j;
  j["schema"] = kReportSchema;
  j["config"] = config_to_json(report.config);
  j["bands_used"] = report.bands_used;
  j["stacked_length"] = report.stacked_length;
  j["grid_size"] = report.grid_size;
  j["wideband_sample_ns"] = report.config.wideband_sample_s() * kNs;
  j["failed_packets"] = report.failed_packets;

  Json summary = Json::array();
  for (const auto& s : report.path_summary)
    summary.push_back({{"true_delay_ns", s.true_delay_s * kNs},
                       {"matched", s.matched},
                       {"within_one_sample", s.within_one_sample},
                       {"max_abs_error_samples", s.max_abs_error_samples}});
  j["path_summary"] = std::move(summary);

  Json ecdf = Json::array();
  for (std::size_t r = 0; r < report.ecdf_by_rank.size(); ++r) {
    Json delays = Json::array();
    for (double v : report.ecdf_by_rank[r].values) delays.push_back(v * kNs);
    ecdf.push_back({{"rank", r},
                    {"delay_ns", std::move(delays)},
                    {"probability", report.ecdf_by_rank[r].probabilities}});
  }
  j["ecdf"] = std::move(ecdf);

  Json packets = Json::array();
  for (const auto& p : report.packets) packets.push_back(packet_to_json(p));
  j["packets"] = std::move(packets);
  return j;
}

std::string serialize_report(const ScenarioReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

std::vector<RecoveredRow> recovered_rows(std::size_t packet,
                                         const std::vector<RecoveredPath>& paths,
                                         std::size_t stacked_length) {
  const double norm = std::sqrt(static_cast<double>(stacked_length));
  std::vector<RecoveredRow> rows;
  rows.reserve(paths.size());
  for (std::size_t r = 0; r < paths.size(); ++r) {
    const cplx gain = paths[r].coefficient / norm;
    rows.push_back({packet, r, paths[r].grid_index, paths[r].delay_s * kNs, std::abs(gain),
                    std::arg(gain)});
  }
  return rows;
}

void write_recovered_csv(std::ostream& os, const std::vector<RecoveredRow>& rows) {
  os << kRecoveredHeader << '\n';
  for (const auto& r : rows)
    os << r.packet << ',' << r.rank << ',' << r.grid_index << ',' << format_double(r.delay_ns)
       << ',' << format_double(r.gain_magnitude) << ',' << format_double(r.gain_phase_rad) << '\n';
}

void write_peaks_csv(std::ostream& os, const ScenarioReport& report) {
  os << kPeaksHeader << '\n';
  for (const auto& p : report.packets) {
    if (!p.ok) continue;
    for (std::size_t t = 0; t < p.vs_truth.paths.size(); ++t) {
      const auto& m = p.vs_truth.paths[t];
      os << p.index << ',' << t << ',' << format_double(m.true_delay_s * kNs) << ','
         << (m.est_delay_s ? format_double(*m.est_delay_s * kNs) : std::string()) << ','
         << (m.error_samples ? format_double(*m.error_samples) : std::string()) << ','
         << (m.matched() ? 1 : 0) << '\n';
    }
  }
}

void write_ecdf_csv(std::ostream& os, const ScenarioReport& report) {
  os << kEcdfHeader << '\n';
  for (std::size_t r = 0; r < report.ecdf_by_rank.size(); ++r) {
    const auto& e = report.ecdf_by_rank[r];
    for (std::size_t i = 0; i < e.values.size(); ++i)
      os << r << ',' << format_double(e.values[i] * kNs) << ',' << format_double(e.probabilities[i])
         << '\n';
  }
}

}  // namespace chsplice::cli
