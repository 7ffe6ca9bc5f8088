#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "chsplice/eval_harness.hpp"
#include "config_file.hpp"
#include "report_io.hpp"
#include "trace_file.hpp"

#ifndef CHSPLICE_VERSION
#define CHSPLICE_VERSION "0.0.0"
#endif

namespace chsplice::cli {
namespace {

namespace fs = std::filesystem;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
  os << contents;
  if (!os) throw std::runtime_error("write failed for '" + path.string() + "'");
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

CfrTrace trace_from_report(const ScenarioReport& report) {
  const auto& cfg = report.config;
  CfrTrace trace;
  trace.total_bw_hz = cfg.total_bw_hz;
  trace.sub_bw_hz = cfg.sub_bw_hz;
  trace.center_hz = cfg.center_hz;
  trace.spacing_hz = cfg.spacing_hz;
  trace.sparsity = cfg.effective_sparsity();
  trace.grid_factor = cfg.grid_factor;
  trace.omp_tol = cfg.omp_tol;
  for (const auto& p : report.packets) trace.packets.push_back(p.measurements);
  return trace;
}

}  // namespace

std::string tool_version() { return CHSPLICE_VERSION; }

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  try {
    cfg = load_scenario_config(opts.config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.subset_fraction) cfg.subset_fraction = *opts.subset_fraction;
  if (opts.grid_factor) cfg.grid_factor = *opts.grid_factor;
  if (opts.packets) cfg.packets = *opts.packets;

  ScenarioReport report;
  try {
    report = run_scenario(cfg, RunOptions{opts.threads, opts.dump_cfr});
  } catch (const std::exception& e) {
    err << "error: scenario '" << cfg.name << "': " << e.what() << '\n';
    return kExitScenarioError;
  }

  try {
    std::vector<RecoveredRow> rows;
    for (const auto& p : report.packets) {
      if (!p.ok) continue;
      auto r = recovered_rows(p.index, p.recovered, report.stacked_length);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    std::vector<std::string> outputs = {"report.json", "peaks.csv", "ecdf.csv", "recovered.csv"};
    if (opts.dump_cfr) outputs.push_back("cfr_trace.csv");

    const Json manifest = {
        {"tool", "chsplice"},
        {"version", tool_version()},
        {"command", "simulate"},
        {"config_path", opts.config.string()},
        {"timestamp_utc", utc_timestamp()},
        {"master_seed", cfg.seed},
        {"config", config_to_json(cfg)},
        {"outputs", outputs},
    };

    fs::create_directories(opts.out_dir);
    write_file(opts.out_dir / "report.json", serialize_report(report));
    write_file(opts.out_dir / "peaks.csv", render([&](std::ostream& os) { write_peaks_csv(os, report); }));
    write_file(opts.out_dir / "ecdf.csv", render([&](std::ostream& os) { write_ecdf_csv(os, report); }));
    write_file(opts.out_dir / "recovered.csv", render([&](std::ostream& os) { write_recovered_csv(os, rows); }));
    if (opts.dump_cfr)
      write_file(opts.out_dir / "cfr_trace.csv",
                 render([&](std::ostream& os) { write_trace(os, trace_from_report(report)); }));
    write_file(opts.out_dir / "manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitScenarioError;
  }

  if (report.failed_packets > 0)
    err << "warning: " << report.failed_packets << " of " << report.packets.size()
        << " packets failed; see report.json\n";
  out << "scenario '" << cfg.name << "': " << report.packets.size() << " packets, "
      << report.bands_used.size() << " bands, G=" << report.grid_size << ", wrote "
      << opts.out_dir.string() << '\n';
  for (const auto& s : report.path_summary)
    out << "  path " << s.true_delay_s * 1e9 << " ns: matched " << s.matched << ", within 1 sample "
        << s.within_one_sample << ", max |error| " << s.max_abs_error_samples << " samples\n";
  return kExitOk;
}

int cmd_splice(const SpliceOptions& opts, std::ostream& out, std::ostream& err) {
  std::ifstream in(opts.trace);
  if (!in) {
    err << "error: cannot open trace '" << opts.trace.string() << "'\n";
    return kExitParseError;
  }
  CfrTrace trace;
  try {
    trace = read_trace(in);
  } catch (const TraceFormatError& e) {
    err << "error: " << opts.trace.string() << ": " << e.what() << '\n';
    return kExitParseError;
  } catch (const TraceGridError& e) {
    err << "error: " << opts.trace.string() << ": " << e.what() << '\n';
    return kExitScenarioError;
  }

  const auto sparsity = opts.sparsity ? opts.sparsity : trace.sparsity;
  if (!sparsity || *sparsity < 1) {
    err << "error: sparsity not given (use --sparsity or a 'sparsity' header key)\n";
    return kExitParseError;
  }
  const int grid_factor = opts.grid_factor.value_or(trace.grid_factor.value_or(kDefaultGridFactor));
  const double tol = opts.tol.value_or(trace.omp_tol.value_or(kDefaultOmpTol));
  if (tol < 0.0) {
    err << "error: --tol must be >= 0\n";
    return kExitParseError;
  }

  std::vector<RecoveredRow> rows;
  try {
    const BandPlan plan = trace.plan();
    std::map<std::vector<std::size_t>, Dictionary> dictionaries;
    for (std::size_t p = 0; p < trace.packets.size(); ++p) {
      const StackedMeasurement stacked = stack_measurements(trace.packets[p], plan);
      std::vector<std::size_t> key;
      for (const auto& b : stacked.bands) key.push_back(b.band);
      auto it = dictionaries.find(key);
      if (it == dictionaries.end())
        it = dictionaries.emplace(key, build_dictionary(stacked.freqs_hz, plan.spacing_hz(), grid_factor)).first;
      const SpliceResult result = omp(stacked, it->second, *sparsity, tol);
      if (result.status != SpliceStatus::kOk)
        err << "warning: packet " << p << ": " << result.message << '\n';
      auto r = recovered_rows(p, support_to_delays(result, it->second), stacked.size());
      rows.insert(rows.end(), r.begin(), r.end());
    }
  } catch (const std::exception& e) {
    err << "error: " << opts.trace.string() << ": " << e.what() << '\n';
    return kExitScenarioError;
  }

  try {
    fs::create_directories(opts.out_dir);
    write_file(opts.out_dir / "splice.csv", render([&](std::ostream& os) { write_recovered_csv(os, rows); }));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitScenarioError;
  }
  out << "spliced " << trace.packets.size() << " packets (K=" << *sparsity << ", grid factor "
      << grid_factor << "), wrote " << (opts.out_dir / "splice.csv").string() << '\n';
  return kExitOk;
}

int cmd_resolution(const ResolutionOptions& opts, std::ostream& out, std::ostream& err) {
  if (!(opts.band_bw_hz > 0.0) || opts.bands < 1) {
    err << "error: band bandwidth must be > 0 and bands >= 1\n";
    return kExitParseError;
  }
  const auto single = delay_resolution(opts.band_bw_hz);
  const double total = opts.band_bw_hz * static_cast<double>(opts.bands);
  const auto spliced = delay_resolution(total);

  char line[160];
  out << "                 bandwidth_mhz   resolution_ns   path_length_m\n";
  std::snprintf(line, sizeof(line), "single band      %13.6g   %13.6g   %13.6g\n",
                opts.band_bw_hz / 1e6, single.seconds * 1e9, single.meters);
  out << line;
  std::snprintf(line, sizeof(line), "spliced (M=%-3zu)  %13.6g   %13.6g   %13.6g\n", opts.bands,
                total / 1e6, spliced.seconds * 1e9, spliced.meters);
  out << line;
  return kExitOk;
}

}  // namespace chsplice::cli
