#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/config_file.hpp"
#include "cli/number_format.hpp"
#include "cli/report_io.hpp"
#include "cli/trace_file.hpp"

using namespace chsplice;
using namespace chsplice::cli;
namespace fs = std::filesystem;

namespace {

constexpr const char* kTwoPathIni = R"(# two-path scenario
[scenario]
name = two-path
packets = 3
seed = 11

[band_plan]
total_bw_mhz = 160
sub_bw_mhz = 40
center_ghz = 5.0

[channel]
delays_ns = 0, 18.75
powers_db = 0, -2
gain_mode = rayleigh
snr_db = 30

[splicer]
tol = 0
)";

class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = fs::temp_directory_path() / ("chsplice-test-" + std::to_string(rng()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return path_ / name;
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

ScenarioConfig parse(const std::string& text) {
  std::istringstream is(text);
  return parse_scenario_config(is);
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(CHSPLICE_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// delay_ns column (index 3) of a recovered-path CSV, keyed by (packet, rank).
std::map<std::pair<std::string, std::string>, std::string> delay_column(const fs::path& csv) {
  std::map<std::pair<std::string, std::string>, std::string> out;
  const auto rows = lines(slurp(csv));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> cells;
    std::stringstream ss(rows[i]);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    out[{cells.at(0), cells.at(1)}] = cells.at(3);
  }
  return out;
}

}  // namespace

TEST(NumberFormat, ShortestRoundTrip) {
  EXPECT_EQ(format_double(18.75), "18.75");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(5e9), "5e+09");
  EXPECT_EQ(format_double(2400), "2400");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(*parse_number<double>(format_double(x)), x);
  EXPECT_EQ(parse_number<double>(" +2.5 "), 2.5);
  EXPECT_FALSE(parse_number<double>("2.5x"));
  EXPECT_FALSE(parse_number<int>(""));
}

TEST(ConfigFile, ParsesUnitsAndDefaults) {
  const auto cfg = parse(kTwoPathIni);
  EXPECT_EQ(cfg.name, "two-path");
  EXPECT_EQ(cfg.packets, 3u);
  EXPECT_EQ(cfg.seed, 11u);
  EXPECT_EQ(cfg.total_bw_hz, 160e6);
  EXPECT_EQ(cfg.sub_bw_hz, 40e6);
  EXPECT_EQ(cfg.center_hz, 5e9);
  EXPECT_EQ(cfg.spacing_hz, 312.5e3);
  ASSERT_EQ(cfg.paths.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.paths[1].delay_s, 18.75e-9);
  EXPECT_EQ(cfg.paths[1].avg_power_db, -2.0);
  EXPECT_EQ(cfg.gain_mode, GainMode::kRayleigh);
  EXPECT_EQ(cfg.snr_db, 30.0);
  EXPECT_EQ(cfg.omp_tol, 0.0);
  EXPECT_EQ(cfg.grid_factor, 3);
  EXPECT_EQ(cfg.subset_fraction, 1.0);
  EXPECT_EQ(cfg.match_window_samples, 3.0);
}

TEST(ConfigFile, OptionalKeys) {
  const auto cfg = parse(R"(
[band_plan]
total_bw_mhz = 80
sub_bw_mhz = 20
center_ghz = 2.45
subcarrier_spacing_khz = 312.5
[channel]
delays_ns = 0, 12.5
snr_db = noiseless
distortion = on
[subset]
policy = explicit
bands = 3, 1
[splicer]
grid_factor = 2
sparsity = 3
[match]
window_samples = 2
)");
  EXPECT_FALSE(cfg.snr_db);
  EXPECT_TRUE(cfg.distortion);
  EXPECT_EQ(cfg.paths[1].avg_power_db, 0.0);
  EXPECT_EQ(cfg.subset_policy, SubsetPolicy::kExplicit);
  EXPECT_EQ(cfg.explicit_bands, (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(cfg.grid_factor, 2);
  EXPECT_EQ(cfg.sparsity, 3u);
  EXPECT_EQ(cfg.omp_tol, kDefaultOmpTol);
  EXPECT_EQ(cfg.match_window_samples, 2.0);
}

TEST(ConfigFile, Errors) {
  const std::string plan = "[band_plan]\ntotal_bw_mhz=160\nsub_bw_mhz=20\ncenter_ghz=5\n";
  EXPECT_THROW(parse(plan), ConfigError);                                        // no delays
  EXPECT_THROW(parse(plan + "[channel]\ndelays_ns=0,x\n"), ConfigError);          // bad number
  EXPECT_THROW(parse(plan + "[channel]\ndelays_ns=0\npowers_db=0,1\n"), ConfigError);
  EXPECT_THROW(parse(plan + "[channel]\ndelays_ns=0\ncolour=red\n"), ConfigError);
  EXPECT_THROW(parse(plan + "[channel]\ndelays_ns=0\n[extra]\nk=1\n"), ConfigError);
  EXPECT_THROW(parse(plan + "[channel]\ndelays_ns=0\ngain_mode=ricean\n"), ConfigError);
  EXPECT_THROW(parse("[channel]\ndelays_ns=0\n"), ConfigError);                  // no plan
  EXPECT_THROW(parse("this is not ini\n"), ConfigError);
  EXPECT_THROW(load_scenario_config("/nonexistent/dir/x.ini"), ConfigError);
}

TEST(ConfigFile, RenderParseRoundTrip) {
  auto cfg = parse(kTwoPathIni);
  cfg.subset_policy = SubsetPolicy::kExplicit;
  cfg.explicit_bands = {0, 2};
  cfg.distortion = true;
  const auto again = parse(render_scenario_config(cfg));
  EXPECT_EQ(render_scenario_config(again), render_scenario_config(cfg));
  EXPECT_EQ(again.explicit_bands, cfg.explicit_bands);
  EXPECT_EQ(again.paths.size(), cfg.paths.size());
}

TEST(ShippedConfigs, AllParseAndValidate) {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(fs::path(CHSPLICE_SOURCE_DIR) / "configs")) {
    if (entry.path().extension() != ".ini") continue;
    ++count;
    ScenarioConfig cfg;
    ASSERT_NO_THROW(cfg = load_scenario_config(entry.path())) << entry.path();
    EXPECT_NO_THROW(cfg.validate()) << entry.path();
  }
  EXPECT_GE(count, 5u);
}

TEST(TraceFile, WriteReadRoundTrip) {
  auto cfg = parse(kTwoPathIni);
  const auto report = run_scenario(cfg, RunOptions{1, true});
  CfrTrace trace;
  trace.total_bw_hz = cfg.total_bw_hz;
  trace.sub_bw_hz = cfg.sub_bw_hz;
  trace.center_hz = cfg.center_hz;
  trace.spacing_hz = cfg.spacing_hz;
  trace.sparsity = 2;
  trace.omp_tol = 0.0;
  for (const auto& p : report.packets) trace.packets.push_back(p.measurements);

  std::stringstream ss;
  write_trace(ss, trace);
  const auto text = ss.str();
  EXPECT_EQ(lines(text).front(), kTraceMagic);
  const auto back = read_trace(ss);
  ASSERT_EQ(back.packets.size(), trace.packets.size());
  EXPECT_EQ(back.sparsity, trace.sparsity);
  EXPECT_EQ(back.omp_tol, trace.omp_tol);
  EXPECT_FALSE(back.grid_factor);
  for (std::size_t p = 0; p < trace.packets.size(); ++p) {
    ASSERT_EQ(back.packets[p].size(), trace.packets[p].size());
    for (std::size_t b = 0; b < trace.packets[p].size(); ++b) {
      EXPECT_EQ(back.packets[p][b].band, trace.packets[p][b].band);
      EXPECT_EQ(back.packets[p][b].samples, trace.packets[p][b].samples);  // bit-exact
    }
  }
}

namespace {

std::string tiny_trace_header(int packets = 1) {
  // One 20 MHz band would be N = 63; use a 1.5625 MHz toy plan with N = 5.
  return std::string(kTraceMagic) +
         "\n# total_bw_hz=3125000\n# sub_bw_hz=1562500\n# center_hz=1000000000\n"
         "# subcarrier_spacing_hz=312500\n# packets=" +
         std::to_string(packets) + "\n# sparsity=1\n" + kTraceColumns + "\n";
}

std::string band_rows(int packet, int band, int skip = 99) {
  std::string out;
  for (int n = -2; n <= 2; ++n)
    if (n != skip) out += std::to_string(packet) + "," + std::to_string(band) + "," + std::to_string(n) + ",1,0\n";
  return out;
}

}  // namespace

TEST(TraceFile, ParsesMinimalTrace) {
  std::istringstream is(tiny_trace_header() + band_rows(0, 1) + band_rows(0, 0));
  const auto t = read_trace(is);
  ASSERT_EQ(t.packets.size(), 1u);
  ASSERT_EQ(t.packets[0].size(), 2u);
  EXPECT_EQ(t.packets[0][0].band, 0u);
  EXPECT_EQ(t.plan().num_subcarriers(), 5);
}

TEST(TraceFile, FormatErrors) {
  auto bad = [](const std::string& text) {
    std::istringstream is(text);
    EXPECT_THROW(read_trace(is), TraceFormatError) << text;
  };
  bad("");
  bad("# not-a-trace\n");
  bad(tiny_trace_header() + band_rows(0, 0, 1));                    // missing subcarrier row
  bad(tiny_trace_header() + band_rows(0, 0) + "0,0,1,1,0\n");      // duplicate row
  bad(tiny_trace_header() + "0,0,7,1,0\n");                         // subcarrier out of range
  bad(tiny_trace_header() + "0,0,0,abc,0\n");                       // bad number
  bad(tiny_trace_header() + "0,0,0,1\n");                           // short row
  bad(std::string(kTraceMagic) + "\n# bogus=1\n" + kTraceColumns + "\n");
}

TEST(TraceFile, GridErrors) {
  auto bad = [](const std::string& text) {
    std::istringstream is(text);
    EXPECT_THROW(read_trace(is), TraceGridError) << text;
  };
  bad(tiny_trace_header() + band_rows(1, 0));           // packet beyond header count
  bad(tiny_trace_header() + band_rows(0, 2));           // band not in plan
  bad(tiny_trace_header(2) + band_rows(0, 0));          // packet 1 has no rows
}

TEST(ReportIo, CsvHeadersMatchGoldenFiles) {
  auto cfg = parse(kTwoPathIni);
  const auto report = run_scenario(cfg);
  std::ostringstream peaks, ecdf_csv, rec;
  write_peaks_csv(peaks, report);
  write_ecdf_csv(ecdf_csv, report);
  write_recovered_csv(rec, recovered_rows(0, report.packets[0].recovered, report.stacked_length));
  const fs::path golden(CHSPLICE_GOLDEN_DIR);
  EXPECT_EQ(lines(peaks.str()).front(), first_line(golden / "peaks_header.csv"));
  EXPECT_EQ(lines(ecdf_csv.str()).front(), first_line(golden / "ecdf_header.csv"));
  EXPECT_EQ(lines(rec.str()).front(), first_line(golden / "recovered_header.csv"));
  EXPECT_EQ(first_line(golden / "cfr_trace_columns.csv"), kTraceColumns);
  // Two matched-peak rows per packet.
  EXPECT_EQ(lines(peaks.str()).size(), 1u + 2u * cfg.packets);
}

TEST(ReportIo, NoiselessRunMatchesGoldenOutputs) {
  // Deterministic, noiseless, on-grid: every value is exact and stable.
  auto cfg = parse(kTwoPathIni);
  cfg.gain_mode = GainMode::kDeterministic;
  cfg.snr_db.reset();
  cfg.packets = 2;
  const double step = 1.0 / (3.0 * 508.0 * 312.5e3);
  cfg.paths = {{0.0, 0.0}, {9 * step, -2.0}};
  const auto report = run_scenario(cfg);
  std::ostringstream peaks, ecdf_csv;
  write_peaks_csv(peaks, report);
  write_ecdf_csv(ecdf_csv, report);
  const fs::path golden(CHSPLICE_GOLDEN_DIR);
  EXPECT_EQ(peaks.str(), slurp(golden / "noiseless_peaks.csv"));
  EXPECT_EQ(ecdf_csv.str(), slurp(golden / "noiseless_ecdf.csv"));
}

TEST(ReportIo, RecoveredRowsScaleGainsToPathUnits) {
  const std::vector<RecoveredPath> paths = {{3, 1e-9, {0.0, 2.0}}};
  const auto rows = recovered_rows(4, paths, 4);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].packet, 4u);
  EXPECT_EQ(rows[0].rank, 0u);
  EXPECT_EQ(rows[0].grid_index, 3u);
  EXPECT_DOUBLE_EQ(rows[0].delay_ns, 1.0);
  EXPECT_DOUBLE_EQ(rows[0].gain_magnitude, 1.0);
  EXPECT_DOUBLE_EQ(rows[0].gain_phase_rad, kPi / 2);
}

TEST(ReportIo, JsonCarriesSchemaAndConfig) {
  const auto report = run_scenario(parse(kTwoPathIni));
  const auto j = report_to_json(report);
  EXPECT_EQ(j.at("schema"), kReportSchema);
  EXPECT_EQ(j.at("config").at("name"), "two-path");
  EXPECT_EQ(j.at("packets").size(), 3u);
}

TEST(CmdSimulate, WritesAllOutputs) {
  TempDir dir;
  const auto cfg = dir.write("s.ini", kTwoPathIni);
  std::ostringstream out, err;
  SimulateOptions opts;
  opts.config = cfg;
  opts.out_dir = dir.path() / "out";
  ASSERT_EQ(cmd_simulate(opts, out, err), kExitOk) << err.str();
  for (const char* f : {"report.json", "peaks.csv", "ecdf.csv", "recovered.csv", "manifest.json"})
    EXPECT_TRUE(fs::exists(opts.out_dir / f)) << f;
  EXPECT_FALSE(fs::exists(opts.out_dir / "cfr_trace.csv"));
  const auto manifest = Json::parse(slurp(opts.out_dir / "manifest.json"));
  EXPECT_EQ(manifest.at("master_seed"), 11u);
  EXPECT_EQ(manifest.at("version"), tool_version());
  EXPECT_EQ(manifest.at("config").at("packets"), 3u);
  EXPECT_EQ(lines(slurp(opts.out_dir / "peaks.csv")).size(), 1u + 2u * 3u);
}

TEST(CmdSimulate, MissingConfigExitsTwoWithoutOutputs) {
  TempDir dir;
  std::ostringstream out, err;
  SimulateOptions opts;
  opts.config = dir.path() / "missing.ini";
  opts.out_dir = dir.path() / "out";
  EXPECT_EQ(cmd_simulate(opts, out, err), kExitParseError);
  EXPECT_FALSE(fs::exists(opts.out_dir));
  EXPECT_NE(err.str().find("missing.ini"), std::string::npos);
}

TEST(CmdSimulate, InvalidScenarioExitsOneWithoutOutputs) {
  TempDir dir;
  std::string text = kTwoPathIni;
  text.replace(text.find("sub_bw_mhz = 40"), 15, "sub_bw_mhz = 30");
  const auto cfg = dir.write("bad.ini", text);
  std::ostringstream out, err;
  SimulateOptions opts;
  opts.config = cfg;
  opts.out_dir = dir.path() / "out";
  EXPECT_EQ(cmd_simulate(opts, out, err), kExitScenarioError);
  EXPECT_FALSE(fs::exists(opts.out_dir));
  EXPECT_FALSE(err.str().empty());
}

TEST(CmdSimulate, SeedOverrideChangesOnlyNoiseDependentFields) {
  TempDir dir;
  const auto cfg = dir.write("s.ini", kTwoPathIni);
  std::ostringstream out, err;
  SimulateOptions a;
  a.config = cfg;
  a.out_dir = dir.path() / "a";
  SimulateOptions b = a;
  b.out_dir = dir.path() / "b";
  b.seed = 12;
  ASSERT_EQ(cmd_simulate(a, out, err), kExitOk);
  ASSERT_EQ(cmd_simulate(b, out, err), kExitOk);
  auto ja = Json::parse(slurp(a.out_dir / "report.json"));
  auto jb = Json::parse(slurp(b.out_dir / "report.json"));
  EXPECT_NE(ja.at("packets"), jb.at("packets"));
  EXPECT_EQ(jb.at("config").at("seed"), 12u);
  ja["config"].erase("seed");
  jb["config"].erase("seed");
  EXPECT_EQ(ja.at("config"), jb.at("config"));
  EXPECT_EQ(ja.at("bands_used"), jb.at("bands_used"));
  EXPECT_EQ(ja.at("grid_size"), jb.at("grid_size"));
  EXPECT_EQ(first_line(a.out_dir / "peaks.csv"), first_line(b.out_dir / "peaks.csv"));
}

TEST(CmdSimulate, SameSeedByteIdenticalReports) {
  TempDir dir;
  const auto cfg = dir.write("s.ini", kTwoPathIni);
  std::ostringstream out, err;
  SimulateOptions a;
  a.config = cfg;
  a.out_dir = dir.path() / "a";
  SimulateOptions b = a;
  b.out_dir = dir.path() / "b";
  b.threads = 3;
  ASSERT_EQ(cmd_simulate(a, out, err), kExitOk);
  ASSERT_EQ(cmd_simulate(b, out, err), kExitOk);
  for (const char* f : {"report.json", "peaks.csv", "ecdf.csv", "recovered.csv"})
    EXPECT_EQ(slurp(a.out_dir / f), slurp(b.out_dir / f)) << f;
}

TEST(CmdSplice, DumpedTraceReproducesSimulateDelays) {
  for (const char* subset : {"1", "0.5"}) {
    TempDir dir;
    std::string text = kTwoPathIni;
    text += std::string("[subset]\nfraction = ") + subset + "\npolicy = lowest\n";
    const auto cfg = dir.write("s.ini", text);
    std::ostringstream out, err;
    SimulateOptions sim;
    sim.config = cfg;
    sim.out_dir = dir.path() / "sim";
    sim.dump_cfr = true;
    ASSERT_EQ(cmd_simulate(sim, out, err), kExitOk) << err.str();
    ASSERT_TRUE(fs::exists(sim.out_dir / "cfr_trace.csv"));

    SpliceOptions spl;
    spl.trace = sim.out_dir / "cfr_trace.csv";
    spl.out_dir = dir.path() / "spl";
    ASSERT_EQ(cmd_splice(spl, out, err), kExitOk) << err.str();
    EXPECT_EQ(slurp(spl.out_dir / "splice.csv"), slurp(sim.out_dir / "recovered.csv")) << subset;
    EXPECT_EQ(delay_column(spl.out_dir / "splice.csv"), delay_column(sim.out_dir / "recovered.csv"));
  }
}

TEST(CmdSplice, SingleBandTraceIsValid) {
  TempDir dir;
  const SparseChannel ch(std::vector<Path>{{0.0, {1, 0}}});
  const BandPlan plan({1e9}, 5, 312.5e3);
  CfrTrace trace;
  trace.total_bw_hz = trace.sub_bw_hz = 1562500;
  trace.center_hz = 1e9;
  trace.spacing_hz = 312500;
  trace.sparsity = 1;
  trace.packets = {{sound_band(ch, plan, 0, PilotGrid::all_ones(0, 5), NoiseModel::noiseless())}};
  std::ostringstream t;
  write_trace(t, trace);
  const auto path = dir.write("t.csv", t.str());
  std::ostringstream out, err;
  SpliceOptions spl;
  spl.trace = path;
  spl.out_dir = dir.path();
  ASSERT_EQ(cmd_splice(spl, out, err), kExitOk) << err.str();
  const auto rows = lines(slurp(dir.path() / "splice.csv"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].substr(0, 10), "0,0,0,0,1,");
}

TEST(CmdSplice, MalformedTraceExitsTwoGridErrorExitsOne) {
  TempDir dir;
  std::ostringstream out, err;
  SpliceOptions spl;
  spl.out_dir = dir.path() / "o";

  spl.trace = dir.write("missing_row.csv", tiny_trace_header() + band_rows(0, 0, 0));
  EXPECT_EQ(cmd_splice(spl, out, err), kExitParseError);
  EXPECT_NE(err.str().find("missing row for subcarrier 0"), std::string::npos) << err.str();

  spl.trace = dir.write("grid.csv", tiny_trace_header() + band_rows(0, 5));
  EXPECT_EQ(cmd_splice(spl, out, err), kExitScenarioError);

  spl.trace = dir.path() / "nope.csv";
  EXPECT_EQ(cmd_splice(spl, out, err), kExitParseError);
  EXPECT_FALSE(fs::exists(spl.out_dir));
}

TEST(CmdResolution, ReferenceValues) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_resolution({20e6, 1}, out, err), kExitOk);
  const auto single = lines(out.str());
  ASSERT_EQ(single.size(), 3u);
  EXPECT_NE(single[1].find("50"), std::string::npos);
  EXPECT_NE(single[1].find("14.9896"), std::string::npos);
  EXPECT_EQ(single[1].substr(16), single[2].substr(16));  // M = 1: both rows equal

  std::ostringstream out8;
  ASSERT_EQ(cmd_resolution({20e6, 8}, out8, err), kExitOk);
  const auto eight = lines(out8.str());
  EXPECT_NE(eight[2].find("160"), std::string::npos);
  EXPECT_NE(eight[2].find("6.25"), std::string::npos);

  EXPECT_EQ(cmd_resolution({0.0, 1}, out, err), kExitParseError);
  EXPECT_EQ(cmd_resolution({20e6, 0}, out, err), kExitParseError);
}

TEST(CliBinary, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(run_cli("--version"), 0);
  EXPECT_EQ(run_cli("resolution --band-bw-mhz 20 --bands 8"), 0);
  EXPECT_EQ(run_cli("resolution --subcarriers 64 --spacing-khz 312.5"), 0);
  EXPECT_EQ(run_cli("resolution"), kExitParseError);
  EXPECT_EQ(run_cli("bogus"), kExitParseError);
  EXPECT_EQ(run_cli("simulate --config " + (dir.path() / "none.ini").string() + " --out-dir " +
                    (dir.path() / "o").string()),
            kExitParseError);
  EXPECT_FALSE(fs::exists(dir.path() / "o"));
  const auto cfg = dir.write("s.ini", kTwoPathIni);
  EXPECT_EQ(run_cli("simulate " + cfg.string() + " --out-dir " + (dir.path() / "o").string() +
                    " --packets 2 --subset 0.5 --grid-factor 2 --dump-cfr"),
            0);
  const auto manifest = Json::parse(slurp(dir.path() / "o" / "manifest.json"));
  EXPECT_EQ(manifest.at("config").at("packets"), 2u);
  EXPECT_EQ(manifest.at("config").at("grid_factor"), 2);
  EXPECT_EQ(run_cli("splice " + (dir.path() / "o" / "cfr_trace.csv").string() + " --out-dir " +
                    (dir.path() / "o").string()),
            0);
  EXPECT_EQ(slurp(dir.path() / "o" / "splice.csv"), slurp(dir.path() / "o" / "recovered.csv"));
}
