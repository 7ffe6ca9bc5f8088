#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace chsplice::cli;

  CLI::App app{"chsplice: multi-band OFDM channel splicing toolkit"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  SimulateOptions sim;
  std::string sim_config, sim_out = ".";
  auto* simulate = app.add_subcommand("simulate", "Run a scenario file and write reports");
  simulate->add_option("--config,config", sim_config, "Scenario file (INI)")->required();
  simulate->add_option("--out-dir", sim_out, "Output directory");
  simulate->add_option("--seed", sim.seed, "Override the master seed");
  simulate->add_option("--subset", sim.subset_fraction, "Override the sub-band fraction in (0, 1]");
  simulate->add_option("--grid-factor", sim.grid_factor, "Override the dictionary grid factor (G / MN)");
  simulate->add_option("--packets", sim.packets, "Override the packet count");
  simulate->add_flag("--dump-cfr", sim.dump_cfr, "Also write the per-band CFR estimates as cfr_trace.csv");
  simulate->add_option("--threads", sim.threads, "Worker threads for packets")
      ->default_val(std::max(1u, std::thread::hardware_concurrency()));

  SpliceOptions spl;
  std::string spl_trace, spl_out = ".";
  auto* splice = app.add_subcommand("splice", "Splice a CFR trace file");
  splice->add_option("--trace,trace", spl_trace, "CFR trace file")->required();
  splice->add_option("--out-dir", spl_out, "Output directory");
  splice->add_option("--sparsity", spl.sparsity, "Number of paths to recover (default: trace header)");
  splice->add_option("--grid-factor", spl.grid_factor, "Dictionary grid factor (default: trace header, else 3)");
  splice->add_option("--tol", spl.tol, "Relative residual stopping tolerance; 0 stops on sparsity only (default: trace header, else 1e-6)");

  ResolutionOptions res;
  double band_bw_mhz = 0.0, spacing_khz = 312.5;
  int subcarriers = 0;
  auto* resolution = app.add_subcommand("resolution", "Print single-band and spliced delay resolution");
  auto* bw_opt = resolution->add_option("--band-bw-mhz", band_bw_mhz, "Sub-band width N*f_s in MHz");
  auto* n_opt = resolution->add_option("--subcarriers", subcarriers, "Subcarriers per band N");
  resolution->add_option("--spacing-khz", spacing_khz, "Subcarrier spacing in kHz")->default_val(312.5);
  resolution->add_option("--bands", res.bands, "Number of spliced bands M")->default_val(1);
  bw_opt->excludes(n_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParseError;
  }

  if (*simulate) {
    sim.config = sim_config;
    sim.out_dir = sim_out;
    return cmd_simulate(sim, std::cout, std::cerr);
  }
  if (*splice) {
    spl.trace = spl_trace;
    spl.out_dir = spl_out;
    return cmd_splice(spl, std::cout, std::cerr);
  }
  if (*resolution) {
    if (*bw_opt) res.band_bw_hz = band_bw_mhz * 1e6;
    else if (*n_opt) res.band_bw_hz = subcarriers * spacing_khz * 1e3;
    else {
      std::cerr << "error: give --band-bw-mhz or --subcarriers\n";
      return kExitParseError;
    }
    return cmd_resolution(res, std::cout, std::cerr);
  }
  return kExitParseError;
}
