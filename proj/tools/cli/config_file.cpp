#include "config_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "number_format.hpp"

namespace chsplice::cli {
namespace {

namespace pt = boost::property_tree;

constexpr double kDefaultSnrDb = 30.0;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"scenario", {"name", "packets", "seed"}},
      {"band_plan", {"total_bw_mhz", "sub_bw_mhz", "center_ghz", "subcarrier_spacing_khz"}},
      {"channel", {"delays_ns", "powers_db", "gain_mode", "snr_db", "distortion"}},
      {"subset", {"fraction", "policy", "bands"}},
      {"splicer", {"grid_factor", "sparsity", "tol"}},
      {"match", {"window_samples"}},
  };
  return keys;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> raw(const std::string& section, const std::string& key) const {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    const auto value = sec->get_optional<std::string>(key);
    if (!value) return std::nullopt;
    return trim(*value);
  }

  template <typename T>
  std::optional<T> number(const std::string& section, const std::string& key) const {
    const auto text = raw(section, key);
    if (!text) return std::nullopt;
    const auto v = parse_number<T>(*text);
    if (!v) throw ConfigError(where(section, key) + ": not a valid number: '" + *text + "'");
    return v;
  }

  template <typename T>
  T required(const std::string& section, const std::string& key) const {
    const auto v = number<T>(section, key);
    if (!v) throw ConfigError(where(section, key) + ": required key missing");
    return *v;
  }

  template <typename T>
  std::vector<T> list(const std::string& section, const std::string& key) const {
    std::vector<T> out;
    const auto text = raw(section, key);
    if (!text) return out;
    std::stringstream ss(*text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto v = parse_number<T>(item);
      if (!v) throw ConfigError(where(section, key) + ": bad list element '" + trim(item) + "'");
      out.push_back(*v);
    }
    return out;
  }

  static std::string where(const std::string& section, const std::string& key) {
    return "[" + section + "] " + key;
  }

 private:
  const pt::ptree& tree_;
};

ScenarioConfig from_tree(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) {
      if (body.empty()) throw ConfigError("key '" + section + "' outside of any section");
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body)
      if (!it->second.contains(key)) throw ConfigError("unknown key " + Reader::where(section, key));
  }

  const Reader r(tree);
  ScenarioConfig cfg;
  if (auto name = r.raw("scenario", "name")) cfg.name = *name;
  if (auto packets = r.number<long long>("scenario", "packets")) {
    if (*packets < 1) throw ConfigError("[scenario] packets: must be >= 1");
    cfg.packets = static_cast<std::size_t>(*packets);
  }
  if (auto seed = r.number<std::uint64_t>("scenario", "seed")) cfg.seed = *seed;

  cfg.total_bw_hz = r.required<double>("band_plan", "total_bw_mhz") * 1e6;
  cfg.sub_bw_hz = r.required<double>("band_plan", "sub_bw_mhz") * 1e6;
  cfg.center_hz = r.required<double>("band_plan", "center_ghz") * 1e9;
  if (auto fs = r.number<double>("band_plan", "subcarrier_spacing_khz")) cfg.spacing_hz = *fs * 1e3;

  const auto delays = r.list<double>("channel", "delays_ns");
  if (delays.empty()) throw ConfigError("[channel] delays_ns: at least one delay is required");
  auto powers = r.list<double>("channel", "powers_db");
  if (powers.empty()) powers.assign(delays.size(), 0.0);
  if (powers.size() != delays.size())
    throw ConfigError("[channel] powers_db: expected " + std::to_string(delays.size()) +
                      " values to match delays_ns");
  for (std::size_t k = 0; k < delays.size(); ++k)
    cfg.paths.push_back({delays[k] / 1e9, powers[k], GainMode::kDeterministic});

  if (auto mode = r.raw("channel", "gain_mode")) {
    const auto m = lower(*mode);
    if (m == "deterministic") cfg.gain_mode = GainMode::kDeterministic;
    else if (m == "rayleigh") cfg.gain_mode = GainMode::kRayleigh;
    else throw ConfigError("[channel] gain_mode: expected deterministic|rayleigh, got '" + *mode + "'");
  }
  cfg.snr_db = kDefaultSnrDb;
  if (auto snr = r.raw("channel", "snr_db")) {
    if (lower(*snr) == "noiseless") cfg.snr_db.reset();
    else cfg.snr_db = r.number<double>("channel", "snr_db");
  }
  if (auto dist = r.raw("channel", "distortion")) {
    const auto d = lower(*dist);
    if (d == "true" || d == "on" || d == "1") cfg.distortion = true;
    else if (d == "false" || d == "off" || d == "0") cfg.distortion = false;
    else throw ConfigError("[channel] distortion: expected true|false, got '" + *dist + "'");
  }

  if (auto frac = r.number<double>("subset", "fraction")) cfg.subset_fraction = *frac;
  if (auto policy = r.raw("subset", "policy")) {
    const auto p = lower(*policy);
    if (p == "alternating") cfg.subset_policy = SubsetPolicy::kAlternating;
    else if (p == "lowest") cfg.subset_policy = SubsetPolicy::kLowest;
    else if (p == "explicit") cfg.subset_policy = SubsetPolicy::kExplicit;
    else throw ConfigError("[subset] policy: expected alternating|lowest|explicit, got '" + *policy + "'");
  }
  for (auto b : r.list<long long>("subset", "bands")) {
    if (b < 0) throw ConfigError("[subset] bands: band indices are 0-based and non-negative");
    cfg.explicit_bands.push_back(static_cast<std::size_t>(b));
  }

  if (auto g = r.number<int>("splicer", "grid_factor")) cfg.grid_factor = *g;
  if (auto k = r.number<long long>("splicer", "sparsity")) {
    if (*k < 0) throw ConfigError("[splicer] sparsity: must be >= 0");
    cfg.sparsity = static_cast<std::size_t>(*k);
  }
  if (auto tol = r.number<double>("splicer", "tol")) cfg.omp_tol = *tol;
  if (auto w = r.number<double>("match", "window_samples")) cfg.match_window_samples = *w;
  return cfg;
}

}  // namespace

std::string to_string(GainMode mode) {
  return mode == GainMode::kRayleigh ? "rayleigh" : "deterministic";
}

std::string to_string(SubsetPolicy policy) {
  switch (policy) {
    case SubsetPolicy::kLowest: return "lowest";
    case SubsetPolicy::kExplicit: return "explicit";
    case SubsetPolicy::kAlternating: break;
  }
  return "alternating";
}

ScenarioConfig parse_scenario_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  return from_tree(tree);
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  try {
    return parse_scenario_config(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string render_scenario_config(const ScenarioConfig& cfg) {
  auto join = [](const auto& values, auto&& fmt) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ", ";
      out += fmt(values[i]);
    }
    return out;
  };

  std::ostringstream os;
  os << "[scenario]\n"
     << "name = " << cfg.name << "\n"
     << "packets = " << cfg.packets << "\n"
     << "seed = " << cfg.seed << "\n\n"
     << "[band_plan]\n"
     << "total_bw_mhz = " << format_double(cfg.total_bw_hz / 1e6) << "\n"
     << "sub_bw_mhz = " << format_double(cfg.sub_bw_hz / 1e6) << "\n"
     << "center_ghz = " << format_double(cfg.center_hz / 1e9) << "\n"
     << "subcarrier_spacing_khz = " << format_double(cfg.spacing_hz / 1e3) << "\n\n"
     << "[channel]\n"
     << "delays_ns = " << join(cfg.paths, [](const PathSpec& p) { return format_double(p.delay_s * 1e9); }) << "\n"
     << "powers_db = " << join(cfg.paths, [](const PathSpec& p) { return format_double(p.avg_power_db); }) << "\n"
     << "gain_mode = " << to_string(cfg.gain_mode) << "\n"
     << "snr_db = " << (cfg.snr_db ? format_double(*cfg.snr_db) : std::string("noiseless")) << "\n"
     << "distortion = " << (cfg.distortion ? "true" : "false") << "\n\n"
     << "[subset]\n"
     << "fraction = " << format_double(cfg.subset_fraction) << "\n"
     << "policy = " << to_string(cfg.subset_policy) << "\n";
  if (!cfg.explicit_bands.empty())
    os << "bands = " << join(cfg.explicit_bands, [](std::size_t b) { return std::to_string(b); }) << "\n";
  os << "\n[splicer]\n"
     << "grid_factor = " << cfg.grid_factor << "\n"
     << "sparsity = " << cfg.sparsity << "\n"
     << "tol = " << format_double(cfg.omp_tol) << "\n\n"
     << "[match]\n"
     << "window_samples = " << format_double(cfg.match_window_samples) << "\n";
  return os.str();
}

}  // namespace chsplice::cli
