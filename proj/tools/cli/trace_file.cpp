#include "trace_file.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>

#include "number_format.hpp"

namespace chsplice::cli {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

BandPlan CfrTrace::plan() const {
  return build_band_plan(total_bw_hz, sub_bw_hz, center_hz, spacing_hz);
}

void write_trace(std::ostream& os, const CfrTrace& trace) {
  os << kTraceMagic << '\n'
     << "# total_bw_hz=" << format_double(trace.total_bw_hz) << '\n'
     << "# sub_bw_hz=" << format_double(trace.sub_bw_hz) << '\n'
     << "# center_hz=" << format_double(trace.center_hz) << '\n'
     << "# subcarrier_spacing_hz=" << format_double(trace.spacing_hz) << '\n'
     << "# packets=" << trace.packets.size() << '\n';
  if (trace.sparsity) os << "# sparsity=" << *trace.sparsity << '\n';
  if (trace.grid_factor) os << "# grid_factor=" << *trace.grid_factor << '\n';
  if (trace.omp_tol) os << "# omp_tol=" << format_double(*trace.omp_tol) << '\n';
  os << kTraceColumns << '\n';
  for (std::size_t p = 0; p < trace.packets.size(); ++p) {
    for (const auto& meas : trace.packets[p]) {
      const std::size_t n = meas.samples.size();
      for (std::size_t i = 0; i < n; ++i)
        os << p << ',' << meas.band << ',' << (static_cast<long>(i) - static_cast<long>(n / 2)) << ','
           << format_double(meas.samples[i].real()) << ',' << format_double(meas.samples[i].imag())
           << '\n';
    }
  }
}

CfrTrace read_trace(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> TraceFormatError {
    return TraceFormatError("line " + std::to_string(line_no) + ": " + msg);
  };

  if (!std::getline(is, line)) throw TraceFormatError("empty trace file");
  ++line_no;
  if (strip_cr(line) != kTraceMagic) throw fail("expected '" + std::string(kTraceMagic) + "'");

  std::map<std::string, std::string> header;
  bool have_columns = false;
  while (std::getline(is, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    if (line == kTraceColumns) {
      have_columns = true;
      break;
    }
    if (line.rfind("# ", 0) != 0) throw fail("expected header line '# key=value' or column header");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw fail("header line without '='");
    const std::string key = line.substr(2, eq - 2);
    static const std::set<std::string> known = {"total_bw_hz", "sub_bw_hz", "center_hz",
                                                "subcarrier_spacing_hz", "packets", "sparsity",
                                                "grid_factor", "omp_tol"};
    if (!known.contains(key)) throw fail("unknown header key '" + key + "'");
    if (!header.emplace(key, line.substr(eq + 1)).second) throw fail("duplicate header key '" + key + "'");
  }
  if (!have_columns) throw TraceFormatError("missing column header '" + std::string(kTraceColumns) + "'");

  auto header_double = [&](const std::string& key) {
    const auto it = header.find(key);
    if (it == header.end()) throw TraceFormatError("missing header key '" + key + "'");
    const auto v = parse_number<double>(it->second);
    if (!v) throw TraceFormatError("header key '" + key + "' is not a number");
    return *v;
  };
  auto header_count = [&](const std::string& key) -> std::optional<long long> {
    const auto it = header.find(key);
    if (it == header.end()) return std::nullopt;
    const auto v = parse_number<long long>(it->second);
    if (!v || *v < 0) throw TraceFormatError("header key '" + key + "' is not a non-negative integer");
    return v;
  };

  CfrTrace trace;
  trace.total_bw_hz = header_double("total_bw_hz");
  trace.sub_bw_hz = header_double("sub_bw_hz");
  trace.center_hz = header_double("center_hz");
  trace.spacing_hz = header_double("subcarrier_spacing_hz");
  const auto packets = header_count("packets");
  if (!packets || *packets < 1) throw TraceFormatError("header key 'packets' must be >= 1");
  if (auto k = header_count("sparsity")) trace.sparsity = static_cast<std::size_t>(*k);
  if (auto g = header_count("grid_factor")) trace.grid_factor = static_cast<int>(*g);
  if (header.contains("omp_tol")) {
    trace.omp_tol = header_double("omp_tol");
    if (*trace.omp_tol < 0.0) throw TraceFormatError("header key 'omp_tol' must be >= 0");
  }

  std::optional<BandPlan> plan;
  try {
    plan = trace.plan();
  } catch (const std::invalid_argument& e) {
    throw TraceGridError(std::string("header does not describe a valid band plan: ") + e.what());
  }
  const int n = plan->num_subcarriers();
  const int half = n / 2;

  // (packet, band) -> samples by subcarrier position, with presence flags.
  struct Cell {
    CVector samples;
    std::vector<bool> seen;
  };
  std::map<std::pair<std::size_t, std::size_t>, Cell> cells;

  while (std::getline(is, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 5) throw fail("expected 5 fields, found " + std::to_string(fields.size()));
    const auto packet = parse_number<long long>(fields[0]);
    const auto band = parse_number<long long>(fields[1]);
    const auto sub = parse_number<long long>(fields[2]);
    const auto re = parse_number<double>(fields[3]);
    const auto im = parse_number<double>(fields[4]);
    if (!packet || !band || !sub || !re || !im || *packet < 0 || *band < 0)
      throw fail("malformed row '" + line + "'");
    if (*packet >= *packets)
      throw TraceGridError("line " + std::to_string(line_no) + ": packet " + std::to_string(*packet) +
                           " beyond header packet count " + std::to_string(*packets));
    if (static_cast<std::size_t>(*band) >= plan->num_bands())
      throw TraceGridError("line " + std::to_string(line_no) + ": band " + std::to_string(*band) +
                           " not in the " + std::to_string(plan->num_bands()) + "-band plan");
    if (*sub < -half || *sub > half)
      throw fail("subcarrier " + std::to_string(*sub) + " outside [-" + std::to_string(half) + ", " +
                 std::to_string(half) + "]");

    auto& cell = cells[{static_cast<std::size_t>(*packet), static_cast<std::size_t>(*band)}];
    if (cell.samples.empty()) {
      cell.samples.assign(static_cast<std::size_t>(n), cplx{});
      cell.seen.assign(static_cast<std::size_t>(n), false);
    }
    const auto pos = static_cast<std::size_t>(*sub + half);
    if (cell.seen[pos])
      throw fail("duplicate row for packet " + std::to_string(*packet) + " band " +
                 std::to_string(*band) + " subcarrier " + std::to_string(*sub));
    cell.seen[pos] = true;
    cell.samples[pos] = {*re, *im};
  }

  trace.packets.resize(static_cast<std::size_t>(*packets));
  for (auto& [key, cell] : cells) {
    const auto [p, m] = key;
    for (std::size_t i = 0; i < cell.seen.size(); ++i)
      if (!cell.seen[i])
        throw TraceFormatError("packet " + std::to_string(p) + " band " + std::to_string(m) +
                               ": missing row for subcarrier " +
                               std::to_string(static_cast<long>(i) - half));
    trace.packets[p].push_back(CfrMeasurement{m, subcarrier_freqs(*plan, m), std::move(cell.samples), kClean});
  }
  for (std::size_t p = 0; p < trace.packets.size(); ++p)
    if (trace.packets[p].empty())
      throw TraceGridError("packet " + std::to_string(p) + " has no rows (header declares " +
                           std::to_string(*packets) + " packets)");
  return trace;
}

}  // namespace chsplice::cli
