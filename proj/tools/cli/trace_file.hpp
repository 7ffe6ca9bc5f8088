#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chsplice/ofdm_link.hpp"

namespace chsplice::cli {

// CFR trace files carry per-packet, per-band CFR estimates as CSV:
//
//   # chsplice-cfr-trace v1
//   # total_bw_hz=160000000
//   # sub_bw_hz=20000000
//   # center_hz=5000000000
//   # subcarrier_spacing_hz=312500
//   # packets=20
//   # sparsity=2            (optional)
//   # grid_factor=3         (optional)
//   # omp_tol=0             (optional)
//   packet,band,subcarrier,real,imag
//   0,0,-31,0.98,0.01
//   ...
//
// Bands are 0-based indices into the plan rebuilt from the header; subcarrier
// is the signed index n. Every (packet, band) that appears must list all N
// subcarriers. Full description in docs/file_formats.md.

inline constexpr const char* kTraceMagic = "# chsplice-cfr-trace v1";
inline constexpr const char* kTraceColumns = "packet,band,subcarrier,real,imag";

/// Malformed trace: bad syntax, bad numbers, missing or duplicate rows. Exit 2.
class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed rows that do not fit the header's grid. Exit 1.
class TraceGridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CfrTrace {
  double total_bw_hz = 0.0;
  double sub_bw_hz = 0.0;
  double center_hz = 0.0;
  double spacing_hz = 0.0;
  std::optional<std::size_t> sparsity;
  std::optional<int> grid_factor;
  std::optional<double> omp_tol;
  /// packets[p] holds the bands measured in packet p, ascending band order.
  std::vector<std::vector<CfrMeasurement>> packets;

  BandPlan plan() const;
};

void write_trace(std::ostream& os, const CfrTrace& trace);
CfrTrace read_trace(std::istream& is);

}  // namespace chsplice::cli
