#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chsplice/ofdm_link.hpp"
#include "chsplice/types.hpp"

namespace chsplice {

/// Half-open index range [begin, end) of one band inside the stacked vector.
struct BandRange {
  std::size_t band = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Band-major concatenation of per-band CFR samples and their frequencies.
struct StackedMeasurement {
  std::vector<double> freqs_hz;
  CVector samples;
  std::vector<BandRange> bands;

  std::size_t size() const noexcept { return samples.size(); }
};

/// Concatenates measurements in ascending band order. Any subset of the
/// plan's bands may be present. Throws std::invalid_argument on duplicate
/// bands, bands outside the plan, wrong lengths, or frequencies that do not
/// match the plan.
StackedMeasurement stack_measurements(std::span<const CfrMeasurement> measurements,
                                      const BandPlan& plan);

/// Delay-grid dictionary over a stacked frequency vector. Column i is the
/// unit-norm steering vector of delay i / (G f_s):
///   d(i)_l = exp(-j 2 pi f_l (i/G) / f_s) / sqrt(L),  L = number of freqs.
class Dictionary {
 public:
  Dictionary(Eigen::MatrixXcd atoms, std::size_t grid_size, double spacing_hz);

  const Eigen::MatrixXcd& atoms() const noexcept { return atoms_; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(atoms_.rows()); }
  std::size_t grid_size() const noexcept { return grid_size_; }
  double spacing_hz() const noexcept { return spacing_; }
  double grid_step_s() const noexcept { return 1.0 / (static_cast<double>(grid_size_) * spacing_); }
  double grid_delay(std::size_t i) const noexcept {
    return static_cast<double>(i) * grid_step_s();
  }

 private:
  Eigen::MatrixXcd atoms_;
  std::size_t grid_size_;
  double spacing_;
};

inline constexpr int kDefaultGridFactor = 3;

/// G = grid_factor * freqs.size(). Throws std::invalid_argument for
/// grid_factor < 2 (grid no denser than the measurement) or empty freqs.
Dictionary build_dictionary(std::span<const double> freqs_hz, double spacing_hz,
                            int grid_factor = kDefaultGridFactor);

enum class SpliceStatus { kOk, kIllConditioned };

struct SpliceResult {
  std::vector<std::size_t> support;   // grid indices, in selection order
  std::vector<double> delays_s;       // grid delay of each support entry
  CVector coefficients;               // entries of the sparse grid vector
  std::vector<double> residual_norms; // after each accepted iteration
  double measurement_norm = 0.0;
  SpliceStatus status = SpliceStatus::kOk;
  std::string message;

  /// Coefficient divided by the atom normalisation, i.e. the path gain c_k.
  cplx path_gain(std::size_t k, std::size_t rows) const;
};

inline constexpr double kIllConditionedLimit = 1e12;

/// Default relative residual stopping tolerance. Pass 0 to stop purely on sparsity.
inline constexpr double kDefaultOmpTol = 1e-6;

/// Orthogonal matching pursuit. Each iteration picks the unselected column
/// with the largest |<d(i), r>| (lowest index on ties), refits all selected
/// coefficients by least squares and updates the residual. Stops after
/// `sparsity` picks or once ||r|| <= tol * ||y||. If a pick would make the
/// least-squares system worse conditioned than 1e12, that pick is dropped
/// and the result is returned with status kIllConditioned.
SpliceResult omp(const StackedMeasurement& stacked, const Dictionary& dict, std::size_t sparsity,
                 double tol = kDefaultOmpTol);

/// Overload on a raw measurement vector.
SpliceResult omp(std::span<const cplx> y, const Dictionary& dict, std::size_t sparsity,
                 double tol = kDefaultOmpTol);

struct RecoveredPath {
  std::size_t grid_index = 0;
  double delay_s = 0.0;
  cplx coefficient;
};

/// Support mapped to delays i / (G f_s), sorted by ascending delay, each
/// paired with its coefficient.
std::vector<RecoveredPath> support_to_delays(const SpliceResult& result, const Dictionary& dict);

}  // namespace chsplice
