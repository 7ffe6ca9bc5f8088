#include "chsplice/splicer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chsplice {

StackedMeasurement stack_measurements(std::span<const CfrMeasurement> measurements,
                                      const BandPlan& plan) {
  if (measurements.empty()) throw std::invalid_argument("stack_measurements: no measurements");
  std::vector<const CfrMeasurement*> order;
  order.reserve(measurements.size());
  for (const auto& m : measurements) order.push_back(&m);
  std::stable_sort(order.begin(), order.end(),
                   [](const auto* a, const auto* b) { return a->band < b->band; });

  const auto n = static_cast<std::size_t>(plan.num_subcarriers());
  StackedMeasurement out;
  out.freqs_hz.reserve(order.size() * n);
  out.samples.reserve(order.size() * n);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& meas = *order[k];
    if (k > 0 && meas.band == order[k - 1]->band)
      throw std::invalid_argument("stack_measurements: duplicate band " + std::to_string(meas.band));
    if (meas.band >= plan.num_bands())
      throw std::invalid_argument("stack_measurements: band " + std::to_string(meas.band) +
                                  " not in plan");
    if (meas.samples.size() != n)
      throw std::invalid_argument("stack_measurements: band " + std::to_string(meas.band) +
                                  " has " + std::to_string(meas.samples.size()) +
                                  " samples, plan expects " + std::to_string(n));
    const auto freqs = subcarrier_freqs(plan, meas.band);
    if (!meas.freqs_hz.empty()) {
      if (meas.freqs_hz.size() != n)
        throw std::invalid_argument("stack_measurements: frequency/sample length mismatch");
      for (std::size_t i = 0; i < n; ++i)
        if (std::abs(meas.freqs_hz[i] - freqs[i]) > 1e-9 * std::abs(freqs[i]) + 1e-9)
          throw std::invalid_argument("stack_measurements: band " + std::to_string(meas.band) +
                                      " frequencies do not match the plan");
    }
    const std::size_t begin = out.samples.size();
    out.freqs_hz.insert(out.freqs_hz.end(), freqs.begin(), freqs.end());
    out.samples.insert(out.samples.end(), meas.samples.begin(), meas.samples.end());
    out.bands.push_back({meas.band, begin, out.samples.size()});
  }
  return out;
}

Dictionary::Dictionary(Eigen::MatrixXcd atoms, std::size_t grid_size, double spacing_hz)
    : atoms_(std::move(atoms)), grid_size_(grid_size), spacing_(spacing_hz) {
  if (static_cast<std::size_t>(atoms_.cols()) != grid_size_)
    throw std::invalid_argument("Dictionary: column count != grid size");
}

Dictionary build_dictionary(std::span<const double> freqs_hz, double spacing_hz, int grid_factor) {
  if (freqs_hz.empty()) throw std::invalid_argument("build_dictionary: empty frequency vector");
  if (grid_factor < 2)
    throw std::invalid_argument("build_dictionary: grid_factor must be >= 2 for a dense grid");
  if (!(spacing_hz > 0.0)) throw std::invalid_argument("build_dictionary: spacing must be > 0");

  const auto rows = static_cast<Eigen::Index>(freqs_hz.size());
  const std::size_t g = static_cast<std::size_t>(grid_factor) * freqs_hz.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
  const double inv_g = 1.0 / static_cast<double>(g);

  // Phase of entry (l, i) in cycles is (f_l / f_s) * i / G. Split f_l / f_s
  // into an integer part handled modulo G exactly and a fractional rest, so
  // GHz carriers do not cost phase precision.
  std::vector<long long> whole(freqs_hz.size());
  std::vector<double> rest(freqs_hz.size());
  for (std::size_t l = 0; l < freqs_hz.size(); ++l) {
    if (!std::isfinite(freqs_hz[l])) throw std::invalid_argument("build_dictionary: non-finite frequency");
    const double ratio = freqs_hz[l] / spacing_hz;
    const double w = std::round(ratio);
    whole[l] = static_cast<long long>(w);
    rest[l] = ratio - w;
  }

  const auto gg = static_cast<long long>(g);
  Eigen::MatrixXcd atoms(rows, static_cast<Eigen::Index>(g));
  for (std::size_t i = 0; i < g; ++i) {
    const auto ii = static_cast<long long>(i);
    for (Eigen::Index l = 0; l < rows; ++l) {
      const long long wrapped = ((whole[static_cast<std::size_t>(l)] % gg) * ii) % gg;
      double cycles = static_cast<double>(wrapped) * inv_g +
                      rest[static_cast<std::size_t>(l)] * static_cast<double>(i) * inv_g;
      cycles -= std::round(cycles);
      atoms(l, static_cast<Eigen::Index>(i)) = std::polar(scale, -kTwoPi * cycles);
    }
  }
  return Dictionary(std::move(atoms), g, spacing_hz);
}

cplx SpliceResult::path_gain(std::size_t k, std::size_t rows) const {
  return coefficients.at(k) / std::sqrt(static_cast<double>(rows));
}

SpliceResult omp(const StackedMeasurement& stacked, const Dictionary& dict, std::size_t sparsity,
                 double tol) {
  return omp(std::span<const cplx>(stacked.samples), dict, sparsity, tol);
}

SpliceResult omp(std::span<const cplx> y_in, const Dictionary& dict, std::size_t sparsity,
                 double tol) {
  if (sparsity < 1) throw std::invalid_argument("omp: sparsity must be >= 1");
  if (sparsity > dict.grid_size()) throw std::invalid_argument("omp: sparsity exceeds grid size");
  if (y_in.size() != dict.rows())
    throw std::invalid_argument("omp: measurement length " + std::to_string(y_in.size()) +
                                " != dictionary rows " + std::to_string(dict.rows()));
  if (tol < 0.0) throw std::invalid_argument("omp: tol must be >= 0");

  const auto& d = dict.atoms();
  const Eigen::VectorXcd y =
      Eigen::Map<const Eigen::VectorXcd>(y_in.data(), static_cast<Eigen::Index>(y_in.size()));

  SpliceResult result;
  result.measurement_norm = y.norm();
  const double stop_norm = tol * result.measurement_norm;

  std::vector<bool> selected(dict.grid_size(), false);
  Eigen::VectorXcd residual = y;
  Eigen::VectorXcd coeffs;
  double residual_norm = result.measurement_norm;

  while (result.support.size() < sparsity && residual_norm > stop_norm) {
    const Eigen::VectorXcd corr = d.adjoint() * residual;
    std::size_t best = dict.grid_size();
    double best_mag = -1.0;
    for (std::size_t i = 0; i < dict.grid_size(); ++i) {
      if (selected[i]) continue;
      const double mag = std::abs(corr(static_cast<Eigen::Index>(i)));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }

    auto trial = result.support;
    trial.push_back(best);
    Eigen::MatrixXcd sub(d.rows(), static_cast<Eigen::Index>(trial.size()));
    for (std::size_t k = 0; k < trial.size(); ++k)
      sub.col(static_cast<Eigen::Index>(k)) = d.col(static_cast<Eigen::Index>(trial[k]));

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    // A refit with more atoms than rows has a null space even if every
    // singular value the thin SVD reports is healthy.
    if (sub.cols() > sub.rows() || !(smin > 0.0) || sv(0) / smin > kIllConditionedLimit) {
      result.status = SpliceStatus::kIllConditioned;
      result.message = "least-squares system ill-conditioned after adding grid index " +
                       std::to_string(best) + "; returning " +
                       std::to_string(result.support.size()) + " atoms";
      break;
    }

    coeffs = svd.solve(y);
    residual = y - sub * coeffs;
    residual_norm = residual.norm();
    selected[best] = true;
    result.support = std::move(trial);
    result.residual_norms.push_back(residual_norm);
  }

  result.coefficients.assign(coeffs.data(), coeffs.data() + coeffs.size());
  result.delays_s.reserve(result.support.size());
  for (auto idx : result.support) result.delays_s.push_back(dict.grid_delay(idx));
  return result;
}

std::vector<RecoveredPath> support_to_delays(const SpliceResult& result, const Dictionary& dict) {
  std::vector<RecoveredPath> out;
  out.reserve(result.support.size());
  for (std::size_t k = 0; k < result.support.size(); ++k) {
    if (result.support[k] >= dict.grid_size())
      throw std::invalid_argument("support_to_delays: grid index out of range");
    out.push_back({result.support[k], dict.grid_delay(result.support[k]),
                   k < result.coefficients.size() ? result.coefficients[k] : cplx{}});
  }
  std::stable_sort(out.begin(), out.end(), [](const RecoveredPath& a, const RecoveredPath& b) {
    return a.grid_index < b.grid_index;
  });
  return out;
}

}  // namespace chsplice
