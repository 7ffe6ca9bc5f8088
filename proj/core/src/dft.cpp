#include "chsplice/dft.hpp"

#include <stdexcept>
#include <unsupported/Eigen/FFT>

namespace chsplice {
namespace {

std::size_t bin_of(std::size_t i, std::size_t n) {
  const long long k = subcarrier_index(i, n);
  const long long nn = static_cast<long long>(n);
  return static_cast<std::size_t>(((k % nn) + nn) % nn);
}

}  // namespace

CVector cir_to_cfr(std::span<const cplx> taps, std::size_t n_points) {
  if (taps.empty()) throw std::invalid_argument("cir_to_cfr: empty input");
  const std::size_t n = n_points == 0 ? taps.size() : n_points;
  if (n < taps.size()) throw std::invalid_argument("cir_to_cfr: n_points < number of taps");

  CVector padded(n, cplx{0.0, 0.0});
  std::copy(taps.begin(), taps.end(), padded.begin());
  if (n == 1) return padded;  // kissfft does not handle a length-1 plan
  CVector bins;
  Eigen::FFT<double> fft;
  fft.fwd(bins, padded);

  CVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = bins[bin_of(i, n)];
  return out;
}

CVector cfr_to_cir(std::span<const cplx> cfr) {
  if (cfr.empty()) throw std::invalid_argument("cfr_to_cir: empty input");
  const std::size_t n = cfr.size();
  if (n == 1) return CVector(cfr.begin(), cfr.end());
  CVector bins(n);
  for (std::size_t i = 0; i < n; ++i) bins[bin_of(i, n)] = cfr[i];

  CVector taps;
  Eigen::FFT<double> fft;  // inverse is scaled by 1/N
  fft.inv(taps, bins);
  return taps;
}

}  // namespace chsplice
