#pragma once

#include <span>

#include "chsplice/types.hpp"

namespace chsplice {

// CFR vectors are stored in subcarrier order: element i holds subcarrier
// n_i = i - floor(N/2), i.e. {-(N-1)/2, ..., (N-1)/2} for odd N.
//
// The transform pair is
//   H[n] = sum_l h[l] exp(-j 2 pi n l / N)
//   h[l] = (1/N) sum_n H[n] exp(+j 2 pi n l / N)
// so that sum_l |h[l]|^2 equals the mean of |H[n]|^2 (Parseval), and a tap at
// sample l corresponds to a delay of l / (N f_s).

/// Subcarrier index for position i of an N-point CFR vector.
constexpr int subcarrier_index(std::size_t i, std::size_t n) noexcept {
  return static_cast<int>(i) - static_cast<int>(n / 2);
}

/// N-point CFR from CIR taps. `n_points` defaults to taps.size(); taps are
/// zero-padded when it is larger. Throws on empty input or n_points < taps.size().
CVector cir_to_cfr(std::span<const cplx> taps, std::size_t n_points = 0);

/// N-point CIR taps from a CFR in subcarrier order. Throws on empty input.
CVector cfr_to_cir(std::span<const cplx> cfr);

}  // namespace chsplice
