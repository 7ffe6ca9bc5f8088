#include <gtest/gtest.h>

#include <random>

#include "chsplice/channel_model.hpp"
#include "chsplice/dft.hpp"
#include "oracles/oracles.hpp"

using namespace chsplice;

namespace {

CVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> n01;
  CVector v(n);
  for (auto& x : v) x = {n01(rng), n01(rng)};
  return v;
}

double max_abs_diff(const CVector& a, const CVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Dft, SubcarrierIndexOrdering) {
  static_assert(subcarrier_index(0, 63) == -31);
  static_assert(subcarrier_index(31, 63) == 0);
  static_assert(subcarrier_index(62, 63) == 31);
  static_assert(subcarrier_index(0, 1) == 0);
}

TEST(Dft, ImpulseGivesFlatCfr) {
  CVector taps(63, 0.0);
  taps[0] = 1.0;
  for (const auto& h : cir_to_cfr(taps)) EXPECT_NEAR(std::abs(h - cplx(1.0, 0.0)), 0.0, 1e-15);
}

TEST(Dft, MatchesDirectDftOracle) {
  std::mt19937_64 rng(17);
  for (std::size_t n : {1u, 3u, 7u, 63u, 127u, 255u}) {
    const auto h = random_vector(rng, n);
    const auto got = cir_to_cfr(h);
    const auto want = oracle::direct_cfr(h, n);
    EXPECT_LT(max_abs_diff(got, want), 1e-10 * static_cast<double>(n)) << "N=" << n;
    const auto back = cfr_to_cir(want);
    EXPECT_LT(max_abs_diff(back, oracle::direct_cir(want)), 1e-10 * static_cast<double>(n)) << "N=" << n;
  }
}

TEST(Dft, ZeroPaddingMatchesOracle) {
  std::mt19937_64 rng(18);
  const auto taps = random_vector(rng, 5);
  const auto got = cir_to_cfr(taps, 31);
  ASSERT_EQ(got.size(), 31u);
  EXPECT_LT(max_abs_diff(got, oracle::direct_cfr(taps, 31)), 1e-12);
}

TEST(Dft, RoundTripWithin1e12) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 * (trial % 20) + 1 + (trial % 3 == 0 ? 62 : 0);
    const auto h = random_vector(rng, n);
    EXPECT_LT(max_abs_diff(cfr_to_cir(cir_to_cfr(h)), h), 1e-12);
    EXPECT_LT(max_abs_diff(cir_to_cfr(cfr_to_cir(h)), h), 1e-12);
  }
}

TEST(Dft, Parseval) {
  std::mt19937_64 rng(20);
  for (std::size_t n : {63u, 127u, 511u}) {
    const auto h = random_vector(rng, n);
    const auto big_h = cir_to_cfr(h);
    double eh = 0.0, eH = 0.0;
    for (const auto& v : h) eh += std::norm(v);
    for (const auto& v : big_h) eH += std::norm(v);
    EXPECT_NEAR(eh, eH / static_cast<double>(n), 1e-9 * eh);
  }
}

TEST(Dft, TwoTapCfrMatchesSynthCfrOnGrid) {
  // A tap at sample l of an N-point CIR is a path at delay l / (N f_s).
  const std::size_t n = 63;
  const double fs = 312.5e3;
  CVector taps(n, 0.0);
  taps[0] = {1.0, 0.0};
  taps[5] = {0.25, -0.5};
  const SparseChannel ch(std::vector<Path>{{0.0, taps[0]}, {5.0 / (n * fs), taps[5]}});
  std::vector<double> freqs(n);
  for (std::size_t i = 0; i < n; ++i) freqs[i] = subcarrier_index(i, n) * fs;
  EXPECT_LT(max_abs_diff(cir_to_cfr(taps), synth_cfr(ch, freqs)), 1e-12);
}

TEST(Dft, RejectsEmptyAndShortPadding) {
  EXPECT_THROW(cir_to_cfr(CVector{}), std::invalid_argument);
  EXPECT_THROW(cfr_to_cir(CVector{}), std::invalid_argument);
  EXPECT_THROW(cir_to_cfr(CVector(4), 3), std::invalid_argument);
}
