#pragma once

#include <complex>
#include <vector>

namespace chsplice {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

}  // namespace chsplice
