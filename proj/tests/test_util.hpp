#pragma once

#include <cmath>
#include <complex>
#include <random>

namespace testutil {

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool near(std::complex<double> a, std::complex<double> b, double tol) {
  return std::abs(a - b) <= tol;
}

// Deterministic generator for property-style tests.
inline std::mt19937_64 make_rng(std::uint64_t seed = 0xC0FFEEull) {
  return std::mt19937_64(seed);
}

}  // namespace testutil
