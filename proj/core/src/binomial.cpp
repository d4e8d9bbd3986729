#include "gbsbell/binomial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gbsbell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

void validate(const GBSParams& params) {
  if (params.max_photons < 0) {
    throw std::invalid_argument("GBSParams: max_photons must be >= 0");
  }
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    throw std::invalid_argument("GBSParams: p must lie in [0, 1]");
  }
}

}  // namespace

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

StateVector ngbs(const GBSParams& params, int dim) {
  validate(params);
  const int n_max = params.max_photons;
  if (dim < n_max + 1) {
    throw std::invalid_argument("ngbs: dim must be >= max_photons + 1");
  }
  Vector amps = Vector::Zero(dim);
  for (int n = 0; n <= n_max; ++n) {
    const double w = binomial_coefficient(n_max, n) * std::pow(params.p, n) *
                     std::pow(1.0 - params.p, n_max - n);
    amps(n) = std::sqrt(w) * std::polar(1.0, n * params.phi);
  }
  return StateVector(std::move(amps), "single-cavity d=" + std::to_string(dim));
}

StateVector ngbs(const GBSParams& params) { return ngbs(params, params.max_photons + 1); }

GBSParams orthogonal_partner(const GBSParams& params) {
  validate(params);
  return GBSParams{params.max_photons, 1.0 - params.p,
                   wrap_phase(params.phi + std::numbers::pi)};
}

StateVector coherent_state(double alpha_sq, double phi, int dim) {
  if (alpha_sq < 0.0) throw std::invalid_argument("coherent_state: alpha_sq must be >= 0");
  if (dim < 1) throw std::invalid_argument("coherent_state: dim must be >= 1");
  const Complex alpha = std::sqrt(alpha_sq) * std::polar(1.0, phi);
  Vector amps(dim);
  Complex c = std::exp(-alpha_sq / 2.0);
  double mass = 0.0;
  for (int n = 0; n < dim; ++n) {
    amps(n) = c;
    mass += std::norm(c);
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  const double tail = 1.0 - mass;
  if (tail > 1e-8) {
    throw std::invalid_argument("coherent_state: tail mass beyond cutoff is " +
                                std::to_string(tail) + " (> 1e-8); increase dim");
  }
  return StateVector(std::move(amps), "single-cavity d=" + std::to_string(dim));
}

double coherent_overlap(double alpha_sq, double phi, int max_photons, int dim) {
  if (max_photons < 1) {
    throw std::invalid_argument("coherent_overlap: max_photons must be >= 1");
  }
  if (dim < max_photons + 1) {
    throw std::invalid_argument("coherent_overlap: dim must be >= max_photons + 1");
  }
  const StateVector coh = coherent_state(alpha_sq, phi, dim);
  const StateVector gbs =
      ngbs(GBSParams{max_photons, alpha_sq / max_photons, phi}, dim);
  return std::norm(inner_product(coh, gbs));
}

}  // namespace gbsbell
