#include "gbsbell/entangled.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gbsbell {

GBSParams TwoCavityState::cavity_basis(int cavity) const {
  if (cavity == 1) return GBSParams{order, p1, phi1};
  if (cavity == 2) return GBSParams{order, p2, phi2};
  throw std::invalid_argument("cavity index must be 1 or 2");
}

TwoCavityState entangled_gbs(int order, double p1, double p2, double phi1,
                             double phi2, double eta) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("entangled_gbs: order must be 1 or 2");
  }
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
    throw std::invalid_argument("entangled_gbs: p1, p2 must lie in [0, 1]");
  }
  if (!std::isfinite(eta)) {
    throw std::invalid_argument("entangled_gbs: eta must be finite");
  }

  const double pi = std::numbers::pi;
  const int dim = order + 1;
  const StateVector t1 = tensor_product(ngbs({order, p1, phi1}, dim),
                                        ngbs({order, 1.0 - p2, pi + phi2}, dim));
  const StateVector t2 = tensor_product(ngbs({order, 1.0 - p1, pi + phi1}, dim),
                                        ngbs({order, p2, phi2}, dim));
  const double norm = 1.0 / std::sqrt(1.0 + eta * eta);
  Vector amps = norm * (t1.amplitudes() + eta * t2.amplitudes());
  StateVector state(std::move(amps), "two-cavity d=" + std::to_string(dim) + "x" +
                                         std::to_string(dim));
  return TwoCavityState{order, p1, p2, phi1, phi2, eta, std::move(state)};
}

double degree_of_entanglement(double eta) {
  if (!std::isfinite(eta)) {
    throw std::invalid_argument("degree_of_entanglement: eta must be finite");
  }
  return 2.0 * std::abs(eta) / (1.0 + eta * eta);
}

double eta_for_degree(double degree, EtaBranch branch) {
  if (!(degree >= 0.0 && degree <= 1.0)) {
    throw std::invalid_argument("eta_for_degree: degree must lie in [0, 1]");
  }
  const double root = std::sqrt(std::max(0.0, 1.0 - degree * degree));
  if (branch == EtaBranch::kAtMostOne) {
    // (1 - sqrt(1-G^2))/G rewritten to avoid cancellation near G = 0.
    return degree / (1.0 + root);
  }
  if (degree == 0.0) {
    throw std::invalid_argument("eta_for_degree: degree 0 has no finite eta on the >=1 branch");
  }
  return (1.0 + root) / degree;
}

}  // namespace gbsbell
