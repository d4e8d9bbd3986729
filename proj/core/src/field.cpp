#include "gbsbell/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gbsbell {

namespace helpers {

double f(double p1, double p2) { return (1.0 - 2.0 * p1) * (1.0 - 2.0 * p2); }

double h(double p1, double p2) {
  return 2.0 * std::sqrt(p1 * p2 * (1.0 - p1) * (1.0 - p2));
}

double f_tilde(double p) { return 4.0 * (1.0 - p + std::numbers::sqrt2 * p); }

double big_f(double p, double eta) {
  return f_tilde(p) - eta * eta * f_tilde(1.0 - p);
}

double big_f_tilde(double p1, double p2) { return f_tilde(p1) * f_tilde(1.0 - p2); }

double big_f_bar(double p1, double p2, double phi1, double phi2) {
  return f(p1, p2) * std::cos(phi1) * std::cos(phi2) +
         std::sin(phi1) * std::sin(phi2);
}

}  // namespace helpers

namespace {

void validate_cavity(int cavity) {
  if (cavity != 1 && cavity != 2) {
    throw std::invalid_argument("cavity index must be 1 or 2");
  }
}

void validate_params(double p1, double p2, double eta) {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
    throw std::invalid_argument("p1, p2 must lie in [0, 1]");
  }
  if (!std::isfinite(eta)) throw std::invalid_argument("eta must be finite");
}

}  // namespace

LinearOperator field_operator(int dim, const FieldUnits& units) {
  if (dim < 2) throw std::invalid_argument("field_operator: dim must be >= 2");
  if (!(units.epsilon > 0.0)) {
    throw std::invalid_argument("field_operator: epsilon must be positive");
  }
  const Matrix a = annihilation_op(dim).entries();
  return LinearOperator(2.0 * units.epsilon * (a + a.adjoint().eval()),
                        /*hermitian=*/true);
}

double mean_field_order1(int cavity, double p1, double p2, double phi1,
                         double phi2, double eta, const FieldUnits& units) {
  validate_cavity(cavity);
  validate_params(p1, p2, eta);
  const double pj = cavity == 1 ? p1 : p2;
  const double phij = cavity == 1 ? phi1 : phi2;
  const double sign = cavity == 1 ? 1.0 : -1.0;
  return 4.0 * sign * units.epsilon * std::sqrt(pj * (1.0 - pj)) *
         (1.0 - eta * eta) / (1.0 + eta * eta) * std::cos(phij);
}

double covariance_order1(double p1, double p2, double phi1, double phi2,
                         double eta, const FieldUnits& units) {
  validate_params(p1, p2, eta);
  const double n2 = 1.0 + eta * eta;
  const double ratio = (1.0 - eta * eta) / n2;
  const double cross =
      eta / n2 * (helpers::f(p1, p2) * std::cos(phi1) * std::cos(phi2) +
                  std::sin(phi1) * std::sin(phi2));
  const double diag = (1.0 - ratio * ratio) * helpers::h(p1, p2) *
                      std::cos(phi1) * std::cos(phi2);
  return 8.0 * units.epsilon * units.epsilon * (cross - diag);
}

double mean_field_order2(int cavity, double p1, double p2, double phi1,
                         double phi2, double eta, const FieldUnits& units) {
  validate_cavity(cavity);
  validate_params(p1, p2, eta);
  const double pj = cavity == 1 ? p1 : p2;
  const double phij = cavity == 1 ? phi1 : phi2;
  const double xj = cavity == 1 ? p1 : 1.0 - p2;
  const double sign = cavity == 1 ? 1.0 : -1.0;
  return sign * units.epsilon * std::sqrt(2.0 * pj * (1.0 - pj)) *
         helpers::big_f(xj, eta) / (1.0 + eta * eta) * std::cos(phij);
}

double covariance_order2(double p1, double p2, double phi1, double phi2,
                         double eta, const FieldUnits& units) {
  validate_params(p1, p2, eta);
  const double n2 = 1.0 + eta * eta;
  const double cc = std::cos(phi1) * std::cos(phi2);
  const double diag =
      (helpers::big_f(p1, eta) * helpers::big_f(1.0 - p2, eta) / (n2 * n2) -
       (helpers::big_f_tilde(p1, p2) + eta * eta * helpers::big_f_tilde(p2, p1)) / n2) *
      cc;
  const double cross = 8.0 * eta * (3.0 - 2.0 * std::numbers::sqrt2) / n2 *
                       helpers::big_f_bar(p1, p2, phi1, phi2);
  return units.epsilon * units.epsilon * helpers::h(p1, p2) * (diag + cross);
}

double mean_field_oracle(const TwoCavityState& state, int cavity,
                         const FieldUnits& units) {
  validate_cavity(cavity);
  const int d = state.order + 1;
  const LinearOperator e = field_operator(d, units);
  const LinearOperator id = identity_op(d);
  const LinearOperator ej =
      cavity == 1 ? tensor_product(e, id) : tensor_product(id, e);
  return expectation(state.state, ej).real();
}

double covariance_oracle(const TwoCavityState& state, const FieldUnits& units) {
  const int d = state.order + 1;
  const LinearOperator e = field_operator(d, units);
  const LinearOperator id = identity_op(d);
  const double e1 = expectation(state.state, tensor_product(e, id)).real();
  const double e2 = expectation(state.state, tensor_product(id, e)).real();
  const double e12 = expectation(state.state, tensor_product(e, e)).real();
  return e12 - e1 * e2;
}

}  // namespace gbsbell
