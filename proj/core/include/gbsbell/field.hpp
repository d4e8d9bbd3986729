#pragma once

// Electric-field observables for the two-cavity entangled states: the field
// operator, closed-form mean fields and covariances for order 1 and order 2,
// and the dense-algebra oracle recomputations they are validated against.
//
// Unit convention: everything is expressed in epsilon = sqrt(pi hbar w / V),
// so the single-mode field operator at the cavity center and t = 0 is
// E = 2 epsilon (a + a†). Means carry one power of epsilon, covariances two.
//
// The closed forms below are the oracle-reconciled transcriptions; the exact
// variants that were *rejected* by the oracle are recorded in
// docs/formulas.md and reported by `gbsbell verify`.

#include "gbsbell/entangled.hpp"
#include "gbsbell/fock.hpp"

namespace gbsbell {

struct FieldUnits {
  double epsilon = 1.0;  // sqrt(pi hbar w / V)
};

// Scalar helper functions shared by the closed forms.
namespace helpers {

/// (1 - 2 p1)(1 - 2 p2)
double f(double p1, double p2);
/// 2 sqrt(p1 p2 (1 - p1)(1 - p2))
double h(double p1, double p2);
/// 4 (1 - p + sqrt(2) p)
double f_tilde(double p);
/// f_tilde(p) - eta^2 f_tilde(1 - p)
double big_f(double p, double eta);
/// f_tilde(p1) f_tilde(1 - p2)
double big_f_tilde(double p1, double p2);
/// f(p1,p2) cos(phi1) cos(phi2) + sin(phi1) sin(phi2)
double big_f_bar(double p1, double p2, double phi1, double phi2);

}  // namespace helpers

/// Hermitian single-cavity field operator 2 epsilon (a + a†); dim >= 2.
LinearOperator field_operator(int dim, const FieldUnits& units = {});

// Closed forms, order 1 (cavity index is 1 or 2):
//   <E_j> = 4 (-1)^(j-1) eps sqrt(p_j(1-p_j)) (1-eta^2)/(1+eta^2) cos(phi_j)
double mean_field_order1(int cavity, double p1, double p2, double phi1,
                         double phi2, double eta, const FieldUnits& units = {});
//   C = 8 eps^2 { eta/(1+eta^2) [f cc + ss]
//               - [1 - (1-eta^2)^2/(1+eta^2)^2] h cc }
double covariance_order1(double p1, double p2, double phi1, double phi2,
                         double eta, const FieldUnits& units = {});

// Closed forms, order 2 (oracle-reconciled):
//   <E_j> = (-1)^(j-1) eps sqrt(2 p_j(1-p_j))
//           [f_tilde(x_j) - eta^2 f_tilde(1-x_j)] / (1+eta^2) cos(phi_j),
// with x_1 = p1 and x_2 = 1 - p2. Both terms share the 1/(1+eta^2)
// normalization (a variant with 1+eta^4 in the first term fails against
// the oracle).
double mean_field_order2(int cavity, double p1, double p2, double phi1,
                         double phi2, double eta, const FieldUnits& units = {});
//   C = eps^2 h { [F(p1)F(1-p2)/(1+eta^2)^2
//                 - (Ft(p1,p2) + eta^2 Ft(p2,p1))/(1+eta^2)] cc
//               + 8 eta (3-2 sqrt(2)) / (1+eta^2) Fbar },
// with F = helpers::big_f, Ft = helpers::big_f_tilde, Fbar = helpers::big_f_bar.
// The cross term carries the sign of eta (a variant using -8|eta| holds only
// for eta <= 0 and fails against the oracle for eta > 0).
double covariance_order2(double p1, double p2, double phi1, double phi2,
                         double eta, const FieldUnits& units = {});

// Dense-algebra oracle: expectation values on the realized state vector.
double mean_field_oracle(const TwoCavityState& state, int cavity,
                         const FieldUnits& units = {});
double covariance_oracle(const TwoCavityState& state,
                         const FieldUnits& units = {});

}  // namespace gbsbell
