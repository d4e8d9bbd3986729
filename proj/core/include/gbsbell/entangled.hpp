#pragma once

// Two-cavity entangled generalized binomial states
//
//   |Psi> = N [ |n,p1,phi1>_1 |n,1-p2,pi+phi2>_2
//             + eta |n,1-p1,pi+phi1>_1 |n,p2,phi2>_2 ],   N = 1/sqrt(1+eta^2),
//
// for order n in {1, 2}. The two local factors in each cavity are exact
// orthogonal partners, so the two terms are orthonormal and eta alone sets
// the degree of entanglement G = 2|eta| / (1 + eta^2).

#include "gbsbell/binomial.hpp"
#include "gbsbell/fock.hpp"

namespace gbsbell {

struct TwoCavityState {
  int order;  // photons per cavity, 1 or 2
  double p1, p2;
  double phi1, phi2;
  double eta;  // real relative amplitude of the second term
  StateVector state;  // dim (order+1)^2, cavity 1 is the slow index

  bool is_product_state() const { return eta == 0.0; }
  GBSParams cavity_basis(int cavity) const;  // (order, p_j, phi_j)
};

TwoCavityState entangled_gbs(int order, double p1, double p2, double phi1,
                             double phi2, double eta);

/// G = 2|eta| / (1 + eta^2), in [0, 1]; invariant under eta -> 1/eta.
double degree_of_entanglement(double eta);

enum class EtaBranch { kAtMostOne, kAtLeastOne };

/// Inverse of degree_of_entanglement on the requested branch. The kAtMostOne
/// branch maps G = 0 to eta = 0; the kAtLeastOne branch rejects G = 0.
double eta_for_degree(double degree, EtaBranch branch);

}  // namespace gbsbell
