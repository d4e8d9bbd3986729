#pragma once

// Generalized binomial states of a single cavity mode and their exactly
// orthogonal partners. A state |N,p,phi> has amplitudes
//   c_n = [C(N,n) p^n (1-p)^(N-n)]^(1/2) e^(i n phi),  n = 0..N,
// so the photon-number distribution is Binomial(N, p). It reduces to |0>
// at p = 0, to e^(iN phi)|N> at p = 1, and approaches the coherent state
// with |alpha|^2 = N p as N grows at fixed N p.

#include "gbsbell/fock.hpp"

namespace gbsbell {

struct GBSParams {
  int max_photons = 1;  // N
  double p = 0.5;       // single-photon occurrence probability, in [0, 1]
  double phi = 0.0;     // mean phase, radians
};

/// C(n, k) computed by floating-point products (exact for n <= 50).
double binomial_coefficient(int n, int k);

/// Normalized generalized binomial state on a space of dimension dim >= N+1.
StateVector ngbs(const GBSParams& params, int dim);
/// Same, with dim = N+1 (no truncation: the state has at most N photons).
StateVector ngbs(const GBSParams& params);

/// The unique orthogonal partner (N, 1-p, phi+pi); phase reported in [0, 2pi).
GBSParams orthogonal_partner(const GBSParams& params);

/// Coherent state |alpha| e^(i phi) truncated to dim levels. Throws if the
/// neglected tail mass beyond the cutoff exceeds 1e-8.
StateVector coherent_state(double alpha_sq, double phi, int dim);

/// Fidelity |<alpha | N, p = alpha_sq/N, phi>|^2, the diagnostic for the
/// coherent-state limit at fixed N p = |alpha|^2.
double coherent_overlap(double alpha_sq, double phi, int max_photons, int dim = 51);

}  // namespace gbsbell
