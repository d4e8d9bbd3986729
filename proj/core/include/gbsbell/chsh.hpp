#pragma once

// CHSH-Bell machinery on the two-cavity states. Each cavity carries a
// dichotomic operator acting on the 2-dimensional subspace spanned by the
// orthogonal pair B = { |+> = |2,p,phi>, |-> = |2,1-p,pi+phi> }:
//
//   F = Fz (|+><+| - |-><-|)
//     + sqrt(1-Fz^2) (e^(+i theta) |+><-| + e^(-i theta) |-><+|),
//
// extended by zero on the orthogonal complement of span(B). Restricted to
// span(B) the eigenvalues are exactly +-1. The sign convention is pinned by
// the oracle: the |+><-| coefficient is e^(+i theta), which reproduces the
// closed-form correlation
//
//   E(theta1, theta2) = 2 eta (1-Fz^2) cos(theta1-theta2)/(1+eta^2) - Fz^2
//
// for states with p1 = p2 and phi1 = phi2 (Fz equal in both cavities).

#include "gbsbell/binomial.hpp"
#include "gbsbell/entangled.hpp"
#include "gbsbell/fock.hpp"
#include "gbsbell/grid.hpp"

#include <utility>
#include <vector>

namespace gbsbell {

struct DichotomicSetting {
  double fz = 0.0;     // in [-1, 1]; |F12| = sqrt(1 - fz^2)
  double theta = 0.0;  // phase angle of the off-diagonal element, radians
};

struct ChshAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta1_prime = 0.0;
  double theta2_prime = 0.0;
};

LinearOperator dichotomic_operator(const DichotomicSetting& setting,
                                   const GBSParams& basis, int dim);

/// Eigenvectors (|+~>, |-~>) of the dichotomic operator, eigenvalues +1, -1:
///   |+~> = [ sqrt(1+Fz) |+> + sqrt(1-Fz) e^(-i theta) |-> ] / sqrt(2)
///   |-~> = [ -sqrt(1-Fz) e^(+i theta) |+> + sqrt(1+Fz) |-> ] / sqrt(2)
std::pair<StateVector, StateVector> dichotomic_eigenvectors(
    const DichotomicSetting& setting, const GBSParams& basis, int dim);

/// Closed-form two-cavity correlation (symmetric parameters p1=p2, phi1=phi2).
double correlation_analytic(double theta1, double theta2, double fz,
                            double eta);

/// Dense-algebra correlation <F1(s1) F2(s2)> on the realized state; each
/// cavity's measurement basis is anchored to that cavity's own (p, phi).
double correlation_oracle(const TwoCavityState& state,
                          const DichotomicSetting& s1,
                          const DichotomicSetting& s2);

/// CHSH functional |E(t1,t2) - E(t1,t2')| + |E(t1',t2) + E(t1',t2')| built
/// from correlation_analytic; classical bound 2, quantum maximum 2 sqrt(2).
double chsh_sb(const ChshAngles& angles, double fz, double eta);

/// CHSH functional at Fz = 0 expressed through the degree of entanglement:
///   S_B = G [ |cos(t1-t2) - cos(t1-t2')| + |cos(t1'-t2) + cos(t1'-t2')| ].
double chsh_sb_reduced(const ChshAngles& angles, double degree);

struct FzStationarityReport {
  double sb_at_zero = 0.0;
  double grid_argmax = 0.0;     // Fz attaining the grid maximum
  double grid_max = 0.0;
  double central_difference = 0.0;  // dS_B/dFz at Fz = 0
  bool zero_is_argmax = false;
};

/// Scans S_B over an odd uniform Fz grid on [-1, 1] and differentiates at 0.
/// For configurations that violate the classical bound at Fz = 0 the maximum
/// sits at Fz = 0; at Fz = +-1 the functional always equals 2.
FzStationarityReport verify_fz_stationarity(const ChshAngles& angles,
                                            double eta, int grid_points = 201);

struct SurfacePoint {
  double degree = 0.0;
  double theta2_prime = 0.0;
  double sb = 0.0;
};

struct SurfaceScan {
  std::vector<SurfacePoint> points;  // degree-major, theta2'-minor order
  SurfacePoint max;
  // Degree where max-over-theta2' of S_B crosses 2 (linear interpolation
  // between bracketing grid rows); NaN when the surface never violates.
  double violation_threshold_degree = 0.0;
};

/// S_B(G, theta2') surface with theta1, theta2, theta1' held fixed.
SurfaceScan scan_sb_surface(double theta1, double theta2, double theta1_prime,
                            const GridSpec& degree_grid,
                            const GridSpec& theta2p_grid);

}  // namespace gbsbell
