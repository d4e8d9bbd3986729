#include "gbsbell/chsh.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gbsbell {

namespace {

void validate_setting(const DichotomicSetting& s) {
  if (!(std::abs(s.fz) <= 1.0)) {
    throw std::invalid_argument("DichotomicSetting: |Fz| must be <= 1");
  }
  if (!std::isfinite(s.theta)) {
    throw std::invalid_argument("DichotomicSetting: theta must be finite");
  }
}

}  // namespace

LinearOperator dichotomic_operator(const DichotomicSetting& setting,
                                   const GBSParams& basis, int dim) {
  validate_setting(setting);
  if (dim < basis.max_photons + 1) {
    throw std::invalid_argument("dichotomic_operator: dim must be >= max_photons + 1");
  }
  const Vector plus = ngbs(basis, dim).amplitudes();
  const Vector minus = ngbs(orthogonal_partner(basis), dim).amplitudes();
  const double s = std::sqrt(1.0 - setting.fz * setting.fz);
  const Complex phase = std::polar(1.0, setting.theta);

  Matrix m = setting.fz * (plus * plus.adjoint() - minus * minus.adjoint());
  m += s * (phase * (plus * minus.adjoint()) +
            std::conj(phase) * (minus * plus.adjoint()));
  return LinearOperator(std::move(m), /*hermitian=*/true);
}

std::pair<StateVector, StateVector> dichotomic_eigenvectors(
    const DichotomicSetting& setting, const GBSParams& basis, int dim) {
  validate_setting(setting);
  if (dim < basis.max_photons + 1) {
    throw std::invalid_argument("dichotomic_eigenvectors: dim must be >= max_photons + 1");
  }
  const Vector plus = ngbs(basis, dim).amplitudes();
  const Vector minus = ngbs(orthogonal_partner(basis), dim).amplitudes();
  const double rp = std::sqrt(1.0 + setting.fz);
  const double rm = std::sqrt(1.0 - setting.fz);
  const Complex phase = std::polar(1.0, setting.theta);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  Vector vp = inv_sqrt2 * (rp * plus + rm * std::conj(phase) * minus);
  Vector vm = inv_sqrt2 * (-rm * phase * plus + rp * minus);
  const std::string label = "single-cavity d=" + std::to_string(dim);
  return {StateVector(std::move(vp), label), StateVector(std::move(vm), label)};
}

double correlation_analytic(double theta1, double theta2, double fz, double eta) {
  if (!(std::abs(fz) <= 1.0)) {
    throw std::invalid_argument("correlation_analytic: |Fz| must be <= 1");
  }
  if (!std::isfinite(eta)) {
    throw std::invalid_argument("correlation_analytic: eta must be finite");
  }
  return 2.0 * eta * (1.0 - fz * fz) / (1.0 + eta * eta) *
             std::cos(theta1 - theta2) -
         fz * fz;
}

double correlation_oracle(const TwoCavityState& state,
                          const DichotomicSetting& s1,
                          const DichotomicSetting& s2) {
  const int dim = state.order + 1;
  const LinearOperator f1 = dichotomic_operator(s1, state.cavity_basis(1), dim);
  const LinearOperator f2 = dichotomic_operator(s2, state.cavity_basis(2), dim);
  return expectation(state.state, tensor_product(f1, f2)).real();
}

double chsh_sb(const ChshAngles& angles, double fz, double eta) {
  const double e12 = correlation_analytic(angles.theta1, angles.theta2, fz, eta);
  const double e12p = correlation_analytic(angles.theta1, angles.theta2_prime, fz, eta);
  const double e1p2 = correlation_analytic(angles.theta1_prime, angles.theta2, fz, eta);
  const double e1p2p =
      correlation_analytic(angles.theta1_prime, angles.theta2_prime, fz, eta);
  return std::abs(e12 - e12p) + std::abs(e1p2 + e1p2p);
}

double chsh_sb_reduced(const ChshAngles& angles, double degree) {
  if (!(degree >= 0.0 && degree <= 1.0)) {
    throw std::invalid_argument("chsh_sb_reduced: degree must lie in [0, 1]");
  }
  const double c12 = std::cos(angles.theta1 - angles.theta2);
  const double c12p = std::cos(angles.theta1 - angles.theta2_prime);
  const double c1p2 = std::cos(angles.theta1_prime - angles.theta2);
  const double c1p2p = std::cos(angles.theta1_prime - angles.theta2_prime);
  return degree * (std::abs(c12 - c12p) + std::abs(c1p2 + c1p2p));
}

FzStationarityReport verify_fz_stationarity(const ChshAngles& angles,
                                            double eta, int grid_points) {
  if (grid_points < 3) {
    throw std::invalid_argument("verify_fz_stationarity: grid must have >= 3 points");
  }
  FzStationarityReport report;
  const GridSpec grid{-1.0, 1.0, grid_points};
  report.grid_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double fz = grid.at(i);
    const double sb = chsh_sb(angles, fz, eta);
    if (sb > report.grid_max) {
      report.grid_max = sb;
      report.grid_argmax = fz;
    }
  }
  report.sb_at_zero = chsh_sb(angles, 0.0, eta);
  const double step = 1e-4;
  report.central_difference =
      (chsh_sb(angles, step, eta) - chsh_sb(angles, -step, eta)) / (2.0 * step);
  report.zero_is_argmax = report.grid_argmax == 0.0;
  return report;
}

SurfaceScan scan_sb_surface(double theta1, double theta2, double theta1_prime,
                            const GridSpec& degree_grid,
                            const GridSpec& theta2p_grid) {
  if (degree_grid.count < 1 || theta2p_grid.count < 1) {
    throw std::invalid_argument("scan_sb_surface: grids must be non-empty");
  }
  SurfaceScan scan;
  scan.points.reserve(static_cast<std::size_t>(degree_grid.count) *
                      static_cast<std::size_t>(theta2p_grid.count));
  scan.max.sb = -std::numeric_limits<double>::infinity();
  scan.violation_threshold_degree = std::numeric_limits<double>::quiet_NaN();

  double prev_degree = 0.0;
  double prev_row_max = 0.0;
  bool crossed = false;
  for (int i = 0; i < degree_grid.count; ++i) {
    const double g = degree_grid.at(i);
    double row_max = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < theta2p_grid.count; ++j) {
      const double t2p = theta2p_grid.at(j);
      const double sb =
          chsh_sb_reduced({theta1, theta2, theta1_prime, t2p}, g);
      scan.points.push_back({g, t2p, sb});
      if (sb > scan.max.sb) scan.max = {g, t2p, sb};
      if (sb > row_max) row_max = sb;
    }
    if (!crossed && row_max > 2.0) {
      if (i == 0) {
        scan.violation_threshold_degree = g;
      } else {
        // Linear interpolation between the bracketing rows.
        scan.violation_threshold_degree =
            prev_degree + (2.0 - prev_row_max) * (g - prev_degree) /
                              (row_max - prev_row_max);
      }
      crossed = true;
    }
    prev_degree = g;
    prev_row_max = row_max;
  }
  return scan;
}

}  // namespace gbsbell
