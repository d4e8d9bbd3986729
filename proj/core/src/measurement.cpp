#include "gbsbell/measurement.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace gbsbell {

namespace {

// splitmix64 step; used only to derive independent substream seeds from the
// master seed, so that per-setting streams do not overlap and the report is
// identical however the settings are iterated.
std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; avoids distribution objects
// whose outputs differ across standard-library implementations.
double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

void validate(const SimConfig& config) {
  if (config.shots_per_setting < 1) {
    throw std::invalid_argument("SimConfig: shots_per_setting must be >= 1");
  }
  if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
    throw std::invalid_argument("SimConfig: alpha must lie in (0, 1]");
  }
  if (!(config.p >= 0.0 && config.p <= 1.0)) {
    throw std::invalid_argument("SimConfig: p must lie in [0, 1]");
  }
  if (!(std::abs(config.fz) <= 1.0)) {
    throw std::invalid_argument("SimConfig: |fz| must be <= 1");
  }
  if (!std::isfinite(config.eta)) {
    throw std::invalid_argument("SimConfig: eta must be finite");
  }
}

}  // namespace

JointProbabilities joint_outcome_probabilities(const TwoCavityState& state,
                                               const DichotomicSetting& s1,
                                               const DichotomicSetting& s2) {
  const int dim = state.order + 1;
  const auto [p1_vec, m1_vec] =
      dichotomic_eigenvectors(s1, state.cavity_basis(1), dim);
  const auto [p2_vec, m2_vec] =
      dichotomic_eigenvectors(s2, state.cavity_basis(2), dim);

  JointProbabilities probs;
  probs.pp = std::norm(inner_product(tensor_product(p1_vec, p2_vec), state.state));
  probs.pm = std::norm(inner_product(tensor_product(p1_vec, m2_vec), state.state));
  probs.mp = std::norm(inner_product(tensor_product(m1_vec, p2_vec), state.state));
  probs.mm = std::norm(inner_product(tensor_product(m1_vec, m2_vec), state.state));

  const double leak = 1.0 - probs.sum();
  if (leak > 1e-10) {
    throw std::invalid_argument(
        "joint_outcome_probabilities: state leaks outside the measured "
        "subspace by " +
        std::to_string(leak));
  }
  return probs;
}

BellExperimentReport run_bell_experiment(const SimConfig& config) {
  validate(config);

  const TwoCavityState state = entangled_gbs(2, config.p, config.p, config.phi,
                                             config.phi, config.eta);
  const ChshAngles& a = config.angles;
  const double pairs[4][2] = {{a.theta1, a.theta2},
                              {a.theta1, a.theta2_prime},
                              {a.theta1_prime, a.theta2},
                              {a.theta1_prime, a.theta2_prime}};

  BellExperimentReport report;
  report.config = config;
  report.rng_algorithm =
      "mt19937_64, one substream per setting pair, substream seeds via splitmix64";

  std::uint64_t derive_state = config.seed;
  for (int i = 0; i < 4; ++i) {
    const DichotomicSetting s1{config.fz, pairs[i][0]};
    const DichotomicSetting s2{config.fz, pairs[i][1]};
    const JointProbabilities probs = joint_outcome_probabilities(state, s1, s2);
    const double cum_pp = probs.pp;
    const double cum_pm = cum_pp + probs.pm;
    const double cum_mp = cum_pm + probs.mp;

    SettingTally tally;
    tally.theta1 = pairs[i][0];
    tally.theta2 = pairs[i][1];

    std::mt19937_64 gen(splitmix64_next(derive_state));
    for (long long shot = 0; shot < config.shots_per_setting; ++shot) {
      const double u = uniform01(gen);
      MeasurementRecord rec;
      rec.setting_pair = i;
      if (u < cum_pp) {
        rec.outcome1 = Outcome::kPlus;
        rec.outcome2 = Outcome::kPlus;
      } else if (u < cum_pm) {
        rec.outcome1 = Outcome::kPlus;
        rec.outcome2 = Outcome::kMinus;
      } else if (u < cum_mp) {
        rec.outcome1 = Outcome::kMinus;
        rec.outcome2 = Outcome::kPlus;
      } else {
        rec.outcome1 = Outcome::kMinus;
        rec.outcome2 = Outcome::kMinus;
      }
      // Independent per-cavity detection, blind to outcome and setting.
      if (uniform01(gen) >= config.alpha) rec.outcome1 = Outcome::kUndetected;
      if (uniform01(gen) >= config.alpha) rec.outcome2 = Outcome::kUndetected;

      const bool d1 = rec.outcome1 != Outcome::kUndetected;
      const bool d2 = rec.outcome2 != Outcome::kUndetected;
      if (d1 && d2) {
        if (rec.outcome1 == Outcome::kPlus) {
          (rec.outcome2 == Outcome::kPlus ? tally.n_pp : tally.n_pm) += 1;
        } else {
          (rec.outcome2 == Outcome::kPlus ? tally.n_mp : tally.n_mm) += 1;
        }
      } else if (d1) {
        tally.n_single1 += 1;
      } else if (d2) {
        tally.n_single2 += 1;
      } else {
        tally.n_none += 1;
      }
    }

    const long long n = tally.coincidences();
    if (n == 0) {
      throw std::runtime_error(
          "run_bell_experiment: zero coincidences for setting pair " +
          std::to_string(i) + "; increase shots_per_setting or alpha");
    }
    tally.estimator =
        static_cast<double>(tally.n_pp + tally.n_mm - tally.n_pm - tally.n_mp) /
        static_cast<double>(n);
    tally.std_error = std::sqrt(
        std::max(0.0, 1.0 - tally.estimator * tally.estimator) /
        static_cast<double>(n));
    report.settings[static_cast<std::size_t>(i)] = tally;
  }

  const double e12 = report.settings[0].estimator;
  const double e12p = report.settings[1].estimator;
  const double e1p2 = report.settings[2].estimator;
  const double e1p2p = report.settings[3].estimator;
  report.sb_estimate = std::abs(e12 - e12p) + std::abs(e1p2 + e1p2p);
  double var = 0.0;
  for (const auto& t : report.settings) var += t.std_error * t.std_error;
  report.sb_std_error = std::sqrt(var);

  report.analytic_sb = chsh_sb(config.angles, config.fz, config.eta);
  if (report.analytic_sb > 2.0) {
    report.alpha_threshold = detection_loophole_threshold(report.analytic_sb);
    report.loophole_free_at_alpha = config.alpha > report.alpha_threshold;
  } else {
    report.alpha_threshold = std::numeric_limits<double>::quiet_NaN();
    report.loophole_free_at_alpha = false;
  }
  report.violation = report.sb_estimate > 2.0;
  return report;
}

double detection_loophole_threshold(double sb) {
  constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
  if (!(sb > 2.0)) {
    throw std::invalid_argument(
        "detection_loophole_threshold: no violation (S_B <= 2), threshold undefined");
  }
  if (sb > kTsirelson + 1e-9) {
    throw std::invalid_argument(
        "detection_loophole_threshold: S_B exceeds the quantum maximum 2*sqrt(2)");
  }
  return 4.0 / (sb + 2.0);
}

}  // namespace gbsbell
