#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gbsbell/measurement.hpp"
#include "test_util.hpp"

#include <cmath>
#include <numbers>

using namespace gbsbell;
using testutil::near;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
const ChshAngles kCanonical{0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0};

}  // namespace

TEST_CASE("joint outcome probabilities are a distribution") {
  const TwoCavityState s = entangled_gbs(2, 0.3, 0.3, 0.7, 0.7, 0.8);
  const JointProbabilities probs =
      joint_outcome_probabilities(s, {0.2, 0.5}, {-0.4, 1.9});
  CHECK(probs.pp >= 0.0);
  CHECK(probs.pm >= 0.0);
  CHECK(probs.mp >= 0.0);
  CHECK(probs.mm >= 0.0);
  CHECK(near(probs.sum(), 1.0, 1e-12));
}

TEST_CASE("probabilities reproduce the oracle correlation") {
  for (double eta : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
    const TwoCavityState s = entangled_gbs(2, 0.4, 0.4, 1.1, 1.1, eta);
    for (double fz : {0.0, 0.3, -0.8}) {
      const DichotomicSetting s1{fz, 0.35}, s2{fz, 2.1};
      const JointProbabilities probs = joint_outcome_probabilities(s, s1, s2);
      CHECK(near(probs.correlation(), correlation_oracle(s, s1, s2), 1e-12));
    }
  }
}

TEST_CASE("perfect correlation at equal angles, maximal entanglement") {
  const TwoCavityState s = entangled_gbs(2, 0.5, 0.5, 0.0, 0.0, 1.0);
  const JointProbabilities probs =
      joint_outcome_probabilities(s, {0.0, 0.9}, {0.0, 0.9});
  CHECK(near(probs.pp + probs.mm, 1.0, 1e-12));
}

TEST_CASE("product state probabilities factorize") {
  const TwoCavityState s = entangled_gbs(2, 0.35, 0.65, 0.4, 1.3, 0.0);
  const JointProbabilities probs =
      joint_outcome_probabilities(s, {0.1, 0.8}, {0.6, 2.4});
  const double pa = probs.pp + probs.pm;  // P(+ on cavity 1)
  const double pb = probs.pp + probs.mp;  // P(+ on cavity 2)
  CHECK(near(probs.pp, pa * pb, 1e-12));
  CHECK(near(probs.pm, pa * (1 - pb), 1e-12));
  CHECK(near(probs.mp, (1 - pa) * pb, 1e-12));
}

TEST_CASE("leakage outside the measured subspace is rejected") {
  // Measure in a basis anchored to different (p, phi) than the state's own:
  // the state then has weight outside span(B1) x span(B2).
  TwoCavityState s = entangled_gbs(2, 0.3, 0.3, 0.0, 0.0, 1.0);
  s.p1 = 0.6;  // mislabel the basis parameters
  s.p2 = 0.6;
  CHECK_THROWS_AS(joint_outcome_probabilities(s, {0.0, 0.0}, {0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("seed determinism") {
  SimConfig config;
  config.shots_per_setting = 20000;
  config.alpha = 0.85;
  config.seed = 987654321;
  config.eta = 1.0;
  config.angles = kCanonical;

  const BellExperimentReport a = run_bell_experiment(config);
  const BellExperimentReport b = run_bell_experiment(config);
  CHECK(a.sb_estimate == b.sb_estimate);
  CHECK(a.sb_std_error == b.sb_std_error);
  for (int i = 0; i < 4; ++i) {
    CHECK(a.settings[i].n_pp == b.settings[i].n_pp);
    CHECK(a.settings[i].n_pm == b.settings[i].n_pm);
    CHECK(a.settings[i].n_mp == b.settings[i].n_mp);
    CHECK(a.settings[i].n_mm == b.settings[i].n_mm);
    CHECK(a.settings[i].n_single1 == b.settings[i].n_single1);
    CHECK(a.settings[i].n_none == b.settings[i].n_none);
  }
}

TEST_CASE("sampling converges to the Born probabilities") {
  SimConfig config;
  config.shots_per_setting = 1000000;
  config.alpha = 1.0;
  config.seed = 4242;
  config.eta = 1.0;
  config.angles = kCanonical;

  const BellExperimentReport report = run_bell_experiment(config);
  const TwoCavityState s = entangled_gbs(2, 0.5, 0.5, 0.0, 0.0, 1.0);
  const double pairs[4][2] = {{kCanonical.theta1, kCanonical.theta2},
                              {kCanonical.theta1, kCanonical.theta2_prime},
                              {kCanonical.theta1_prime, kCanonical.theta2},
                              {kCanonical.theta1_prime, kCanonical.theta2_prime}};
  for (int i = 0; i < 4; ++i) {
    const JointProbabilities probs =
        joint_outcome_probabilities(s, {0.0, pairs[i][0]}, {0.0, pairs[i][1]});
    const double n = static_cast<double>(report.settings[i].coincidences());
    CHECK(std::abs(report.settings[i].n_pp / n - probs.pp) < 5e-3);
    CHECK(std::abs(report.settings[i].n_pm / n - probs.pm) < 5e-3);
    CHECK(std::abs(report.settings[i].n_mp / n - probs.mp) < 5e-3);
    CHECK(std::abs(report.settings[i].n_mm / n - probs.mm) < 5e-3);
  }
}

TEST_CASE("coincidence rate matches alpha squared") {
  SimConfig config;
  config.shots_per_setting = 200000;
  config.alpha = 0.7;
  config.seed = 777;
  config.eta = 1.0;
  config.angles = kCanonical;

  const BellExperimentReport report = run_bell_experiment(config);
  const double n = static_cast<double>(config.shots_per_setting);
  const double expected = config.alpha * config.alpha;
  const double sigma = std::sqrt(expected * (1.0 - expected) / n);
  for (const auto& tally : report.settings) {
    const double rate = static_cast<double>(tally.coincidences()) / n;
    CHECK(std::abs(rate - expected) < 5.0 * sigma);
  }
}

TEST_CASE("maximal violation recovered with ideal detectors") {
  SimConfig config;
  config.shots_per_setting = 1000000;
  config.alpha = 1.0;
  config.seed = 20260808;
  config.eta = 1.0;
  config.angles = kCanonical;

  const BellExperimentReport report = run_bell_experiment(config);
  CHECK(std::abs(report.sb_estimate - kTsirelson) < 3.0 * report.sb_std_error);
  CHECK(report.violation);
  CHECK(near(report.analytic_sb, kTsirelson, 1e-12));
  CHECK(report.loophole_free_at_alpha);  // alpha = 1 > 0.8284

  // Fair sampling keeps the estimator centered even at 50% efficiency.
  config.alpha = 0.5;
  const BellExperimentReport lossy = run_bell_experiment(config);
  CHECK(std::abs(lossy.sb_estimate - kTsirelson) < 3.0 * lossy.sb_std_error);
  CHECK(!lossy.loophole_free_at_alpha);  // 0.5 < alpha_t
}

TEST_CASE("fair sampling keeps the estimator unbiased under losses") {
  // Mean over independent seeds stays within 3 standard errors of the mean.
  const int n_seeds = 20;
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < n_seeds; ++k) {
    SimConfig config;
    config.shots_per_setting = 100000;
    config.alpha = 0.7;
    config.seed = 1000 + static_cast<std::uint64_t>(k);
    config.eta = 1.0;
    config.angles = kCanonical;
    const double est = run_bell_experiment(config).sb_estimate;
    sum += est;
    sum_sq += est * est;
  }
  const double mean = sum / n_seeds;
  const double var = (sum_sq - n_seeds * mean * mean) / (n_seeds - 1);
  const double sem = std::sqrt(var / n_seeds);
  CHECK(std::abs(mean - kTsirelson) < 3.0 * sem);
}

TEST_CASE("no violation without entanglement") {
  SimConfig config;
  config.shots_per_setting = 200000;
  config.alpha = 1.0;
  config.seed = 5150;
  config.eta = 0.0;
  config.angles = kCanonical;

  const BellExperimentReport report = run_bell_experiment(config);
  CHECK(near(report.analytic_sb, chsh_sb(kCanonical, 0.0, 0.0), 1e-15));
  CHECK(std::abs(report.sb_estimate - report.analytic_sb) <
        3.0 * report.sb_std_error + 1e-6);
  CHECK(!report.violation);
  CHECK(!report.loophole_free_at_alpha);  // threshold undefined without violation
  CHECK(std::isnan(report.alpha_threshold));
}

TEST_CASE("zero coincidences abort with a diagnostic") {
  SimConfig config;
  config.shots_per_setting = 4;
  config.alpha = 1e-9;
  config.seed = 1;
  config.eta = 1.0;
  config.angles = kCanonical;
  CHECK_THROWS_AS(run_bell_experiment(config), std::runtime_error);
}

TEST_CASE("config validation") {
  SimConfig config;
  config.alpha = 0.0;
  CHECK_THROWS_AS(run_bell_experiment(config), std::invalid_argument);
  config.alpha = 1.0;
  config.shots_per_setting = 0;
  CHECK_THROWS_AS(run_bell_experiment(config), std::invalid_argument);
}

TEST_CASE("detection loophole threshold") {
  CHECK(near(detection_loophole_threshold(kTsirelson), 2.0 * (std::numbers::sqrt2 - 1.0),
             1e-15));
  CHECK(near(detection_loophole_threshold(kTsirelson), 0.828427, 1e-6));
  CHECK(near(detection_loophole_threshold(2.4), 4.0 / 4.4, 1e-15));
  CHECK(detection_loophole_threshold(2.0 + 1e-9) > 1.0 - 1e-6);
  CHECK_THROWS_AS(detection_loophole_threshold(2.0), std::invalid_argument);
  CHECK_THROWS_AS(detection_loophole_threshold(1.5), std::invalid_argument);
  CHECK_THROWS_AS(detection_loophole_threshold(3.0), std::invalid_argument);
}
