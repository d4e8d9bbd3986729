#pragma once

// Monte Carlo simulation of the two-cavity Bell test: Born-rule joint
// outcome probabilities in the dichotomic eigenbases, seeded sampling with
// an independent per-cavity detector-efficiency model, fair-sampling
// correlation estimators, and the detection-loophole efficiency threshold.

#include "gbsbell/chsh.hpp"
#include "gbsbell/entangled.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace gbsbell {

enum class Outcome : std::int8_t { kMinus = -1, kUndetected = 0, kPlus = +1 };

struct MeasurementRecord {
  Outcome outcome1 = Outcome::kUndetected;
  Outcome outcome2 = Outcome::kUndetected;
  int setting_pair = 0;  // index into the four CHSH setting combinations
};

/// Born-rule joint probabilities P(a,b) = |<a~ b~|Psi>|^2 over the four
/// outcome pairs. Throws if the state leaks out of the measured subspace
/// span(B1) x span(B2) by more than 1e-10.
struct JointProbabilities {
  double pp = 0.0, pm = 0.0, mp = 0.0, mm = 0.0;

  double sum() const { return pp + pm + mp + mm; }
  double correlation() const { return pp + mm - pm - mp; }
};

JointProbabilities joint_outcome_probabilities(const TwoCavityState& state,
                                               const DichotomicSetting& s1,
                                               const DichotomicSetting& s2);

struct SimConfig {
  long long shots_per_setting = 100000;
  double alpha = 1.0;       // per-cavity detection efficiency, in (0, 1]
  std::uint64_t seed = 0;   // master seed; substreams derived per setting pair
  double eta = 1.0;
  double p = 0.5;           // symmetric state parameters (p1 = p2 = p)
  double phi = 0.0;
  double fz = 0.0;
  ChshAngles angles{};
};

struct SettingTally {
  double theta1 = 0.0, theta2 = 0.0;
  long long n_pp = 0, n_pm = 0, n_mp = 0, n_mm = 0;  // coincident detections
  long long n_single1 = 0;  // only cavity 1 detected
  long long n_single2 = 0;  // only cavity 2 detected
  long long n_none = 0;
  double estimator = 0.0;   // fair-sampling correlation over coincidences
  double std_error = 0.0;   // binomial standard error sqrt((1-E^2)/n)

  long long coincidences() const { return n_pp + n_pm + n_mp + n_mm; }
};

struct BellExperimentReport {
  SimConfig config;
  // Setting pairs in CHSH order: (t1,t2), (t1,t2'), (t1',t2), (t1',t2').
  std::array<SettingTally, 4> settings{};
  double sb_estimate = 0.0;
  double sb_std_error = 0.0;   // quadrature sum of the four setting errors
  double analytic_sb = 0.0;    // chsh_sb(angles, fz, eta)
  double alpha_threshold = 0.0;  // NaN when analytic_sb <= 2
  bool violation = false;               // sb_estimate > 2
  bool loophole_free_at_alpha = false;  // alpha > alpha_threshold
  std::string rng_algorithm;
};

/// Runs the four-setting CHSH experiment. Detection is an independent
/// Bernoulli(alpha) erasure per cavity, independent of outcome and setting;
/// estimators use coincident shots only (fair sampling). Deterministic for
/// a fixed config, independent of platform: sampling uses mt19937_64
/// substreams derived from the master seed via splitmix64, one per setting
/// pair. Throws on zero coincidences in any setting pair.
BellExperimentReport run_bell_experiment(const SimConfig& config);

/// Minimum per-cavity detector efficiency closing the detection loophole at
/// a given CHSH value: alpha_t = 4 / (S_B + 2), defined for 2 < S_B <= 2√2.
/// Equals 2(sqrt(2)-1) ~= 0.828427 at maximal violation.
double detection_loophole_threshold(double sb);

}  // namespace gbsbell
