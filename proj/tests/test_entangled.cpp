#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gbsbell/entangled.hpp"
#include "gbsbell/field.hpp"
#include "test_util.hpp"

#include <cmath>
#include <numbers>

using namespace gbsbell;
using testutil::near;

namespace {

constexpr double kPi = std::numbers::pi;

// Tr(rho_1^2) for the reduced state of cavity 1, straight from amplitudes.
double reduced_purity(const TwoCavityState& s) {
  const int d = s.order + 1;
  const auto& psi = s.state.amplitudes();
  Matrix rho = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m)
      for (int k = 0; k < d; ++k)
        rho(n, m) += psi(n * d + k) * std::conj(psi(m * d + k));
  return (rho * rho).trace().real();
}

}  // namespace

TEST_CASE("entangled state normalization and construction") {
  for (int order : {1, 2}) {
    for (double eta : {-2.0, -1.0, 0.0, 0.5, 1.0, 3.0}) {
      const TwoCavityState s = entangled_gbs(order, 0.3, 0.6, 0.4, 1.1, eta);
      CHECK(s.state.dim() == (order + 1) * (order + 1));
      CHECK(s.state.is_normalized(1e-12));
    }
  }
  CHECK_THROWS_AS(entangled_gbs(3, 0.5, 0.5, 0, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(entangled_gbs(2, 1.5, 0.5, 0, 0, 1.0), std::invalid_argument);
}

TEST_CASE("the two superposed terms are orthogonal product states") {
  const double p1 = 0.27, p2 = 0.81, phi1 = 0.9, phi2 = 2.3;
  for (int order : {1, 2}) {
    const int d = order + 1;
    const StateVector t1 =
        tensor_product(ngbs({order, p1, phi1}, d), ngbs({order, 1 - p2, kPi + phi2}, d));
    const StateVector t2 =
        tensor_product(ngbs({order, 1 - p1, kPi + phi1}, d), ngbs({order, p2, phi2}, d));
    CHECK(std::abs(inner_product(t1, t2)) < 1e-12);

    // The realized state is the eta-weighted combination of exactly these.
    const double eta = 0.7;
    const TwoCavityState s = entangled_gbs(order, p1, p2, phi1, phi2, eta);
    const double norm = 1.0 / std::sqrt(1.0 + eta * eta);
    const Vector want = norm * (t1.amplitudes() + eta * t2.amplitudes());
    CHECK((want - s.state.amplitudes()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("number-state limits of the order-2 entangled state") {
  const double phi1 = 0.3, phi2 = 1.7, eta = 0.6;
  const double norm = 1.0 / std::sqrt(1.0 + eta * eta);

  // p1 = p2 = 1: support on |2,0> and |0,2> with relative phase 2(phi2-phi1).
  const TwoCavityState a = entangled_gbs(2, 1.0, 1.0, phi1, phi2, eta);
  for (int i = 0; i < 9; ++i) {
    if (i == 6 || i == 2) continue;  // (n1,n2) = (2,0) and (0,2)
    CHECK(std::abs(a.state.amplitude(i)) < 1e-15);
  }
  CHECK(near(a.state.amplitude(6), norm * std::polar(1.0, 2 * phi1), 1e-14));
  CHECK(near(a.state.amplitude(2), norm * eta * std::polar(1.0, 2 * phi2), 1e-14));

  // p1 = 1, p2 = 0: support on |2,2> and |0,0>.
  const TwoCavityState b = entangled_gbs(2, 1.0, 0.0, phi1, phi2, eta);
  for (int i = 0; i < 9; ++i) {
    if (i == 8 || i == 0) continue;
    CHECK(std::abs(b.state.amplitude(i)) < 1e-15);
  }
  CHECK(near(b.state.amplitude(8), norm * std::polar(1.0, 2 * (phi1 + phi2)), 1e-14));
  CHECK(near(b.state.amplitude(0), norm * eta, 1e-14));
}

TEST_CASE("eta = 0 is an uncorrelated product state") {
  const TwoCavityState s = entangled_gbs(1, 0.4, 0.7, 0.2, 0.9, 0.0);
  CHECK(s.is_product_state());
  CHECK(near(covariance_oracle(s), 0.0, 1e-12));
  CHECK(near(reduced_purity(s), 1.0, 1e-12));
}

TEST_CASE("reduced purity reflects the degree of entanglement") {
  const TwoCavityState max = entangled_gbs(2, 0.35, 0.62, 0.1, 2.0, 1.0);
  CHECK(near(reduced_purity(max), 0.5, 1e-10));

  const TwoCavityState none = entangled_gbs(2, 0.35, 0.62, 0.1, 2.0, 0.0);
  CHECK(near(reduced_purity(none), 1.0, 1e-10));
}

TEST_CASE("degree of entanglement") {
  CHECK(near(degree_of_entanglement(1.0), 1.0, 1e-15));
  CHECK(near(degree_of_entanglement(-1.0), 1.0, 1e-15));
  CHECK(near(degree_of_entanglement(0.0), 0.0, 1e-15));
  CHECK(near(degree_of_entanglement(3.0), 0.6, 1e-15));
  CHECK(near(degree_of_entanglement(1.0 / 3.0), 0.6, 1e-15));
}

TEST_CASE("eta_for_degree branches and round trip") {
  CHECK(near(eta_for_degree(1.0, EtaBranch::kAtMostOne), 1.0, 1e-15));
  CHECK(near(eta_for_degree(1.0, EtaBranch::kAtLeastOne), 1.0, 1e-15));
  CHECK(near(eta_for_degree(0.0, EtaBranch::kAtMostOne), 0.0, 1e-15));
  CHECK(near(eta_for_degree(0.6, EtaBranch::kAtMostOne), 1.0 / 3.0, 1e-14));
  CHECK(near(eta_for_degree(0.6, EtaBranch::kAtLeastOne), 3.0, 1e-14));
  CHECK_THROWS_AS(eta_for_degree(0.0, EtaBranch::kAtLeastOne), std::invalid_argument);
  CHECK_THROWS_AS(eta_for_degree(-0.1, EtaBranch::kAtMostOne), std::invalid_argument);
  CHECK_THROWS_AS(eta_for_degree(1.1, EtaBranch::kAtMostOne), std::invalid_argument);

  for (int i = 0; i <= 100; ++i) {
    const double g = i / 100.0;
    CHECK(near(degree_of_entanglement(eta_for_degree(g, EtaBranch::kAtMostOne)), g, 1e-12));
    if (g > 0.0) {
      CHECK(near(degree_of_entanglement(eta_for_degree(g, EtaBranch::kAtLeastOne)), g, 1e-12));
    }
  }
}
