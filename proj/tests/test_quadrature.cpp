#include <doctest.h>

#include <cmath>
#include <random>

#include "morsecs/errors.hpp"
#include "morsecs/morse_model.hpp"
#include "morsecs/quadrature.hpp"
#include "morsecs/specfun.hpp"

using namespace morsecs;

TEST_SUITE("quadrature") {

TEST_CASE("plain rule: weights normalized, nodes ordered and positive") {
  for (int order : {5, 40, 200, 400}) {
    const QuadratureRule rule = gauss_laguerre_rule(order);
    REQUIRE(static_cast<int>(rule.nodes.size()) == order);
    double sum = 0.0;
    for (int i = 0; i < order; ++i) {
      CHECK(rule.nodes[i] > 0.0);
      if (i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
      CHECK(rule.weights[i] >= 0.0);
      sum += rule.weights[i];
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("halfline integral of the bare weight") {
  const QuadratureRule rule = gauss_laguerre_rule(200);
  CHECK(halfline_quadrature([](double y) { return std::exp(-y); }, rule) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(halfline_quadrature([](double y) { return y * std::exp(-y); }, rule) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orthonormality integrand of the ground state integrates to one") {
  const ModelParams params = ModelParams::from_nu(57.44);
  const double eps0 = params.epsilon(0);
  const double log_norm = log_norm_const_unitless(params, 0);
  const QuadratureRule rule = gauss_laguerre_rule(200, 2.0 * eps0 - 1.0);
  const double value = halfline_quadrature(
      [&](double y) { return std::exp(2.0 * log_norm - y + (2.0 * eps0 - 1.0) * std::log(y)); },
      rule);
  CHECK(value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("moments match Pochhammer ratios at random weight exponents") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> alphas(-0.9, 80.0);
  for (int trial = 0; trial < 12; ++trial) {
    const double alpha = alphas(rng);
    const QuadratureRule rule = gauss_laguerre_rule(120, alpha);
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    for (int i = 0; i < rule.order; ++i) {
      const double w = rule.weights[i], y = rule.nodes[i];
      m1 += w * y;
      m2 += w * y * y;
      m3 += w * y * y * y;
    }
    CHECK(m1 == doctest::Approx(alpha + 1.0).epsilon(1e-12));
    CHECK(m2 == doctest::Approx((alpha + 1.0) * (alpha + 2.0)).epsilon(1e-12));
    CHECK(m3 == doctest::Approx((alpha + 1.0) * (alpha + 2.0) * (alpha + 3.0)).epsilon(1e-12));
  }
}

TEST_CASE("deep-well exponents stay usable") {
  const QuadratureRule rule = gauss_laguerre_rule(400, 522.55);
  double sum = 0.0, mean = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    sum += rule.weights[i];
    mean += rule.weights[i] * rule.nodes[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(mean == doctest::Approx(523.55).epsilon(1e-12));
}

TEST_CASE("non-finite integrand reports the offending node") {
  const QuadratureRule rule = gauss_laguerre_rule(20);
  CHECK_THROWS_AS(
      halfline_quadrature([](double y) { return y > 1.0 ? std::nan("") : 1.0; }, rule),
      AccuracyError);
  CHECK_THROWS_AS(integrate_weighted([](double) { return 1.0 / 0.0; }, rule), AccuracyError);
}

TEST_CASE("rejects invalid construction") {
  CHECK_THROWS_AS(gauss_laguerre_rule(0), DomainError);
  CHECK_THROWS_AS(gauss_laguerre_rule(10, -1.0), DomainError);
}

}  // TEST_SUITE
