#include <doctest.h>

#include <cmath>
#include <sstream>

#include "morsecs/errors.hpp"
#include "morsecs/morse_model.hpp"
#include "morsecs/quadrature.hpp"
#include "morsecs/specfun.hpp"
#include "oracles.hpp"

using namespace morsecs;

namespace {
const ModelParams& hcl() {
  static const ModelParams params = ModelParams::from_nu(57.44);
  return params;
}
}  // namespace

TEST_SUITE("morse_model") {

TEST_CASE("spectroscopic constants give the familiar well depths") {
  // ratios matching the published nu values for HCl and Cs2
  const ModelParams a = params_from_spectroscopic(2989.74, 52.05);
  CHECK(a.nu == doctest::Approx(57.44).epsilon(2e-4));
  CHECK(a.n_max == 28);
  const ModelParams b = params_from_spectroscopic(42.020, 0.08011);
  CHECK(b.nu == doctest::Approx(524.55).epsilon(2e-4));
  CHECK(b.n_max == 261);
  const ModelParams c = params_from_spectroscopic(7.2, 1.0);
  CHECK(c.nu == 7.2);
  CHECK(c.p == doctest::Approx(3.1));
  CHECK(c.n_max == 3);
}

TEST_CASE("construction rejects shallow and degenerate wells") {
  CHECK_THROWS_AS(ModelParams::from_nu(2.5), DomainError);   // n_max < 1
  CHECK_THROWS_AS(ModelParams::from_nu(7.0), DomainError);   // integral p = 3
  CHECK_THROWS_AS(ModelParams::from_nu(-4.0), DomainError);
  CHECK_THROWS_AS(params_from_spectroscopic(1.0, 2.0), DomainError);
  CHECK_NOTHROW(ModelParams::from_nu(3.0001));
}

TEST_CASE("energies") {
  const ModelParams& params = hcl();
  // hbar/(2 m_r) = 1, beta = 1: E_0 = -p^2
  CHECK(energy(params, 0) == doctest::Approx(-params.p * params.p).epsilon(1e-15));
  CHECK(shifted_energy(params, 0) == 0.0);
  CHECK(shifted_energy(params, 1) == doctest::Approx(55.44).epsilon(1e-14));
  for (int n = 0; n < params.n_max; ++n) {
    CHECK(energy(params, n) < energy(params, n + 1));
    CHECK(energy(params, n + 1) < 0.0);
  }
  CHECK_THROWS_AS(energy(params, -1), DomainError);
  CHECK_THROWS_AS(energy(params, 29), DomainError);
}

TEST_CASE("shifted energy identity e(n) = eps0^2 - eps_n^2") {
  const ModelParams& params = hcl();
  const double e0 = params.epsilon(0);
  for (int n = 0; n <= params.n_max; ++n) {
    const double en = params.epsilon(n);
    CHECK(shifted_energy(params, n) ==
          doctest::Approx(e0 * e0 - en * en).epsilon(1e-12));
  }
}

TEST_CASE("norm constant: both printed forms agree") {
  const ModelParams& params = hcl();
  for (int n = 0; n <= params.n_max; ++n) {
    // nu-form: sqrt(beta (nu-2n-1) Gamma(n+1) / Gamma(nu-n))
    const double log_nu_form =
        0.5 * (std::log(params.beta * (params.nu - 2.0 * n - 1.0)) + log_gamma(n + 1.0) -
               log_gamma(params.nu - n));
    CHECK(norm_const(params, n).log_abs() == doctest::Approx(log_nu_form).epsilon(1e-13));
    CHECK(norm_const(params, n).sign() == 1);
  }
  // n = n_max stays strictly positive for non-integral p
  CHECK(norm_const(params, params.n_max).to_double() > 0.0);
  // n = 0 value against a direct evaluation
  const double expect0 = std::sqrt(2.0 * params.p * std::exp(-log_gamma(2.0 * params.p + 1.0)));
  CHECK(norm_const(params, 0).to_double() == doctest::Approx(expect0).epsilon(1e-13));
}

TEST_CASE("eigenfunction decays in both tails and is normalized") {
  const ModelParams& params = hcl();
  CHECK(eigenfunction_value(params, 0, 40.0) == 0.0);
  CHECK(eigenfunction_value(params, 0, -40.0) == 0.0);
  CHECK(eigenfunction_value(params, 5, 25.0) < 1e-10);
  CHECK_THROWS_AS(eigenfunction_value(params, 0, std::nan("")), DomainError);

  // int psi_0^2 dx = 1 via the half-line rule (dx = -dy / (beta y))
  const double eps0 = params.epsilon(0);
  const QuadratureRule rule = gauss_laguerre_rule(200, 2.0 * eps0 - 1.0);
  const double norm = halfline_quadrature(
      [&](double y) {
        const double x = std::log(params.nu / y) / params.beta;
        const double psi = eigenfunction_value(params, 0, x);
        return psi * psi / (params.beta * y);
      },
      rule);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("eigen_state bundles the derived quantities") {
  const EigenState st = eigen_state(hcl(), 3);
  CHECK(st.n == 3);
  CHECK(st.epsilon == doctest::Approx(25.22));
  CHECK(st.energy == doctest::Approx(-25.22 * 25.22));
  CHECK(st.norm_const.sign() == 1);
}

TEST_CASE("ladder strengths per variant") {
  const ModelParams& params = hcl();
  CHECK(k_factor(params, LadderVariant::OscillatorLike, 5) == 5.0);
  CHECK(k_factor(params, LadderVariant::EnergyLike, 1) ==
        doctest::Approx(2.0 * params.p - 1.0));
  CHECK(k_factor(params, LadderVariant::Terminating, params.n_max) ==
        doctest::Approx(static_cast<double>(params.n_max)));
  CHECK_THROWS_AS(k_factor(params, LadderVariant::EnergyLike, 0), DomainError);
}

TEST_CASE("rho: products and the energy-like closed form") {
  const ModelParams& params = hcl();
  CHECK(rho(params, LadderVariant::EnergyLike, 0).to_double() == 1.0);
  for (int n : {1, 3, 7, 15, 28}) {
    // oscillator-like: rho = n!
    CHECK(rho(params, LadderVariant::OscillatorLike, n).log_abs() ==
          doctest::Approx(log_gamma(n + 1.0)).epsilon(1e-13));
    // energy-like: rho = (-1)^n n! (1-2p)_n
    const ScaledReal closed = morsecs::pochhammer(1.0 - 2.0 * params.p, n) *
                              ((n % 2) ? -1.0 : 1.0) *
                              ScaledReal::from_log(log_gamma(n + 1.0), 1);
    const ScaledReal prod = rho(params, LadderVariant::EnergyLike, n);
    CHECK(prod.sign() == closed.sign());
    CHECK((prod / closed).to_double() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ladder action on basis vectors") {
  const ModelParams& params = hcl();
  const std::size_t dim = params.n_max + 1;
  std::vector<std::complex<double>> ground(dim, {0.0, 0.0});
  ground[0] = 1.0;
  const LadderResult lowered = ladder_apply(params, LadderVariant::EnergyLike,
                                            LadderDirection::Lower, ground);
  for (const auto& v : lowered.coeffs) CHECK(std::abs(v) == 0.0);
  CHECK_FALSE(lowered.truncated);

  for (int n : {0, 4, 20}) {
    std::vector<std::complex<double>> basis(dim, {0.0, 0.0});
    basis[n] = 1.0;
    const auto raised = ladder_apply(params, LadderVariant::EnergyLike, LadderDirection::Raise, basis);
    const auto back = ladder_apply(params, LadderVariant::EnergyLike, LadderDirection::Lower,
                                   raised.coeffs);
    CHECK(back.coeffs[n].real() ==
          doctest::Approx(k_factor(params, LadderVariant::EnergyLike, n + 1)).epsilon(1e-14));
  }

  // lowering then raising reproduces k(n) e_n; the top index only loses the
  // raised-out component
  for (int n : {1, 13, params.n_max}) {
    std::vector<std::complex<double>> basis(dim, {0.0, 0.0});
    basis[n] = 1.0;
    const auto lowered = ladder_apply(params, LadderVariant::EnergyLike, LadderDirection::Lower, basis);
    const auto up = ladder_apply(params, LadderVariant::EnergyLike, LadderDirection::Raise,
                                 lowered.coeffs);
    CHECK(up.coeffs[n].real() ==
          doctest::Approx(k_factor(params, LadderVariant::EnergyLike, n)).epsilon(1e-14));
    for (int j = 0; j <= params.n_max; ++j)
      if (j != n) CHECK(std::abs(up.coeffs[j]) == 0.0);
  }

  // raising the top state: terminating annihilates it quietly, others truncate
  std::vector<std::complex<double>> top(dim, {0.0, 0.0});
  top[params.n_max] = 1.0;
  const auto term = ladder_apply(params, LadderVariant::Terminating, LadderDirection::Raise, top);
  CHECK_FALSE(term.truncated);
  for (const auto& v : term.coeffs) CHECK(std::abs(v) == 0.0);
  const auto osc = ladder_apply(params, LadderVariant::OscillatorLike, LadderDirection::Raise, top);
  CHECK(osc.truncated);

  CHECK_THROWS_AS(
      ladder_apply(params, LadderVariant::EnergyLike, LadderDirection::Raise,
                   std::vector<std::complex<double>>(3)),
      DomainError);
}

TEST_CASE("terminating variant: A+ psi_{top-1} = sqrt([p]) psi_top") {
  const ModelParams& params = hcl();
  std::vector<std::complex<double>> below(params.n_max + 1, {0.0, 0.0});
  below[params.n_max - 1] = 1.0;
  const auto raised = ladder_apply(params, LadderVariant::Terminating, LadderDirection::Raise, below);
  CHECK(raised.coeffs[params.n_max].real() ==
        doctest::Approx(std::sqrt(static_cast<double>(params.n_max))).epsilon(1e-15));
}

TEST_CASE("flat-bottom limit of the shifted energies") {
  const double k_force = 2.0, hbar = 1.0, m_r = 0.5;
  // nu = 2 sqrt(m_r k) / (beta^2 hbar): pick beta to hit nu = 1e3, 1e4
  const double base = 2.0 * std::sqrt(m_r * k_force) / hbar;
  const double omega = std::sqrt(k_force / m_r);
  for (int n : {0, 1, 4}) {
    const double limit = hbar * omega * (n + 0.5);
    const double e3 = ho_limit_energy(n, k_force, std::sqrt(base / 1e3), hbar, m_r);
    const double e4 = ho_limit_energy(n, k_force, std::sqrt(base / 1e4), hbar, m_r);
    const double err3 = std::fabs(e3 - limit) / limit;
    const double err4 = std::fabs(e4 - limit) / limit;
    CHECK(err3 / err4 == doctest::Approx(10.0).epsilon(0.2));
    CHECK(e3 > 0.0);
  }
}

TEST_CASE("orthonormality under quadrature (subset; full grid in acceptance)") {
  const ModelParams& params = hcl();
  for (int m : {0, 1, 7, 19, 28}) {
    for (int n : {0, 5, 17, 28}) {
      const double expected = (m == n) ? 1.0 : 0.0;
      CHECK(std::fabs(eigen_overlap(params, m, n) - expected) <= 1e-8);
    }
  }
}

TEST_CASE("presets: builtin table and file parsing") {
  const auto& builtin = builtin_presets();
  REQUIRE(builtin.size() >= 2);
  CHECK(builtin[0].name == "hcl");
  CHECK(resolve_preset(builtin[0]).n_max == 28);
  CHECK(builtin[1].name == "cs2");
  CHECK(resolve_preset(builtin[1]).n_max == 261);

  std::istringstream file(
      "# test presets\n"
      "[i2]\n"
      "omega_e = 214.50\n"
      "omega_e_xe = 0.614\n"
      "\n"
      "[shallow]\n"
      "nu = 9.3\n");
  const auto parsed = parse_presets(file);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].name == "i2");
  CHECK(resolve_preset(parsed[0]).n_max == 174);
  CHECK(resolve_preset(parsed[1]).nu == 9.3);

  std::istringstream bad("[x]\nnu = banana\n");
  CHECK_THROWS_AS(parse_presets(bad), ConfigError);
  std::istringstream bad2("[x]\nunknown_key = 2\n");
  CHECK_THROWS_AS(parse_presets(bad2), ConfigError);
  std::istringstream bad3("nu = 2\n");
  CHECK_THROWS_AS(parse_presets(bad3), ConfigError);
}

}  // TEST_SUITE
