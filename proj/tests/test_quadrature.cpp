#include <doctest.h>

#include <cmath>

#include "levymult/errors.hpp"
#include "levymult/geometry.hpp"
#include "levymult/quadrature.hpp"
#include "support/oracles.hpp"

using namespace levymult;

TEST_CASE("gauss-kronrod agrees with the Simpson oracle on smooth integrands") {
  const auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  const double gk = integrate(f, 0.0, 5.0).value;
  const double simpson = oracles::integrate(f, 0.0, 5.0);
  CHECK(gk == doctest::Approx(simpson).epsilon(1e-12));
}

TEST_CASE("known closed forms") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, pi).value ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return x * std::exp(-x); }, 0.0, 1.0).value ==
        doctest::Approx(1.0 - 2.0 / std::exp(1.0)).epsilon(1e-13));
}

TEST_CASE("endpoint singularity r^{-1/2}") {
  const double value =
      integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value;
  CHECK(value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("semi-infinite exponential tails") {
  const double e1 =
      integrate_to_infinity([](double r) { return std::exp(-r) / r; }, 0.1)
          .value;
  CHECK(e1 == doctest::Approx(oracles::exponential_integral_e1(0.1))
                  .epsilon(1e-11));
}

TEST_CASE("non-convergent integrand raises QuadratureFailure") {
  QuadratureOptions opts;
  opts.max_intervals = 8;
  CHECK_THROWS_AS(
      integrate([](double x) { return std::sin(1.0 / x) / x; }, 1e-9, 1.0, opts),
      QuadratureFailure);
}

TEST_CASE("gauss-legendre rule integrates polynomials of degree 2n-1") {
  const auto rule = gauss_legendre(8);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i)
    acc += rule.weights[i] * std::pow(rule.nodes[i], 14.0);
  CHECK(acc == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
  double total = 0.0;
  for (double w : rule.weights) total += w;
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gauss-legendre 64 nodes handle entire integrands to machine precision") {
  const auto rule = gauss_legendre(64);
  // int_0^2 e^{-t} cos t dt on [0,2] mapped from [-1,1]
  double acc = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double t = 1.0 + rule.nodes[i];
    acc += rule.weights[i] * std::exp(-t) * std::cos(t);
  }
  const double exact = 0.5 * (1.0 + std::exp(-2.0) * (std::sin(2.0) - std::cos(2.0)));
  CHECK(acc == doctest::Approx(exact).epsilon(1e-14));
}
