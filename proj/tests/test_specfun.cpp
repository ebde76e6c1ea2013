#include <cmath>
#include <random>

#include "doctest.h"
#include "dirac_sphere/errors.hpp"
#include "dirac_sphere/specfun.hpp"

using namespace dirac_sphere;
using specfun::JacobiIndex;

TEST_CASE("jacobi low degrees") {
  CHECK(specfun::jacobi({0, 1.0, 1.0 / 3.0}, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(specfun::jacobi({1, 1.0, 1.0 / 3.0}, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(specfun::jacobi({2, 0.0, 0.0}, 0.5) == doctest::Approx(-0.125).epsilon(1e-15));
}

TEST_CASE("jacobi rejects invalid index") {
  CHECK_THROWS_AS(specfun::jacobi({-1, 0.0, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(specfun::jacobi({2, -1.0, 0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(specfun::jacobi({2, 0.0, -1.5}, 0.0), DomainError);
}

TEST_CASE("jacobi recurrence against closed forms") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> par(-0.9, 3.0), xs(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = par(rng), b = par(rng), x = xs(rng);
    const double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    // P_2 from the explicit sum formula.
    const double u = (x - 1.0) / 2.0, v = (x + 1.0) / 2.0;
    // P_2 = sum_s C(2+a, 2-s) C(2+b, s) u^s v^(2-s)
    auto binom = [](double top, int k) {
      double r = 1.0;
      for (int i = 0; i < k; ++i) r *= (top - i) / (i + 1);
      return r;
    };
    double p2_exact = 0.0;
    for (int s = 0; s <= 2; ++s) {
      p2_exact += binom(2 + a, 2 - s) * binom(2 + b, s) * std::pow(u, s) * std::pow(v, 2 - s);
    }
    const double r1 = specfun::jacobi({1, a, b}, x);
    const double r2 = specfun::jacobi({2, a, b}, x);
    CHECK(std::abs(r1 - p1) <= 1e-12 * (1.0 + std::abs(p1)));
    CHECK(std::abs(r2 - p2_exact) <= 1e-12 * (1.0 + std::abs(p2_exact)));
  }
}

TEST_CASE("jacobi symmetry") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> xs(-1.0, 1.0);
  for (int n = 0; n <= 6; ++n) {
    for (int t = 0; t < 10; ++t) {
      const double x = xs(rng);
      const double lhs = specfun::jacobi({n, 1.0, 1.0 / 3.0}, -x);
      const double rhs = (n % 2 ? -1.0 : 1.0) * specfun::jacobi({n, 1.0 / 3.0, 1.0}, x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("jacobi outside the interval is tagged, tiny excess is clamped") {
  const JacobiIndex idx{3, 0.5, 0.2};
  CHECK_FALSE(specfun::jacobi_tagged(idx, 1.0 + 1e-14).outside_interval);
  CHECK(specfun::jacobi_tagged(idx, 1.0 + 1e-14).value == specfun::jacobi(idx, 1.0));
  CHECK(specfun::jacobi_tagged(idx, 1.5).outside_interval);
}

TEST_CASE("jacobi derivative") {
  CHECK(specfun::jacobi_deriv({0, 0.3, 0.4}, 0.3) == 0.0);
  CHECK(specfun::jacobi_deriv({1, 1.0, 1.0 / 3.0}, 0.2) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(specfun::jacobi_deriv({2, 0.0, 0.0}, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
  const JacobiIndex idx{5, 0.7, -0.3};
  const double x = 0.31, h = 1e-5;
  const double fd = (specfun::jacobi(idx, x + h) - specfun::jacobi(idx, x - h)) / (2 * h);
  CHECK(specfun::jacobi_deriv(idx, x) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("quadrature basics") {
  CHECK(specfun::integrate([](double) { return 1.0; }, -1.0, 1.0, 1e-10).value ==
        doctest::Approx(2.0).epsilon(1e-14));
  const auto r = specfun::integrate([](double w) { return 1.0 / (std::cosh(w) * std::cosh(w)); },
                                    -20.0, 20.0, 1e-10);
  CHECK(std::abs(r.value - 2.0) < 1e-9);
  CHECK(r.error <= 1e-10);
}

TEST_CASE("quadrature of an orthogonality integrand") {
  const double a = 1.0, b = 1.0 / 3.0;
  auto f = [&](double x) {
    return (1 - x) * std::pow(1 + x, b) * specfun::jacobi({1, a, b}, x) *
           specfun::jacobi({2, a, b}, x);
  };
  CHECK(std::abs(specfun::integrate(f, -1.0, 1.0, 1e-9).value) < 1e-8);
}

TEST_CASE("quadrature reports divergence with a partial estimate") {
  specfun::QuadratureOptions opts{1e-12, 0.0, 200};
  try {
    specfun::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, opts);
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(e.partial() > 0.0);
    CHECK(e.error_estimate() > 0.0);
  }
}

TEST_CASE("exceptional X1 polynomials are orthogonal for alpha*beta > 0") {
  const double a = 1.0, b = 1.0 / 3.0;
  const double c = (b + a) / (b - a);
  auto inner = [&](int m, int n) {
    return specfun::integrate(
               [&](double x) {
                 return std::pow(1 - x, a) * std::pow(1 + x, b) / ((x - c) * (x - c)) *
                        specfun::exceptional_jacobi_x1(m, a, b, x) *
                        specfun::exceptional_jacobi_x1(n, a, b, x);
               },
               -1.0, 1.0, 1e-11)
        .value;
  };
  for (int m = 1; m <= 4; ++m) {
    for (int n = m + 1; n <= 5; ++n) CHECK(std::abs(inner(m, n)) < 1e-9);
  }
  CHECK(inner(2, 2) > 0.0);
}
