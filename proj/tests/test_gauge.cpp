#include <cmath>
#include <random>

#include "doctest.h"
#include "dirac_sphere/errors.hpp"
#include "dirac_sphere/gauge.hpp"
#include "dirac_sphere/report.hpp"

using namespace dirac_sphere;
using namespace dirac_sphere::gauge;

TEST_CASE("Model I gauge field") {
  const Model1Params p{0.4, 0.5, 3.0, std::nullopt};
  const auto A = a_u_model1(p);
  CHECK(A(0.0) == doctest::Approx(3.4).epsilon(1e-15));
  CHECK(A(40.0) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(A(-40.0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(a_u_model1({0.0, 0.0, 1.7, std::nullopt})(0.3) == 1.7);
  const auto g = gauge_model1(p);
  for (double w : {-2.0, 0.1, 1.3}) {
    const double fd = (g.value(w + 1e-5) - g.value(w - 1e-5)) / 2e-5;
    CHECK(g.derivative(w) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("constraint branches") {
  for (double k : {0.0, 2.0, 5.0}) {
    const auto br = model1_branches(k);
    CHECK(br[0].C2 == -0.5);
    CHECK(br[0].C3 == k);
    CHECK(br[1].C2 == 0.5);
    CHECK(br[1].C3 == k - 1.0);
    CHECK(br[2].C2 == 0.5);
    CHECK(br[2].C3 == k + 1.0);
    CHECK(br[3].C2 == 1.5);
    CHECK(br[3].C3 == k);
    for (const auto& b : br) {
      const Model1Params p{0.3, b.C2, b.C3, b.branch};
      CHECK(p.cross_coefficient(k) == 0.0);
      CHECK(p.quadratic_coefficient(k) == 0.0);
    }
  }
  CHECK(model1_branch_from_string("c2_three_halves") == Model1Branch::c2_three_halves);
  CHECK_THROWS_AS(model1_branch_from_string("nope"), DomainError);
}

TEST_CASE("general potential with constant gauge") {
  const auto v = v_eff_general([](double) { return 2.0; }, [](double) { return 0.0; }, 2.0, 1);
  CHECK(v(0.0) == doctest::Approx(-0.5).epsilon(1e-15));
  for (double w : {-1.0, 0.7, 2.5}) {
    const double c = std::cosh(w);
    CHECK(v(w) == doctest::Approx(-0.75 * c * c + 0.25).epsilon(1e-14));
  }
}

TEST_CASE("Model I expansion") {
  const double k = 2.0;
  const Model1Params p{0.0, 0.0, k, std::nullopt};
  const auto raw = v_eff_model1_raw(p, k);
  for (double w : {-1.0, 0.4, 2.0}) {
    const double c = std::cosh(w), s = std::sinh(w);
    CHECK(raw(w) == doctest::Approx(-0.5 * c * c - 0.25 * s * s).epsilon(1e-14));
  }
  const Model1Params fig{0.4, 0.5, 3.0, Model1Branch::c2_half_c3_k_plus_1};
  const auto general = v_eff_general(gauge_model1(fig), k, 1);
  const auto expanded = v_eff_model1_raw(fig, k);
  CHECK(general(1.0) == doctest::Approx(expanded(1.0)).epsilon(1e-10));
}

TEST_CASE("Model I closed forms") {
  const double k = 2.0;
  const auto fig = Model1Params::on_branch(0.4, Model1Branch::c2_half_c3_k_plus_1, k);
  CHECK(fig.C3 == 3.0);
  const auto v1 = v_eff_model1(fig, k, 1);
  CHECK(v1(0.0) == doctest::Approx(0.46).epsilon(1e-14));
  REQUIRE(v1.asymptote_plus.has_value());
  REQUIRE(v1.asymptote_minus.has_value());
  CHECK(v1(30.0) == doctest::Approx(*v1.asymptote_plus).epsilon(1e-12));
  const auto v2 = v_eff_model1(fig, k, 2);
  CHECK_FALSE(v2.asymptote_plus.has_value());
  CHECK(v2(6.0) > v2(4.0));
  CHECK(v2(4.0) > v2(2.0));

  const auto barrier = Model1Params::on_branch(0.3, Model1Branch::c2_minus_half, k);
  const auto vb = v_eff_model1(barrier, k, 1);
  CHECK(vb(1.5) == doctest::Approx(vb(-1.5)).epsilon(1e-14));

  CHECK_THROWS_AS(v_eff_model1(Model1Params{0.3, 0.2, 1.0, std::nullopt}, k, 1), ConstraintError);
}

TEST_CASE("Model I constancy on every branch") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> c1s(0.01, 0.49), ks(-3.0, 3.0);
  for (int t = 0; t < 8; ++t) {
    const double C1 = c1s(rng), k = ks(rng);
    for (const auto& b : model1_branches(k)) {
      const auto p = Model1Params::on_branch(C1, b.branch, k);
      const auto r = oracle::check_constancy(v_eff_model1_raw(p, k).eval, v_eff_model1(p, k, 1).eval);
      CHECK(r.constant());
      const auto g = oracle::check_constancy(v_eff_general(gauge_model1(p), k, 1).eval,
                                             v_eff_model1_raw(p, k).eval);
      CHECK(g.constant());
      CHECK(std::abs(g.mean) < 1e-9);
    }
  }
}

TEST_CASE("Model II parameter algebra") {
  const auto p = model2_derive_params(1.0, -2.0 / 3.0, 4.0 / 3.0, 2.0);
  CHECK(std::abs(p.C3 - 5.0 / 6.0) <= 1e-14);
  CHECK(std::abs(p.C4 - 8.0 / 3.0) <= 1e-14);
  CHECK(p.C2 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(p.C5 == doctest::Approx(10.0 / 9.0).epsilon(1e-14));
  CHECK(p.C6 == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(p.alpha - 1.0) <= 1e-14);
  CHECK(std::abs(p.beta - 1.0 / 3.0) <= 1e-14);
  const auto z = model2_derive_params(0.7, -2.0 / 3.0, 4.0 / 3.0, 0.0);
  CHECK(z.C4 == 0.0);
  CHECK(z.C6 == 0.0);
  CHECK_THROWS_AS(model2_derive_params(1.0, 0.0, 1.0, 2.0), DegenerateParametersError);
  CHECK_THROWS_AS(model2_derive_params(1.0, 1.0, -1.0, 2.0), DegenerateParametersError);
}

TEST_CASE("alpha beta branches") {
  const auto ab = alpha_beta(2.0, Sign::minus, Sign::plus);
  CHECK(ab.alpha == 1.0);
  CHECK(ab.beta == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(alpha_beta(0.0, Sign::plus, Sign::plus), InvalidBranchError);
  CHECK_THROWS_AS(alpha_beta(0.0, Sign::minus, Sign::plus), InvalidBranchError);
  CHECK_THROWS_AS(alpha_beta(1.0, Sign::plus, Sign::plus), PoleError);
  CHECK_THROWS_AS(alpha_beta(-1.0, Sign::plus, Sign::plus), PoleError);
  Sign sa{}, sb{};
  const auto d = default_alpha_beta(2.0, &sa, &sb);
  CHECK(d.alpha == 1.0);
  CHECK(sa == Sign::minus);
  CHECK(sb == Sign::plus);
  CHECK(d.alpha * d.beta > 0.0);
}

TEST_CASE("Model II gauge field and poles") {
  const auto p = Model2Params::from_alpha_beta(0.1, 1.0, 1.0 / 3.0, 2.0);
  CHECK(p.a1 == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  CHECK(p.a2 == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK_FALSE(p.pole().has_value());
  const auto g = gauge_model2(p);
  CHECK(g.poles.empty());
  for (double w : {-2.0, 0.0, 1.1}) {
    const double fd = (g.value(w + 1e-5) - g.value(w - 1e-5)) / 2e-5;
    CHECK(g.derivative(w) == doctest::Approx(fd).epsilon(1e-8));
  }

  const auto s = Model2Params::from_alpha_beta(0.1, 1.0, -1.0 / 3.0, 2.0);
  REQUIRE(s.pole().has_value());
  CHECK(*s.pole() == doctest::Approx(std::atanh(-0.5)).epsilon(1e-14));
  CHECK(*s.pole() == doctest::Approx(-0.5493).epsilon(1e-4));
  try {
    a_u_model2(s)(*s.pole());
    FAIL("expected PoleError");
  } catch (const PoleError& e) {
    CHECK(e.location() == doctest::Approx(*s.pole()));
  }
}

TEST_CASE("Model II with C2 = 0 reduces to the Model I form") {
  Model2Params p = Model2Params::from_alpha_beta(0.3, 1.0, 1.0 / 3.0, 2.0);
  p.C2 = 0.0;
  const Model1Params q{p.C1, p.C3, p.C4, std::nullopt};
  for (double w : {-3.0, -0.2, 0.9, 2.2}) {
    CHECK(std::abs(a_u_model2(p)(w) - a_u_model1(q)(w)) <= 1e-14);
  }
}

TEST_CASE("Model II potentials") {
  const auto p = Model2Params::from_alpha_beta(0.1, 1.0, 1.0 / 3.0, 2.0);
  const auto v1 = v_eff_model2(p, 1);
  const auto raw = v_eff_model2_raw(p);
  CHECK(std::isfinite(v1(0.0)));
  const auto r = oracle::check_constancy(v1.eval, raw.eval);
  CHECK(r.constant());
  // cosh^2 coefficient of the regrouped form
  const double coeff = (2.0 - p.C4) * (2.0 - p.C4) + (p.C3 - 0.5) * (p.C3 - 0.5) - 1.0;
  // X cosh^2 + Y cosh sinh + bounded: X is the mean of the two limits of V / cosh^2.
  const double w = 15.0;
  const double c2 = std::cosh(w) * std::cosh(w);
  CHECK(0.5 * (v1(w) + v1(-w)) / c2 == doctest::Approx(coeff).epsilon(1e-9));
  const auto g = oracle::check_constancy(v_eff_general(gauge_model2(p), 2.0, 1).eval, raw.eval);
  CHECK(g.constant());

  Model2Params zero = Model2Params::from_alpha_beta(0.0, 1.0, 1.0 / 3.0, 2.0);
  const auto v2 = v_eff_model2(zero, 2);
  CHECK(std::isfinite(v2(0.5)));
}

TEST_CASE("Midya-Roy constants and right-hand side") {
  const auto c = midya_constants(1.0, 1.0 / 3.0, 1);
  CHECK(c.A1 == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
  CHECK(c.A2 == doctest::Approx(16.0 / 9.0).epsilon(1e-14));
  CHECK(c.A3 == doctest::Approx(-4.0 / 9.0).epsilon(1e-14));
  CHECK(c.A4 == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK(c.A5 == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
  CHECK(c.A6 == doctest::Approx(-8.0 / 9.0).epsilon(1e-14));
  CHECK(midya_rhs(1.0, 1.0 / 3.0, 1)(0.0) == doctest::Approx(19.0 / 18.0).epsilon(1e-14));
  CHECK(midya_rhs(1.0, 1.0 / 3.0, 1, SechPower::second)(0.0) ==
        doctest::Approx(19.0 / 18.0).epsilon(1e-14));
  CHECK(midya_rhs(1.0, 1.0 / 3.0, 1)(0.7) != midya_rhs(1.0, 1.0 / 3.0, 1, SechPower::second)(0.7));
  const double w = 15.0;
  CHECK(midya_rhs(1.0, 1.0 / 3.0, 1)(w) / (std::cosh(w) * std::cosh(w)) ==
        doctest::Approx(c.A4 + c.A3).epsilon(1e-6));
  CHECK_THROWS_AS(midya_constants(1.0, 1.0 / 3.0, 0), DomainError);
}
