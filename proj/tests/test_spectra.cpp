#include <cmath>

#include "doctest.h"
#include "dirac_sphere/errors.hpp"
#include "dirac_sphere/specfun.hpp"
#include "dirac_sphere/spectra.hpp"

using namespace dirac_sphere;
using namespace dirac_sphere::spectra;
using gauge::Model1Branch;
using gauge::Model1Params;

namespace {

Model1Params fig1() { return Model1Params::on_branch(0.4, Model1Branch::c2_half_c3_k_plus_1, 2.0); }
Model1Params near_half() {
  return Model1Params::on_branch(0.4999, Model1Branch::c2_half_c3_k_minus_1, 2.0);
}

}  // namespace

TEST_CASE("Model I energies") {
  const auto l = energy_model1(0, fig1(), 2.0, 1.0);
  CHECK(std::abs(l.E_sq_bar - (-4.34)) <= 1e-12);
  CHECK_FALSE(l.physical);
  CHECK(l.reason == "negative-radicand");
  CHECK(std::isnan(l.E_plus()));

  const auto m = energy_model1(0, near_half(), 2.0, 1.0);
  CHECK(m.E_sq_bar == doctest::Approx(0.218885).epsilon(1e-5));
  CHECK(m.radicand_ok);
  CHECK(m.E_plus() == doctest::Approx(0.467852).epsilon(1e-5));

  CHECK_THROWS_AS(energy_model1(0, Model1Params::on_branch(0.5, Model1Branch::c2_minus_half, 2.0),
                                2.0, 1.0),
                  ComplexExponentError);
  CHECK_THROWS_AS(energy_model1(0, Model1Params{0.3, 0.1, 0.2, std::nullopt}, 2.0, 1.0),
                  ConstraintError);
  CHECK_THROWS_AS(energy_model1(0, Model1Params::on_branch(0.0, Model1Branch::c2_minus_half, 2.0),
                                2.0, 1.0),
                  DivisionError);
  CHECK_THROWS_AS(energy_model1(0, near_half(), 2.0, 0.0), DomainError);
}

TEST_CASE("Model I classification") {
  const auto lines = classify_levels_model1(near_half(), 2.0, 1.0, 3);
  REQUIRE(lines.size() == 4);
  int radicand_ok = 0;
  for (const auto& l : lines) radicand_ok += l.radicand_ok ? 1 : 0;
  CHECK(radicand_ok == 1);
  CHECK(lines[0].radicand_ok);
  // The printed exponent is negative, so the closed form grows as w -> +inf.
  CHECK_FALSE(lines[0].normalizable);
  CHECK(lines[0].reason == "divergent-norm");
}

TEST_CASE("Model I eigenfunction") {
  const auto phi = wavefn_model1(0, fig1(), 2.0);
  CHECK(phi.raw(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double w = std::atanh(0.5);
  CHECK(phi.raw(w) == doctest::Approx(std::pow(0.5, -0.2) * std::pow(1.5, 0.4)).epsilon(1e-12));
  CHECK(phi.raw(w) == doctest::Approx(1.35096).epsilon(1e-6));
  CHECK(phi.divergent());

  const auto small = wavefn_model1(1, Model1Params::on_branch(1e-4, Model1Branch::c2_half_c3_k_minus_1, 2.0), 2.0);
  CHECK(small.divergent());
}

TEST_CASE("Model II energies") {
  const auto l0 = energy_model2(0, 1.0, 1.0 / 3.0, 2.0, 1.0);
  CHECK(std::abs(l0.E_sq_bar - 1.5066666666666666) <= 1e-12);
  CHECK(l0.E_plus() == doctest::Approx(1.22746).epsilon(1e-5));
  CHECK(l0.physical);
  const auto l1 = energy_model2(1, 1.0, 1.0 / 3.0, 2.0, 1.0);
  CHECK(std::abs(l1.E_plus() - 2.2) <= 1e-12);
  double prev = -1e300;
  for (int m = 0; m <= 6; ++m) {
    const double e = energy_model2(m, 1.0, 1.0 / 3.0, 2.0, 1.0).E_sq_bar;
    CHECK(e > prev);
    prev = e;
  }
  for (double k : {2.0, 3.0, 5.0}) {
    const auto ab = gauge::default_alpha_beta(k);
    for (int m = 0; m <= 10; ++m) CHECK(energy_model2(m, ab.alpha, ab.beta, k, 1.0).E_sq_bar > 0.0);
  }
  CHECK_THROWS_AS(energy_model2(0, 0.0, 0.5, 2.0, 1.0), DivisionError);
  CHECK_THROWS_AS(energy_model2(0, -1.0, 0.5, 2.0, 1.0), DomainError);
}

TEST_CASE("Model II eigenfunctions") {
  const auto phi = wavefn_model2(0, 1.0, 1.0 / 3.0);
  CHECK(phi.raw(0.0) == doctest::Approx(0.25).epsilon(1e-14));
  REQUIRE_FALSE(phi.divergent());
  const double norm = specfun::integrate([&](double w) { return phi(w) * phi(w); }, -30.0, 30.0,
                                         specfun::QuadratureOptions{1e-12, 1e-12, 4000})
                          .value;
  CHECK(std::abs(norm - 1.0) < 1e-7);
  CHECK(phi.poles().empty());

  const auto x1 = wavefn_model2(1, 1.0, 1.0 / 3.0, PolynomialKind::exceptional_x1);
  CHECK_FALSE(x1.divergent());

  // P_1 vanishes at the zero of the denominator, so m = 0 stays regular.
  const auto removable = wavefn_model2(0, 1.0, -1.0 / 3.0);
  CHECK(removable.poles().empty());
  CHECK_FALSE(removable.divergent());
  CHECK(std::isfinite(removable.raw(std::atanh(-0.5) + 1e-9)));

  const auto sing = wavefn_model2(1, 1.0, -1.0 / 3.0);
  REQUIRE(sing.poles().size() == 1);
  CHECK(sing.poles()[0] == doctest::Approx(std::atanh(-0.5)).epsilon(1e-14));
  CHECK(sing.divergent());
  REQUIRE(model2_wavefn_pole(1.0, -1.0 / 3.0).has_value());
  CHECK_FALSE(model2_wavefn_pole(1.0, 1.0 / 3.0).has_value());
}

TEST_CASE("R scaling and symmetry") {
  const double ER = energy_model2(1, 1.0, 1.0 / 3.0, 2.0, 1.0).E_plus();
  for (double R : {0.5, 1.0, 2.0, 10.0}) {
    const auto l = energy_model2(1, 1.0, 1.0 / 3.0, 2.0, R);
    CHECK(std::abs(l.E_plus() * R - ER) <= 1e-14);
    CHECK(l.E_plus() == -l.E_minus());
  }
  CHECK(std::abs(energy_model2(0, 1.0, 1.0 / 3.0, 2.0, 1e6).E_plus()) < 1e-5);
}

TEST_CASE("partner map") {
  const std::vector<double> e1{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> e2{1.0, 2.0, 3.0};
  const auto r = partner_map(e1, e2);
  REQUIRE(r.pairs.size() == 3);
  CHECK(r.max_deviation == 0.0);
  CHECK(r.pairs[0].m == 1);
  CHECK(partner_map(std::vector<double>{}, std::vector<double>{}).pairs.empty());
  const auto shifted = partner_map(std::vector<double>{0.0, 1.5}, std::vector<double>{1.0});
  CHECK(shifted.max_deviation == doctest::Approx(0.5));
}
