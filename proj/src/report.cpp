#include "dirac_sphere/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dirac_sphere/errors.hpp"
#include "dirac_sphere/spectra.hpp"

namespace dirac_sphere::oracle {

namespace {

constexpr double kConstancyWindow = 4.0;
constexpr int kConstancyPoints = 2001;

Claim make_claim(std::string id, std::string ref, std::string description, std::string metric_name,
                 double metric, double tolerance, bool forced, const Grid& grid) {
  Claim c;
  c.id = std::move(id);
  c.paper_ref = std::move(ref);
  c.description = std::move(description);
  c.metric_name = std::move(metric_name);
  c.metric = metric;
  c.tolerance = tolerance;
  c.forced = forced;
  c.within_tolerance = metric <= tolerance;
  if (forced) {
    c.verdict = c.within_tolerance ? Verdict::pass : Verdict::fail;
  } else {
    c.verdict = Verdict::recorded;
  }
  c.grid = grid;
  return c;
}

Claim constancy_claim(std::string id, std::string ref, std::string description, const RealFn& f,
                      const RealFn& g, const Grid& grid) {
  const ConstancyResult r = check_constancy(f, g);
  Claim c = make_claim(std::move(id), std::move(ref), std::move(description),
                       "max |difference - mean| on [-4, 4]", r.max_departure, r.tolerance, false,
                       grid);
  c.constant = r.mean;
  return c;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double max_relative_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    worst = std::max(worst, relative_gap(a[i], b[i]));
  }
  return worst;
}

std::string level_name(const char* prefix, int n) { return prefix + std::to_string(n); }

// ---------------------------------------------------------------------------

Claim symmetry_claim(const gauge::EffectivePotential& pot, const Grid& grid) {
  const SLMatrix m = build_sl_matrix(pot, grid);
  double asym = 0.0;
  for (int i = 0; i + 1 < m.size(); ++i) {
    asym = std::max(asym, std::abs(m.entry(i, i + 1) - m.entry(i + 1, i)));
  }
  return make_claim("sl-matrix-symmetry", "Sturm-Liouville operator -(cosh^2 w phi')' + V phi",
                    "flux-form matrix of the j=1 operator is exactly symmetric",
                    "max |M - M^T|", asym, 0.0, true, grid);
}

Claim convergence_claim() {
  const Grid coarse{M_PI / 2.0, 999};
  const Grid fine{M_PI / 2.0, 1999};
  auto one = [](double) { return 1.0; };
  auto zero = [](double) { return 0.0; };
  const auto ec = eigenvalues_lowest(build_sl_matrix(one, zero, coarse), 3);
  const auto ef = eigenvalues_lowest(build_sl_matrix(one, zero, fine), 3);
  double worst = 0.0;
  std::vector<std::pair<std::string, double>> values;
  for (int i = 0; i < 3; ++i) {
    const double exact = (i + 1.0) * (i + 1.0);
    const double ratio = (ec[i] - exact) / (ef[i] - exact);
    worst = std::max(worst, std::abs(ratio - 4.0));
    values.emplace_back(level_name("ratio_", i), ratio);
    values.emplace_back(level_name("eigenvalue_fine_", i), ef[i]);
  }
  Claim c = make_claim("box-convergence-order", "second-order flux scheme on a Dirichlet box",
                       "error ratio under N -> 2N+1 for p = 1, q = 0 on [-pi/2, pi/2]",
                       "max |ratio - 4|", worst, 0.5, true, fine);
  c.values = std::move(values);
  return c;
}

Claim isospectrality_claim(const gauge::GaugeField& A, double k, const Grid& grid, int count,
                           bool fault_injection) {
  FactorizedPair pair = compose_factorized(A.value, k, grid);
  if (fault_injection) {
    const std::size_t mid = pair.dtd.diag.size() / 2;
    pair.dtd.diag[mid] += 1e-3 * std::abs(pair.dtd.diag[mid]);
  }
  const IsospectralityCheck iso = check_isospectrality(pair, count);
  Claim c = make_claim("f.isospectrality", "first-order factorization of the Dirac operator",
                       "nonzero spectra of D D^T and D^T D coincide",
                       "max relative deviation", iso.max_relative_deviation, 1e-8, true, grid);
  c.values.emplace_back("dropped_zero", iso.dropped_zero);
  for (int i = 0; i < count; ++i) {
    c.values.emplace_back(level_name("dtd_", i), iso.dtd_eigenvalues[i]);
  }
  if (fault_injection) c.values.emplace_back("fault_injection", 1.0);
  return c;
}

void convention_claims(std::vector<Claim>& out, const gauge::GaugeField& A, double k,
                       const Grid& grid, int count) {
  const auto e1 = eigenvalues_lowest(build_sl_matrix(gauge::v_eff_general(A, k, 1), grid), count);
  const auto e2 = eigenvalues_lowest(build_sl_matrix(gauge::v_eff_general(A, k, 2), grid), count);
  for (const auto& conv : all_conventions()) {
    const FactorizedPair pair = compose_factorized(A.value, k, grid, conv);
    const auto d = eigenvalues_lowest(pair.dtd, count);
    const double dev1 = max_relative_gap(d, e1);
    const double dev2 = max_relative_gap(d, e2);
    Claim c = make_claim("f.convention." + conv.label(),
                         "factorized product against the effective potentials",
                         "lowest D^T D eigenvalues under this sign convention against the oracle "
                         "spectra of the j=1 and j=2 potentials",
                         "min over j of max relative deviation", std::min(dev1, dev2), 1e-4,
                         false, grid);
    c.values.emplace_back("deviation_j1", dev1);
    c.values.emplace_back("deviation_j2", dev2);
    for (int i = 0; i < count; ++i) c.values.emplace_back(level_name("dtd_", i), d[i]);
    out.push_back(std::move(c));
  }
}

Claim pairing_claim(std::string id, std::string description, const gauge::EffectivePotential& v1,
                    const gauge::EffectivePotential& v2, const Grid& grid, int count) {
  const auto e1 = eigenvalues_lowest(build_sl_matrix(v1, grid), count + 1);
  const auto e2 = eigenvalues_lowest(build_sl_matrix(v2, grid), count);
  const auto report = spectra::partner_map(e1, e2);
  Claim c = make_claim(std::move(id), "partner spectra share all levels except the ground state",
                       std::move(description), "max relative deviation of e1[m] vs e2[m-1]",
                       report.max_relative_deviation, 1e-4, false, grid);
  c.values.emplace_back("same_index_deviation", max_relative_gap(e1, e2));
  for (std::size_t i = 0; i < e1.size(); ++i) c.values.emplace_back(level_name("e1_", i), e1[i]);
  for (std::size_t i = 0; i < e2.size(); ++i) c.values.emplace_back(level_name("e2_", i), e2[i]);
  return c;
}

// Same residual restricted to rows with |w| <= 4, away from the window edges.
double interior_residual(const gauge::EffectivePotential& pot, const spectra::WaveFunctionSpec& phi,
                         double lambda, const Grid& grid) {
  const SLMatrix m = build_sl_matrix(pot, grid);
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(grid.N));
  for (double w : grid.interior_nodes()) x.push_back(phi(w));
  const std::vector<double> mx = m.apply(x);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < grid.N; ++i) {
    if (std::abs(grid.node(i + 1)) > kConstancyWindow) continue;
    num += (mx[i] - lambda * x[i]) * (mx[i] - lambda * x[i]);
    den += x[i] * x[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::numeric_limits<double>::infinity();
}

Claim residual_claim(std::string id, std::string ref, std::string description,
                     const gauge::EffectivePotential& pot, const spectra::WaveFunctionSpec& phi,
                     double lambda, const Grid& grid) {
  const double r = verify_eigenpair(pot, phi, lambda, grid);
  Claim c = make_claim(std::move(id), std::move(ref), std::move(description),
                       "||M phi - lambda phi|| / ||phi||", r, 1e-3, false, grid);
  c.values.emplace_back("lambda", lambda);
  c.values.emplace_back("interior_residual", interior_residual(pot, phi, lambda, grid));
  c.values.emplace_back("normalizable", phi.divergent() ? 0.0 : 1.0);
  return c;
}

void partner_claims(std::vector<Claim>& out, const gauge::GaugeField& A, double k, double R,
                    const Grid& grid, const std::optional<spectra::WaveFunctionSpec>& closed,
                    double closed_lambda) {
  const auto v1 = gauge::v_eff_general(A, k, 1);
  const auto v2 = gauge::v_eff_general(A, k, 2);
  const auto pairs = eig_lowest(build_sl_matrix(v1, grid), 1);
  const double lambda = pairs.front().value;
  if (lambda > 0.0) {
    const auto phi1 = grid_function(grid, pairs.front().vector);
    const auto phi2 =
        derive_partner_component(phi1, std::sqrt(lambda) / R, A.value, k, R, grid);
    Claim c = residual_claim("d.partner-component.oracle",
                             "first-order relation between the spinor components",
                             "component 2 built from the j=1 oracle ground state, tested "
                             "against the j=2 potential",
                             v2, phi2, lambda, grid);
    c.values.emplace_back("discrete_norm_sq", phi2.norm_sq().value_or(0.0));
    out.push_back(std::move(c));
  }
  if (closed && closed_lambda > 0.0) {
    const auto phi2 =
        derive_partner_component(*closed, std::sqrt(closed_lambda) / R, A.value, k, R, grid);
    Claim c = residual_claim("d.partner-component.closed-form",
                             "first-order relation between the spinor components",
                             "component 2 built from the closed-form ground state, tested "
                             "against the j=2 potential",
                             v2, phi2, closed_lambda, grid);
    c.values.emplace_back("discrete_norm_sq", phi2.norm_sq().value_or(0.0));
    out.push_back(std::move(c));
  }
}

Claim radicand_claim(const std::vector<spectra::SpectralLine>& lines, const Grid& grid) {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& l : lines) lowest = std::min(lowest, l.E_sq_bar);
  // Metric is the shortfall below zero, so "within tolerance" means all radicands >= 0.
  Claim c = make_claim("radicand-positivity", "closed-form energy levels",
                       "closed-form (E R)^2 is non-negative for levels 0..10",
                       "max(0, -min E_sq_bar)", std::max(0.0, -lowest), 0.0, false, grid);
  c.values.emplace_back("min_E_sq_bar", lowest);
  int physical = 0;
  for (const auto& l : lines) physical += l.physical ? 1 : 0;
  c.values.emplace_back("physical_levels", physical);
  return c;
}

// ---------------------------------------------------------------------------

void model1_claims(std::vector<Claim>& out, const ReportInput& in) {
  const auto& p = in.model1;
  const double k = in.k;
  const Grid& grid = in.grid;
  const auto A = gauge::gauge_model1(p);
  const auto general1 = gauge::v_eff_general(A, k, 1);
  const auto general2 = gauge::v_eff_general(A, k, 2);
  const auto expanded = gauge::v_eff_model1_raw(p, k);
  const auto closed1 = gauge::v_eff_model1(p, k, 1);
  const auto closed2 = gauge::v_eff_model1(p, k, 2);

  out.push_back(constancy_claim("a.general-vs-expansion", "Model I expanded potential",
                                "general effective potential minus its term-by-term "
                                "expansion for Model I",
                                general1.eval, expanded.eval, grid));
  out.push_back(constancy_claim("b.expansion-vs-closed.j1", "Rosen-Morse II form",
                                "expansion minus the closed j=1 form on the constraint branch",
                                expanded.eval, closed1.eval, grid));
  out.push_back(constancy_claim("b.general-vs-closed.j2", "Model I partner potential",
                                "general j=2 potential minus the closed j=2 form",
                                general2.eval, closed2.eval, grid));

  const int count = in.levels;
  const auto oracle1 = eigenvalues_lowest(build_sl_matrix(general1, grid), count);
  const auto oracle_closed = eigenvalues_lowest(build_sl_matrix(closed1, grid), count);
  for (int n = 0; n < count; ++n) {
    const auto line = spectra::energy_model1(n, p, k, in.R);
    Claim c = make_claim(level_name("c.energy.level-", n), "Model I energy levels",
                         "closed-form (E R)^2 against the oracle eigenvalue of the general j=1 "
                         "potential",
                         "|closed - oracle| / max(1, |oracle|)",
                         relative_gap(line.E_sq_bar, oracle1[n]), 1e-4, false, grid);
    c.values.emplace_back("closed_form", line.E_sq_bar);
    c.values.emplace_back("oracle_general_j1", oracle1[n]);
    c.values.emplace_back("oracle_closed_j1", oracle_closed[n]);
    c.values.emplace_back("physical", line.physical ? 1.0 : 0.0);
    out.push_back(std::move(c));
  }

  for (int n = 0; n < count; ++n) {
    const auto line = spectra::energy_model1(n, p, k, in.R);
    out.push_back(residual_claim(level_name("d.eigenfunction.level-", n),
                                 "Model I eigenfunctions",
                                 "closed-form eigenfunction against the closed j=1 potential",
                                 closed1, spectra::wavefn_model1(n, p, k), line.E_sq_bar, grid));
  }
  const auto ground = spectra::energy_model1(0, p, k, in.R);
  partner_claims(out, A, k, in.R, grid, spectra::wavefn_model1(0, p, k), ground.E_sq_bar);

  out.push_back(pairing_claim("e.pairing.general", "oracle spectra of the general j=1 and j=2 "
                              "potentials, level m against m-1",
                              general1, general2, grid, count));
  out.push_back(pairing_claim("e.pairing.closed-form", "oracle spectra of the closed j=1 and j=2 "
                              "forms, level m against m-1",
                              closed1, closed2, grid, count));

  convention_claims(out, A, k, grid, std::max(count, 3));

  std::vector<spectra::SpectralLine> lines;
  for (int n = 0; n <= 10; ++n) lines.push_back(spectra::energy_model1(n, p, k, in.R));
  out.push_back(radicand_claim(lines, grid));
}

void model2_claims(std::vector<Claim>& out, const ReportInput& in) {
  const auto& p = in.model2;
  const double k = p.k;
  const Grid& grid = in.grid;
  const auto A = gauge::gauge_model2(p);
  const auto general1 = gauge::v_eff_general(A, k, 1);
  const auto general2 = gauge::v_eff_general(A, k, 2);
  const auto expanded = gauge::v_eff_model2_raw(p);
  const auto closed1 = gauge::v_eff_model2(p, 1);
  const auto closed2 = gauge::v_eff_model2(p, 2);

  out.push_back(constancy_claim("a.general-vs-expansion", "Model II expanded potential",
                                "general effective potential minus its term-by-term "
                                "expansion for Model II",
                                general1.eval, expanded.eval, grid));
  out.push_back(constancy_claim("b.general-vs-closed.j1", "Model II regrouped potential",
                                "regrouped j=1 form minus the expansion",
                                closed1.eval, expanded.eval, grid));
  out.push_back(constancy_claim("b.general-vs-closed.j2", "Model II partner potential",
                                "general j=2 potential minus the printed j=2 form",
                                general2.eval, closed2.eval, grid));

  const int count = in.levels;
  const auto oracle1 = eigenvalues_lowest(build_sl_matrix(general1, grid), count);
  const auto oracle_closed = eigenvalues_lowest(build_sl_matrix(closed1, grid), count);
  for (int m = 0; m < count; ++m) {
    const auto line = spectra::energy_model2(m, p.alpha, p.beta, k, in.R);
    Claim c = make_claim(level_name("c.energy.level-", m), "Model II energy levels",
                         "closed-form (E R)^2 against the oracle eigenvalue of the general j=1 "
                         "potential",
                         "|closed - oracle| / max(1, |oracle|)",
                         relative_gap(line.E_sq_bar, oracle1[m]), 1e-4, false, grid);
    c.values.emplace_back("closed_form", line.E_sq_bar);
    c.values.emplace_back("oracle_general_j1", oracle1[m]);
    c.values.emplace_back("oracle_closed_j1", oracle_closed[m]);
    c.values.emplace_back("physical", line.physical ? 1.0 : 0.0);
    out.push_back(std::move(c));
  }

  for (int m = 0; m < count; ++m) {
    const auto line = spectra::energy_model2(m, p.alpha, p.beta, k, in.R);
    for (auto kind : {spectra::PolynomialKind::jacobi, spectra::PolynomialKind::exceptional_x1}) {
      const auto phi = spectra::wavefn_model2(m, p.alpha, p.beta, kind);
      Claim c = residual_claim(
          "d.eigenfunction." + spectra::to_string(kind) + ".level-" + std::to_string(m),
          "Model II eigenfunctions",
          "closed-form eigenfunction with " + spectra::to_string(kind) +
              " polynomial against the regrouped j=1 potential",
          closed1, phi, line.E_sq_bar, grid);
      c.values.emplace_back("residual_vs_general_j1",
                            verify_eigenpair(general1, phi, line.E_sq_bar, grid));
      out.push_back(std::move(c));
    }
  }
  const auto ground = spectra::energy_model2(0, p.alpha, p.beta, k, in.R);
  partner_claims(out, A, k, in.R, grid, spectra::wavefn_model2(0, p.alpha, p.beta),
                 ground.E_sq_bar);

  out.push_back(pairing_claim("e.pairing.general", "oracle spectra of the general j=1 and j=2 "
                              "potentials, level m against m-1",
                              general1, general2, grid, count));
  out.push_back(pairing_claim("e.pairing.closed-form", "oracle spectra of the regrouped j=1 and "
                              "printed j=2 forms, level m against m-1",
                              closed1, closed2, grid, count));

  convention_claims(out, A, k, grid, std::max(count, 3));

  for (auto power : {gauge::SechPower::first, gauge::SechPower::second}) {
    const auto rhs = gauge::midya_rhs(p.alpha, p.beta, 1, power);
    const std::string tag = power == gauge::SechPower::first ? "sech1" : "sech2";
    // v + (eps - v) is constant when the two potentials agree up to a shift.
    auto negated = [rhs](double w) { return -rhs(w); };
    out.push_back(constancy_claim("g.exceptional-family." + tag,
                                  "exceptional Jacobi potential family",
                                  "regrouped j=1 potential against the exceptional-polynomial "
                                  "potential (" + tag + " variant of the cross term)",
                                  closed1.eval, negated, grid));
  }

  std::vector<spectra::SpectralLine> lines;
  for (int m = 0; m <= 10; ++m) lines.push_back(spectra::energy_model2(m, p.alpha, p.beta, k, in.R));
  out.push_back(radicand_claim(lines, grid));
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::recorded:
      break;
  }
  return "recorded";
}

bool VerificationReport::forced_claims_pass() const {
  return std::all_of(claims.begin(), claims.end(),
                     [](const Claim& c) { return !c.forced || c.verdict == Verdict::pass; });
}

const Claim* VerificationReport::find(const std::string& id) const {
  for (const auto& c : claims) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

ConstancyResult check_constancy(const RealFn& f, const RealFn& g) {
  std::vector<double> diff(kConstancyPoints);
  const double step = 2.0 * kConstancyWindow / (kConstancyPoints - 1);
  double sum = 0.0;
  for (int i = 0; i < kConstancyPoints; ++i) {
    const double w = -kConstancyWindow + i * step;
    diff[i] = f(w) - g(w);
    sum += diff[i];
  }
  ConstancyResult r;
  r.mean = sum / kConstancyPoints;
  for (double d : diff) r.max_departure = std::max(r.max_departure, std::abs(d - r.mean));
  if (!std::isfinite(r.mean)) r.max_departure = std::numeric_limits<double>::infinity();
  r.tolerance = 1e-9 * (1.0 + std::abs(r.mean));
  return r;
}

VerificationReport consistency_report(const ReportInput& in) {
  if (in.model != 1 && in.model != 2) throw DomainError("model must be 1 or 2");
  if (in.levels < 1) throw DomainError("levels must be at least 1");
  in.grid.validate();
  VerificationReport report;
  report.model = in.model;
  report.k = in.model == 2 ? in.model2.k : in.k;
  report.R = in.R;
  report.levels = in.levels;
  report.grid = in.grid;

  const gauge::GaugeField A =
      in.model == 1 ? gauge::gauge_model1(in.model1) : gauge::gauge_model2(in.model2);
  const auto general1 = gauge::v_eff_general(A, report.k, 1);

  report.claims.push_back(symmetry_claim(general1, in.grid));
  report.claims.push_back(convergence_claim());
  report.claims.push_back(
      isospectrality_claim(A, report.k, in.grid, std::max(in.levels, 5), in.fault_injection));
  if (in.model == 1) {
    model1_claims(report.claims, in);
  } else {
    model2_claims(report.claims, in);
  }
  return report;
}

}  // namespace dirac_sphere::oracle
