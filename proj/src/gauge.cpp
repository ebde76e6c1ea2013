#include "dirac_sphere/gauge.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dirac_sphere/errors.hpp"

namespace dirac_sphere::gauge {

namespace {

double sech(double w) { return 1.0 / std::cosh(w); }

void check_component(int j) {
  if (j != 1 && j != 2) throw DomainError("spinor component must be 1 or 2");
}

// Limits of c2 cosh^2 + cs cosh sinh + ct tanh + c0 (plus terms that vanish
// at infinity). Exponential growth cancels only when c2 = -cs (w -> +inf) or
// c2 = cs (w -> -inf); the remainder then tends to c2/2.
struct HyperbolicForm {
  double c2, cs, ct, c0;
};

std::optional<double> limit_plus(const HyperbolicForm& f) {
  const double scale = 1.0 + std::abs(f.c2) + std::abs(f.cs);
  if (std::abs(f.c2 + f.cs) > 1e-12 * scale) return std::nullopt;
  return 0.5 * f.c2 + f.ct + f.c0;
}

std::optional<double> limit_minus(const HyperbolicForm& f) {
  const double scale = 1.0 + std::abs(f.c2) + std::abs(f.cs);
  if (std::abs(f.c2 - f.cs) > 1e-12 * scale) return std::nullopt;
  return 0.5 * f.c2 - f.ct + f.c0;
}

// a1 tanh w - a2, refusing to evaluate on the pole.
double denominator(const Model2Params& p, double t, double w) {
  const double d = p.a1 * t - p.a2;
  if (std::abs(d) <= 64.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(p.a1 * t) + std::abs(p.a2))) {
    std::ostringstream os;
    os << "pole of a1 tanh w - a2 at w = " << w;
    throw PoleError(os.str(), w);
  }
  return d;
}

std::vector<double> poles_of(const Model2Params& p) {
  if (auto w = p.pole()) return {*w};
  return {};
}

}  // namespace

// ---------------------------------------------------------------------------
// Model I

std::string to_string(Model1Branch b) {
  switch (b) {
    case Model1Branch::c2_minus_half: return "c2_minus_half";
    case Model1Branch::c2_half_c3_k_minus_1: return "c2_half_c3_k_minus_1";
    case Model1Branch::c2_half_c3_k_plus_1: return "c2_half_c3_k_plus_1";
    case Model1Branch::c2_three_halves: return "c2_three_halves";
  }
  return "unknown";
}

Model1Branch model1_branch_from_string(const std::string& name) {
  for (auto b : {Model1Branch::c2_minus_half, Model1Branch::c2_half_c3_k_minus_1,
                 Model1Branch::c2_half_c3_k_plus_1, Model1Branch::c2_three_halves}) {
    if (to_string(b) == name) return b;
  }
  throw DomainError("unknown Model I branch '" + name + "'");
}

std::array<BranchPair, 4> model1_branches(double k) {
  return {BranchPair{-0.5, k, Model1Branch::c2_minus_half},
          BranchPair{0.5, k - 1.0, Model1Branch::c2_half_c3_k_minus_1},
          BranchPair{0.5, k + 1.0, Model1Branch::c2_half_c3_k_plus_1},
          BranchPair{1.5, k, Model1Branch::c2_three_halves}};
}

Model1Params Model1Params::on_branch(double C1, Model1Branch branch, double k) {
  for (const auto& pair : model1_branches(k)) {
    if (pair.branch == branch) return Model1Params{C1, pair.C2, pair.C3, branch};
  }
  throw DomainError("unreachable Model I branch");
}

double Model1Params::cross_coefficient(double k) const { return (2.0 * C2 - 1.0) * (C3 - k); }

double Model1Params::quadratic_coefficient(double k) const {
  return C2 * C2 - C2 - 0.75 + (C3 - k) * (C3 - k);
}

bool Model1Params::satisfies_constraints(double k, double tol) const {
  const double scale = 1.0 + C2 * C2 + (C3 - k) * (C3 - k);
  return std::abs(cross_coefficient(k)) <= tol * scale &&
         std::abs(quadratic_coefficient(k)) <= tol * scale;
}

RealFn a_u_model1(const Model1Params& p) {
  return [p](double w) {
    const double s = sech(w);
    return p.C1 * s * s + p.C2 * std::tanh(w) + p.C3;
  };
}

GaugeField gauge_model1(const Model1Params& p) {
  GaugeField g;
  g.value = a_u_model1(p);
  g.derivative = [p](double w) {
    const double s = sech(w);
    return -2.0 * p.C1 * s * s * std::tanh(w) + p.C2 * s * s;
  };
  return g;
}

// ---------------------------------------------------------------------------
// Model II

std::optional<double> Model2Params::pole() const {
  const double r = a2 / a1;
  if (std::abs(r) < 1.0) return std::atanh(r);
  return std::nullopt;
}

Model2Params model2_derive_params(double C1, double a1, double a2, double k) {
  if (a1 == 0.0 || a1 * a1 == a2 * a2) {
    std::ostringstream os;
    os << "degenerate Model II parameters a1=" << a1 << ", a2=" << a2
       << " (need a1 != 0 and a1^2 != a2^2)";
    throw DegenerateParametersError(os.str());
  }
  Model2Params p;
  p.C1 = C1;
  p.a1 = a1;
  p.a2 = a2;
  p.k = k;
  p.alpha = 0.5 * (a2 - a1);
  p.beta = 0.5 * (a2 + a1);
  if (!(p.alpha > -1.0) || !(p.beta > -1.0)) {
    std::ostringstream os;
    os << "Model II needs alpha > -1 and beta > -1, got alpha=" << p.alpha << ", beta=" << p.beta;
    throw InvalidBranchError(os.str());
  }
  const double d = a1 * a1 - a2 * a2;
  p.C2 = -a1 * C1;
  p.C3 = -(d - 2.0 * a1 * a2 * k) / (2.0 * d);
  p.C4 = -a2 * a2 * k / d;
  p.C5 = -2.0 * a1 * C1 * p.C3;
  p.C6 = 2.0 * a1 * a1 * k * C1 / d;
  return p;
}

Model2Params Model2Params::from_alpha_beta(double C1, double alpha, double beta, double k) {
  return model2_derive_params(C1, beta - alpha, beta + alpha, k);
}

RealFn a_u_model2(const Model2Params& p) {
  return [p](double w) {
    const double t = std::tanh(w);
    const double s2 = sech(w) * sech(w);
    const double d = denominator(p, t, w);
    return p.C1 * s2 + p.C2 * s2 * t / d + p.C3 * t + p.C4;
  };
}

GaugeField gauge_model2(const Model2Params& p) {
  GaugeField g;
  g.value = a_u_model2(p);
  g.derivative = [p](double w) {
    const double t = std::tanh(w);
    const double s2 = sech(w) * sech(w);
    const double d = denominator(p, t, w);
    // (sech^2 t)' = sech^4 - 2 sech^2 t^2, (a1 t - a2)' = a1 sech^2
    const double num = s2 * t;
    const double dnum = s2 * s2 - 2.0 * s2 * t * t;
    const double ratio = dnum / d - num * p.a1 * s2 / (d * d);
    return -2.0 * p.C1 * s2 * t + p.C2 * ratio + p.C3 * s2;
  };
  g.poles = poles_of(p);
  return g;
}

AlphaBeta alpha_beta(double k, Sign sign_a, Sign sign_b) {
  if (k == 1.0 || k == -1.0) {
    std::ostringstream os;
    os << "alpha/beta relation has a pole at k = " << k;
    throw PoleError(os.str(), k);
  }
  AlphaBeta ab{value_of(sign_a) / (1.0 - k), value_of(sign_b) / (1.0 + k)};
  if (!(ab.alpha > -1.0) || !(ab.beta > -1.0) || ab.alpha == ab.beta) {
    std::ostringstream os;
    os << "sign branch gives inadmissible alpha=" << ab.alpha << ", beta=" << ab.beta
       << " (need both > -1 and alpha != beta)";
    throw InvalidBranchError(os.str());
  }
  return ab;
}

AlphaBeta default_alpha_beta(double k, Sign* sign_a, Sign* sign_b) {
  for (Sign sa : {Sign::plus, Sign::minus}) {
    for (Sign sb : {Sign::plus, Sign::minus}) {
      try {
        const AlphaBeta ab = alpha_beta(k, sa, sb);
        if (ab.alpha * ab.beta > 0.0) {
          if (sign_a) *sign_a = sa;
          if (sign_b) *sign_b = sb;
          return ab;
        }
      } catch (const InvalidBranchError&) {
      }
    }
  }
  std::ostringstream os;
  os << "no admissible (alpha, beta) branch with alpha*beta > 0 at k = " << k;
  throw InvalidBranchError(os.str());
}

// ---------------------------------------------------------------------------
// Effective potentials

EffectivePotential v_eff_general(const RealFn& A, const RealFn& dA, double k, int j) {
  check_component(j);
  const double sign = j == 1 ? -1.0 : 1.0;
  EffectivePotential v;
  v.component = j;
  v.label = "general-j" + std::to_string(j);
  v.eval = [A, dA, k, sign](double w) {
    const double a = A(w);
    const double c = std::cosh(w);
    const double s = std::sinh(w);
    return ((k - a) * (k - a) + sign * dA(w)) * c * c + sign * (a - k) * c * s -
           0.75 * c * c + 0.25;
  };
  return v;
}

EffectivePotential v_eff_general(const GaugeField& A, double k, int j) {
  EffectivePotential v = v_eff_general(A.value, A.derivative, k, j);
  v.poles = A.poles;
  return v;
}

EffectivePotential v_eff_model1_raw(const Model1Params& p, double k) {
  EffectivePotential v;
  v.component = 1;
  v.label = "model1-expanded";
  v.eval = [p, k](double w) {
    const double c = std::cosh(w);
    const double s = std::sinh(w);
    const double se = sech(w);
    const double t = std::tanh(w);
    return -p.C2 + 2.0 * p.C1 * p.C3 - 2.0 * p.C1 * k +
           ((p.C3 - k) * (p.C3 - k) - 0.5) * c * c + p.C1 * p.C1 * se * se +
           (-p.C3 + 2.0 * p.C2 * p.C3 + k - 2.0 * p.C2 * k) * c * s +
           (p.C2 * p.C2 - p.C2 - 0.25) * s * s + p.C1 * (1.0 + 2.0 * p.C2) * t;
  };
  return v;
}

EffectivePotential v_eff_model1(const Model1Params& p, double k, int j) {
  check_component(j);
  if (!p.satisfies_constraints(k)) {
    std::ostringstream os;
    os << "Model I parameters (C2=" << p.C2 << ", C3=" << p.C3 << ", k=" << k
       << ") are not on a constraint branch";
    throw ConstraintError(os.str());
  }
  EffectivePotential v;
  v.component = j;
  if (j == 1) {
    v.label = "model1-rosen-morse-j1";
    const double ct = p.C1 * (1.0 + 2.0 * p.C2);
    const double c0 = (p.C2 - 0.5) * (p.C2 - 0.5) + 2.0 * p.C1 * (p.C3 - k) - 0.5;
    v.eval = [p, ct, c0](double w) {
      const double se = sech(w);
      return p.C1 * p.C1 * se * se + ct * std::tanh(w) + c0;
    };
    v.asymptote_plus = ct + c0;
    v.asymptote_minus = -ct + c0;
  } else {
    v.label = "model1-partner-j2";
    const HyperbolicForm f{2.0 * p.C2, 2.0 * (p.C3 - k), p.C1 * (-1.0 + 2.0 * p.C2),
                           (p.C2 + 0.5) * (p.C2 + 0.5) - 2.0 * p.C1 * (p.C3 - k) - 0.5};
    v.eval = [p, f](double w) {
      const double se = sech(w);
      const double c = std::cosh(w);
      return p.C1 * p.C1 * se * se + f.ct * std::tanh(w) + f.c2 * c * c +
             f.cs * c * std::sinh(w) + f.c0;
    };
    v.asymptote_plus = limit_plus(f);
    v.asymptote_minus = limit_minus(f);
  }
  return v;
}

EffectivePotential v_eff_model2_raw(const Model2Params& p) {
  EffectivePotential v;
  v.component = 1;
  v.label = "model2-expanded";
  v.poles = poles_of(p);
  v.eval = [p](double w) {
    const double k = p.k;
    const double c = std::cosh(w);
    const double s = std::sinh(w);
    const double t = std::tanh(w);
    const double s2 = sech(w) * sech(w);
    const double d = denominator(p, t, w);
    return 0.25 - p.C3 + 2.0 * p.C1 * p.C4 - 2.0 * p.C1 * k +
           (-0.75 + (k - p.C4) * (k - p.C4)) * c * c + p.C1 * p.C1 * s2 +
           p.C3 * (p.C3 - 1.0) * s * s +
           (k - p.C4 + 2.0 * p.C3 * p.C4 - 2.0 * p.C3 * k) * c * s +
           p.C1 * (1.0 + 2.0 * p.C3) * t - p.C2 * s2 / d +
           p.a1 * p.C2 * s2 * t / (d * d) + p.C2 * p.C2 * s2 * t * t / (d * d) +
           2.0 * p.C2 * (p.C4 - k) * t / d + 2.0 * p.C1 * p.C2 * s2 * t / d +
           p.C2 * (1.0 + 2.0 * p.C3) * t * t / d;
  };
  return v;
}

EffectivePotential v_eff_model2(const Model2Params& p, int j) {
  check_component(j);
  const double k = p.k;
  EffectivePotential v;
  v.component = j;
  v.poles = poles_of(p);
  if (j == 1) {
    v.label = "model2-regrouped-j1";
    const HyperbolicForm f{(k - p.C4) * (k - p.C4) + (p.C3 - 0.5) * (p.C3 - 0.5) - 1.0,
                           k - p.C4 + 2.0 * p.C3 * p.C4 - 2.0 * p.C3 * k,
                           p.C1 * (1.0 + 2.0 * p.C3),
                           0.25 - p.C6 + 2.0 * p.C1 * p.C4 - 2.0 * p.C1 * k - p.C3 * p.C3};
    v.eval = [p, f](double w) {
      const double c = std::cosh(w);
      const double t = std::tanh(w);
      const double s2 = sech(w) * sech(w);
      const double d = denominator(p, t, w);
      return f.c0 + f.c2 * c * c + f.cs * c * std::sinh(w) + f.ct * t -
             (p.C2 + p.C5) * s2 / d +
             (p.a2 * p.a2 * p.C1 * p.C1 - p.a1 * p.a2 * p.C1) * s2 / (d * d);
    };
    v.asymptote_plus = limit_plus(f);
    v.asymptote_minus = limit_minus(f);
  } else {
    v.label = "model2-partner-j2";
    // sinh^2 = cosh^2 - 1 folded into c2 and c0.
    const double sh2 = p.C3 * (1.0 + p.C3);
    HyperbolicForm f{(k - p.C4) * (k - p.C4) - 0.75 + sh2,
                     p.C4 - k + 2.0 * p.C3 * p.C4 - 2.0 * p.C3 * k,
                     p.C1 * (-1.0 + 2.0 * p.C3),
                     0.25 - p.C3 + 2.0 * p.C1 * p.C4 - 2.0 * p.C1 * k - sh2};
    v.eval = [p, f, sh2](double w) {
      const double k = p.k;
      const double c = std::cosh(w);
      const double s = std::sinh(w);
      const double t = std::tanh(w);
      const double s2 = sech(w) * sech(w);
      const double d = denominator(p, t, w);
      return 0.25 - p.C3 + 2.0 * p.C1 * p.C4 - 2.0 * p.C1 * k +
             ((k - p.C4) * (k - p.C4) - 0.75) * c * c + sh2 * s * s + f.cs * c * s +
             f.ct * t - p.a1 * p.C1 * s2 / d +
             p.a1 * p.a1 * p.C1 * (1.0 + p.C1 * t) * s2 * t / (d * d) +
             2.0 * p.a1 * p.C1 * (k - p.C4) * t / d -
             2.0 * p.a1 * p.C1 * p.C1 * s2 * t / d +
             p.a1 * p.C1 * (1.0 - 2.0 * p.C3) * t * t / d;
    };
    // Rational terms with a bare tanh survive at infinity.
    auto rational_limit = [&p](double t) {
      const double d = p.a1 * t - p.a2;
      return 2.0 * p.a1 * p.C1 * (p.k - p.C4) * t / d + p.a1 * p.C1 * (1.0 - 2.0 * p.C3) / d;
    };
    if (auto lp = limit_plus(f)) v.asymptote_plus = *lp + rational_limit(1.0);
    if (auto lm = limit_minus(f)) v.asymptote_minus = *lm + rational_limit(-1.0);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Exceptional-polynomial potential family

MidyaConstants midya_constants(double alpha, double beta, int n) {
  if (n < 1) throw DomainError("midya_constants: n must be >= 1");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("midya_constants: alpha and beta must exceed -1");
  }
  if (alpha * beta == 0.0) throw DivisionError("midya_constants: alpha*beta == 0");
  const double ab = alpha * beta;
  const double sum = beta + alpha;
  const double diff = beta - alpha;
  MidyaConstants c{};
  c.A1 = (beta * beta - alpha * alpha) / (2.0 * ab);
  c.A2 = n * n + (sum - 1.0) * n + 0.25 * (sum * sum - 2.0 * sum - 4.0) +
         (beta * beta + alpha * alpha) / (2.0 * ab);
  c.A3 = 0.5 * (beta * beta - alpha * alpha);
  c.A4 = -0.5 * (beta * beta + alpha * alpha - 2.0);
  c.A5 = sum * diff * diff / (2.0 * ab);
  c.A6 = -2.0 * diff * diff;
  return c;
}

RealFn midya_rhs(double alpha, double beta, int n, SechPower power) {
  const MidyaConstants c = midya_constants(alpha, beta, n);
  Model2Params geom;
  geom.a1 = beta - alpha;
  geom.a2 = beta + alpha;
  const bool squared = power == SechPower::second;
  return [c, geom, squared](double w) {
    const double t = std::tanh(w);
    const double se = sech(w);
    const double ch = std::cosh(w);
    const double d = denominator(geom, t, w);
    const double a5_factor = squared ? se * se : se;
    return c.A6 * se * se / (d * d) + c.A5 * a5_factor / d + c.A4 * ch * ch +
           c.A3 * std::sinh(w) * ch + c.A2 + c.A1 * t;
  };
}

}  // namespace dirac_sphere::gauge
