#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dirac_sphere::gauge {

using RealFn = std::function<double(double)>;

/// Azimuthal gauge component A_u(w) with its exact derivative and the
/// locations of any real poles.
struct GaugeField {
  RealFn value;
  RealFn derivative;
  std::vector<double> poles;

  double operator()(double w) const { return value(w); }
};

/// Scalar potential of one spinor component in the Sturm-Liouville form
///   -(cosh^2 w phi')' + V(w) phi = E_bar^2 phi.
struct EffectivePotential {
  int component = 1;  // 1 or 2
  std::string label;
  RealFn eval;
  std::optional<double> asymptote_plus;   // limit w -> +inf when finite
  std::optional<double> asymptote_minus;  // limit w -> -inf when finite
  std::vector<double> poles;

  double operator()(double w) const { return eval(w); }
};

// ---------------------------------------------------------------------------
// Model I: A_u = C1 sech^2 w + C2 tanh w + C3

/// The four (C2, C3) families that remove the cosh^2, sinh^2 and
/// cosh*sinh terms from the expanded potential.
enum class Model1Branch {
  c2_minus_half,        // (-1/2, k)
  c2_half_c3_k_minus_1, // ( 1/2, k - 1)
  c2_half_c3_k_plus_1,  // ( 1/2, k + 1)
  c2_three_halves,      // ( 3/2, k)
};

std::string to_string(Model1Branch b);
Model1Branch model1_branch_from_string(const std::string& name);

struct BranchPair {
  double C2 = 0.0;
  double C3 = 0.0;
  Model1Branch branch = Model1Branch::c2_minus_half;
};

std::array<BranchPair, 4> model1_branches(double k);

struct Model1Params {
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  std::optional<Model1Branch> branch;

  static Model1Params on_branch(double C1, Model1Branch branch, double k);

  /// Coefficient of cosh w sinh w in the expanded potential: (2 C2 - 1)(C3 - k).
  double cross_coefficient(double k) const;
  /// Combined cosh^2 coefficient after sinh^2 = cosh^2 - 1:
  /// C2^2 - C2 - 3/4 + (C3 - k)^2.
  double quadratic_coefficient(double k) const;
  bool satisfies_constraints(double k, double tol = 1e-12) const;
};

RealFn a_u_model1(const Model1Params& p);
GaugeField gauge_model1(const Model1Params& p);

// ---------------------------------------------------------------------------
// Model II: A_u = C1 sech^2 + C2 sech^2 tanh / (a1 tanh - a2) + C3 tanh + C4

enum class Sign { plus = 1, minus = -1 };

inline double value_of(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }

struct Model2Params {
  double C1 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double k = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double C4 = 0.0;
  double C5 = 0.0;
  double C6 = 0.0;
  double alpha = 0.0;  // (a2 - a1)/2
  double beta = 0.0;   // (a2 + a1)/2

  /// Real solution of a1 tanh w = a2, present when |a2/a1| < 1.
  std::optional<double> pole() const;

  static Model2Params from_alpha_beta(double C1, double alpha, double beta, double k);
};

/// Derived constants C2..C6 from (C1, a1, a2, k). Throws
/// DegenerateParametersError for a1 == 0 or a1^2 == a2^2, InvalidBranchError
/// when the implied alpha or beta is <= -1.
Model2Params model2_derive_params(double C1, double a1, double a2, double k);

RealFn a_u_model2(const Model2Params& p);
GaugeField gauge_model2(const Model2Params& p);

struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
};

/// alpha = sign_a / (1 - k), beta = sign_b / (1 + k).
AlphaBeta alpha_beta(double k, Sign sign_a, Sign sign_b);

/// First sign choice (in the order ++, +-, -+, --) that is admissible and has
/// alpha*beta > 0, which keeps the pole of a1 tanh w - a2 off the real line.
AlphaBeta default_alpha_beta(double k, Sign* sign_a = nullptr, Sign* sign_b = nullptr);

// ---------------------------------------------------------------------------
// Effective potentials

/// V^j = ((k - A)^2 + (-1)^j A') cosh^2 + (-1)^j (A - k) cosh sinh
///       - 3/4 cosh^2 + 1/4.
EffectivePotential v_eff_general(const GaugeField& A, double k, int j);
EffectivePotential v_eff_general(const RealFn& A, const RealFn& dA, double k, int j);

/// Term-by-term expansion of the j = 1 potential for Model I, any C2, C3.
EffectivePotential v_eff_model1_raw(const Model1Params& p, double k);

/// Closed forms on a constraint branch: Rosen-Morse II for j = 1 and its
/// partner for j = 2. Throws ConstraintError off the branches.
EffectivePotential v_eff_model1(const Model1Params& p, double k, int j);

/// Term-by-term expansion of the j = 1 potential for Model II.
EffectivePotential v_eff_model2_raw(const Model2Params& p);

/// Regrouped closed forms (j = 1 after adding and subtracting the C5, C6
/// terms; j = 2 its partner), evaluated as printed.
EffectivePotential v_eff_model2(const Model2Params& p, int j);

// ---------------------------------------------------------------------------
// Exceptional-polynomial potential family (tanh argument, lambda = 1)

struct MidyaConstants {
  double A1, A2, A3, A4, A5, A6;
};

MidyaConstants midya_constants(double alpha, double beta, int n);

/// Power of sech multiplying the A5 term.
enum class SechPower { first = 1, second = 2 };

/// epsilon - v_eff as a function of w:
///   A6 sech^2/(a1 t - a2)^2 + A5 sech^p/(a1 t - a2) + A4 cosh^2
///   + A3 sinh cosh + A2 + A1 t,   a1 = beta - alpha, a2 = beta + alpha.
RealFn midya_rhs(double alpha, double beta, int n, SechPower power = SechPower::first);

}  // namespace dirac_sphere::gauge
