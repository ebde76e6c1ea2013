#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dirac_sphere/gauge.hpp"

namespace dirac_sphere::spectra {

/// One closed-form energy level. E_sq_bar is the dimensionless (E R)^2.
struct SpectralLine {
  int level = 0;
  double E_sq_bar = 0.0;
  double R = 1.0;
  bool radicand_ok = false;   // E_sq_bar >= 0
  bool normalizable = false;  // closed-form eigenfunction has finite norm
  bool physical = false;      // radicand_ok && normalizable
  std::string reason;         // "ok", "negative-radicand" or "divergent-norm"

  /// Energies -sqrt(E_sq_bar)/R and +sqrt(E_sq_bar)/R; NaN when E_sq_bar < 0.
  double E_minus() const;
  double E_plus() const;
};

/// Shape of a closed-form eigenfunction, written in t = tanh w and supplied
/// with the exact 1 - t and 1 + t so that evaluations stay accurate near the
/// ends of the line.
using TanhShape = std::function<double(double t, double one_minus_t, double one_plus_t)>;

/// A spinor component phi(w) = scale * shape(tanh w), normalized over the
/// real line when its norm is finite.
class WaveFunctionSpec {
 public:
  WaveFunctionSpec(int component, TanhShape shape, std::vector<double> poles = {});

  /// Wrap an arbitrary w-function (e.g. a grid interpolant); the norm is
  /// whatever the caller supplies.
  static WaveFunctionSpec from_function(int component, std::function<double(double)> fn,
                                        std::optional<double> norm_sq);

  int component() const noexcept { return component_; }
  double operator()(double w) const;
  /// Unnormalized shape value at w.
  double raw(double w) const;

  /// Squared norm of the unnormalized shape, or nullopt when it diverges.
  std::optional<double> norm_sq() const noexcept { return norm_sq_; }
  bool divergent() const noexcept { return !norm_sq_.has_value(); }
  double scale() const noexcept { return scale_; }
  const std::vector<double>& poles() const noexcept { return poles_; }

 private:
  int component_;
  TanhShape shape_;
  std::function<double(double)> direct_;
  std::optional<double> norm_sq_;
  double scale_ = 1.0;
  std::vector<double> poles_;
};

/// Integral of shape(t)^2 dw over the line, through dw = dt/(1 - t^2).
std::optional<double> tanh_norm_sq(const TanhShape& shape);

// ---------------------------------------------------------------------------
// Model I (Rosen-Morse II branch)

/// (-1 + sqrt(1 - 4 C1^2))/2. Throws ComplexExponentError for |C1| >= 1/2.
double model1_exponent(double C1);

SpectralLine energy_model1(int n, const gauge::Model1Params& p, double k, double R);
WaveFunctionSpec wavefn_model1(int n, const gauge::Model1Params& p, double k);
std::vector<SpectralLine> classify_levels_model1(const gauge::Model1Params& p, double k,
                                                 double R, int n_max);

// ---------------------------------------------------------------------------
// Model II (exceptional-polynomial branch)

/// Which polynomial fills the P_{m+1}^{(alpha,beta)} slot of the eigenfunction.
enum class PolynomialKind { jacobi, exceptional_x1 };

std::string to_string(PolynomialKind kind);

SpectralLine energy_model2(int m, double alpha, double beta, double k, double R);
WaveFunctionSpec wavefn_model2(int m, double alpha, double beta,
                               PolynomialKind kind = PolynomialKind::jacobi);

/// Zero of alpha + beta + (alpha - beta) tanh w, when it lies on the line.
std::optional<double> model2_wavefn_pole(double alpha, double beta);

// ---------------------------------------------------------------------------
// Partner pairing: level m of system 1 against level m - 1 of system 2.

struct PairedLevel {
  int m = 0;
  double e1 = 0.0;
  double e2 = 0.0;
  double deviation = 0.0;           // |e1 - e2|
  double relative_deviation = 0.0;  // |e1 - e2| / max(1, |e1|)
};

struct PairingReport {
  std::vector<PairedLevel> pairs;
  double max_deviation = 0.0;
  double max_relative_deviation = 0.0;
};

PairingReport partner_map(const std::vector<double>& e_sq_1, const std::vector<double>& e_sq_2);
PairingReport partner_map(const std::vector<SpectralLine>& lines1,
                          const std::vector<SpectralLine>& lines2);

}  // namespace dirac_sphere::spectra
