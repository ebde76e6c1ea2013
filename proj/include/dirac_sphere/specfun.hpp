#pragma once

#include <functional>

namespace dirac_sphere::specfun {

/// Degree and parameters of a classical Jacobi polynomial P_n^{(alpha,beta)}.
struct JacobiIndex {
  int n = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Throws DomainError unless n >= 0, alpha > -1 and beta > -1.
void validate(const JacobiIndex& idx);

/// Polynomial value plus a flag set when x lies outside [-1, 1] by more than
/// the clamping slack.
struct TaggedValue {
  double value = 0.0;
  bool outside_interval = false;
};

/// Tolerance within which |x| > 1 is attributed to rounding and clamped.
inline constexpr double kClampSlack = 1e-12;

TaggedValue jacobi_tagged(const JacobiIndex& idx, double x);

/// P_n^{(alpha,beta)}(x) by the ascending three-term recurrence in degree.
double jacobi(const JacobiIndex& idx, double x);

/// d/dx P_n^{(alpha,beta)}(x) = (n + alpha + beta + 1)/2 * P_{n-1}^{(alpha+1,beta+1)}(x).
double jacobi_deriv(const JacobiIndex& idx, double x);

/// Exceptional X1 Jacobi polynomial of degree n >= 1 (alpha != beta):
///   -1/2 (x - b) P_{n-1} + (b P_{n-1} - P_{n-2}) / (alpha + beta + 2n - 2),
/// with b = (beta + alpha)/(beta - alpha). Orthogonal for the weight
/// (1-x)^alpha (1+x)^beta / (x - b)^2 when alpha*beta > 0.
double exceptional_jacobi_x1(int n, double alpha, double beta, double x);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int panels = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_panels = 4000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
/// Never samples the endpoints, so integrable endpoint singularities are fine.
/// Throws IntegrationError (with the partial estimate) when the error target
/// is not met within the panel budget or the integrand turns non-finite.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opts);

inline QuadratureResult integrate(const std::function<double(double)>& f,
                                  double a, double b, double tol) {
  return integrate(f, a, b, QuadratureOptions{tol, 0.0, 4000});
}

}  // namespace dirac_sphere::specfun
