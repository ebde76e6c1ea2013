#include "dirac_sphere/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "dirac_sphere/errors.hpp"

namespace dirac_sphere::specfun {

void validate(const JacobiIndex& idx) {
  if (idx.n < 0 || !(idx.alpha > -1.0) || !(idx.beta > -1.0)) {
    std::ostringstream os;
    os << "invalid Jacobi index (n=" << idx.n << ", alpha=" << idx.alpha
       << ", beta=" << idx.beta << "): need n >= 0, alpha > -1, beta > -1";
    throw DomainError(os.str());
  }
}

namespace {

// Recurrence without validation; callers have checked the index.
double jacobi_unchecked(int n, double a, double b, double x) {
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int m = 2; m <= n; ++m) {
    const double s = 2.0 * m + a + b;
    const double c0 = 2.0 * m * (m + a + b) * (s - 2.0);
    const double c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c2 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s;
    const double next = (c1 * p - c2 * p_prev) / c0;
    p_prev = p;
    p = next;
  }
  return p;
}

double clamp_argument(double x, bool& outside) {
  outside = false;
  if (std::abs(x) <= 1.0) return x;
  if (std::abs(x) <= 1.0 + kClampSlack) return std::copysign(1.0, x);
  outside = true;
  return x;
}

}  // namespace

TaggedValue jacobi_tagged(const JacobiIndex& idx, double x) {
  validate(idx);
  TaggedValue out;
  const double xc = clamp_argument(x, out.outside_interval);
  out.value = jacobi_unchecked(idx.n, idx.alpha, idx.beta, xc);
  return out;
}

double jacobi(const JacobiIndex& idx, double x) { return jacobi_tagged(idx, x).value; }

double jacobi_deriv(const JacobiIndex& idx, double x) {
  validate(idx);
  if (idx.n == 0) return 0.0;
  bool outside = false;
  const double xc = clamp_argument(x, outside);
  return 0.5 * (idx.n + idx.alpha + idx.beta + 1.0) *
         jacobi_unchecked(idx.n - 1, idx.alpha + 1.0, idx.beta + 1.0, xc);
}

double exceptional_jacobi_x1(int n, double alpha, double beta, double x) {
  if (n < 1) throw DomainError("X1 Jacobi polynomials start at degree 1");
  validate(JacobiIndex{n, alpha, beta});
  if (alpha == beta) throw DomainError("X1 Jacobi polynomials need alpha != beta");
  bool outside = false;
  const double xc = clamp_argument(x, outside);
  const double b = (beta + alpha) / (beta - alpha);
  const double p1 = jacobi_unchecked(n - 1, alpha, beta, xc);
  const double p2 = n >= 2 ? jacobi_unchecked(n - 2, alpha, beta, xc) : 0.0;
  return -0.5 * (xc - b) * p1 + (b * p1 - p2) / (alpha + beta + 2.0 * n - 2.0);
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                    bool& finite) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  finite = std::isfinite(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = hw * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    finite = finite && std::isfinite(f1) && std::isfinite(f2);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return Panel{a, b, kron * hw, std::abs((kron - gauss) * hw)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opts) {
  if (!(a < b)) throw DomainError("integrate: need a < b");
  if (!(opts.abs_tol > 0.0) && !(opts.rel_tol > 0.0))
    throw DomainError("integrate: tolerance must be positive");

  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(std::max(opts.max_panels, 1)));
  bool finite = true;
  panels.push_back(gauss_kronrod(f, a, b, finite));

  auto totals = [&panels]() {
    double v = 0.0, e = 0.0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  while (true) {
    const auto [value, error] = totals();
    if (!finite) {
      throw IntegrationError("integrate: integrand not finite on a panel", value, error);
    }
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    if (error <= target) {
      return QuadratureResult{value, error, static_cast<int>(panels.size())};
    }
    if (static_cast<int>(panels.size()) >= opts.max_panels) {
      throw IntegrationError("integrate: panel budget exhausted", value, error);
    }
    // First panel with the largest error keeps the refinement order fixed.
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.error < y.error; });
    const Panel p = *worst;
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      throw IntegrationError("integrate: panel width underflow", value, error);
    }
    *worst = gauss_kronrod(f, p.a, mid, finite);
    bool finite_right = true;
    panels.push_back(gauss_kronrod(f, mid, p.b, finite_right));
    finite = finite && finite_right;
  }
}

}  // namespace dirac_sphere::specfun
