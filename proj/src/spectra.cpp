#include "dirac_sphere/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dirac_sphere/errors.hpp"
#include "dirac_sphere/specfun.hpp"

namespace dirac_sphere::spectra {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_radius(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    std::ostringstream os;
    os << "sphere radius must be positive and finite, got " << R;
    throw DomainError(os.str());
  }
}

void finish_line(SpectralLine& line, bool normalizable) {
  line.radicand_ok = line.E_sq_bar >= 0.0;
  line.normalizable = normalizable;
  line.physical = line.radicand_ok && line.normalizable;
  if (!line.radicand_ok) {
    line.reason = "negative-radicand";
  } else if (!line.normalizable) {
    line.reason = "divergent-norm";
  } else {
    line.reason = "ok";
  }
}

}  // namespace

double SpectralLine::E_minus() const {
  return E_sq_bar >= 0.0 ? -std::sqrt(E_sq_bar) / R : kNaN;
}

double SpectralLine::E_plus() const {
  return E_sq_bar >= 0.0 ? std::sqrt(E_sq_bar) / R : kNaN;
}

// ---------------------------------------------------------------------------

std::optional<double> tanh_norm_sq(const TanhShape& shape) {
  auto integrand = [&shape](double t) {
    const double omt = 1.0 - t;
    const double opt = 1.0 + t;
    const double v = shape(t, omt, opt);
    return v * v / (omt * opt);
  };
  specfun::QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  opts.rel_tol = 1e-11;
  opts.max_panels = 2000;
  try {
    // Split at 0 so each half has a single endpoint singularity.
    const double left = specfun::integrate(integrand, -1.0, 0.0, opts).value;
    const double right = specfun::integrate(integrand, 0.0, 1.0, opts).value;
    const double total = left + right;
    if (!std::isfinite(total) || !(total > 0.0)) return std::nullopt;
    return total;
  } catch (const IntegrationError&) {
    return std::nullopt;
  }
}

WaveFunctionSpec::WaveFunctionSpec(int component, TanhShape shape, std::vector<double> poles)
    : component_(component), shape_(std::move(shape)), poles_(std::move(poles)) {
  if (!shape_) return;
  if (poles_.empty()) {
    norm_sq_ = tanh_norm_sq(shape_);
  } else {
    // Integrate up to the pole from both sides; a genuine pole makes this diverge.
    TanhShape s = shape_;
    const double t0 = std::tanh(poles_.front());
    auto integrand = [&s](double t) {
      const double v = s(t, 1.0 - t, 1.0 + t);
      return v * v / ((1.0 - t) * (1.0 + t));
    };
    specfun::QuadratureOptions opts{1e-13, 1e-11, 2000};
    try {
      const double total = specfun::integrate(integrand, -1.0, t0, opts).value +
                           specfun::integrate(integrand, t0, 1.0, opts).value;
      if (std::isfinite(total) && total > 0.0) norm_sq_ = total;
    } catch (const IntegrationError&) {
    }
  }
  if (norm_sq_) scale_ = 1.0 / std::sqrt(*norm_sq_);
}

WaveFunctionSpec WaveFunctionSpec::from_function(int component, std::function<double(double)> fn,
                                                 std::optional<double> norm_sq) {
  WaveFunctionSpec spec(component, TanhShape{}, {});
  spec.direct_ = std::move(fn);
  spec.norm_sq_ = norm_sq;
  spec.scale_ = 1.0;
  return spec;
}

double WaveFunctionSpec::raw(double w) const {
  if (direct_) return direct_(w);
  const double t = std::tanh(w);
  const double omt = 2.0 / (1.0 + std::exp(2.0 * w));
  const double opt = 2.0 / (1.0 + std::exp(-2.0 * w));
  return shape_(t, omt, opt);
}

double WaveFunctionSpec::operator()(double w) const { return scale_ * raw(w); }

// ---------------------------------------------------------------------------
// Model I

double model1_exponent(double C1) {
  if (!(std::abs(C1) < 0.5)) {
    std::ostringstream os;
    os << "C1 = " << C1 << " gives a complex exponent; need |C1| < 1/2";
    throw ComplexExponentError(os.str());
  }
  return 0.5 * (-1.0 + std::sqrt(1.0 - 4.0 * C1 * C1));
}

namespace {

void require_branch(const gauge::Model1Params& p, double k) {
  if (!p.satisfies_constraints(k)) {
    std::ostringstream os;
    os << "Model I closed form needs a constraint branch; (C2, C3) = (" << p.C2 << ", " << p.C3
       << ") at k = " << k << " is not one";
    throw ConstraintError(os.str());
  }
}

}  // namespace

WaveFunctionSpec wavefn_model1(int n, const gauge::Model1Params& p, double k) {
  if (n < 0) throw DomainError("level index must be non-negative");
  require_branch(p, k);
  const double s = model1_exponent(p.C1);
  const double b = 0.5 * p.C1 * (1.0 + 2.0 * p.C2);
  const specfun::JacobiIndex idx{n, 2.0 * s, 2.0 * b};
  specfun::validate(idx);
  TanhShape shape = [s, b, idx](double t, double omt, double opt) {
    return std::pow(omt, s) * std::pow(opt, b) * specfun::jacobi(idx, t);
  };
  return WaveFunctionSpec(1, std::move(shape));
}

SpectralLine energy_model1(int n, const gauge::Model1Params& p, double k, double R) {
  if (n < 0) throw DomainError("level index must be non-negative");
  check_radius(R);
  require_branch(p, k);
  const double s = model1_exponent(p.C1);
  const double shift = s - n;
  if (shift == 0.0) throw DivisionError("Model I spectrum: exponent minus level is zero");
  const double b = 0.5 * p.C1 * (1.0 + 2.0 * p.C2);
  SpectralLine line;
  line.level = n;
  line.R = R;
  line.E_sq_bar = 0.5 + 2.0 * p.C1 * (k - p.C3) - (p.C2 - 0.5) * (p.C2 - 0.5) - shift * shift -
                  (b * b) / (shift * shift);
  finish_line(line, !wavefn_model1(n, p, k).divergent());
  return line;
}

std::vector<SpectralLine> classify_levels_model1(const gauge::Model1Params& p, double k,
                                                 double R, int n_max) {
  std::vector<SpectralLine> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(energy_model1(n, p, k, R));
  return out;
}

// ---------------------------------------------------------------------------
// Model II

std::string to_string(PolynomialKind kind) {
  return kind == PolynomialKind::jacobi ? "jacobi" : "exceptional_x1";
}

std::optional<double> model2_wavefn_pole(double alpha, double beta) {
  if (alpha == beta) return std::nullopt;
  const double t0 = -(alpha + beta) / (alpha - beta);
  if (std::abs(t0) < 1.0) return std::atanh(t0);
  return std::nullopt;
}

WaveFunctionSpec wavefn_model2(int m, double alpha, double beta, PolynomialKind kind) {
  if (m < 0) throw DomainError("level index must be non-negative");
  const specfun::JacobiIndex idx{m + 1, alpha, beta};
  specfun::validate(idx);
  if (kind == PolynomialKind::exceptional_x1 && alpha == beta) {
    throw DomainError("exceptional X1 polynomials need alpha != beta");
  }
  TanhShape shape = [idx, kind](double t, double omt, double opt) {
    const double a = idx.alpha;
    const double b = idx.beta;
    const double poly = kind == PolynomialKind::jacobi
                            ? specfun::jacobi(idx, t)
                            : specfun::exceptional_jacobi_x1(idx.n, a, b, t);
    return std::pow(omt, 0.5 * (a + 1.0)) * std::pow(opt, 0.5 * (b + 1.0)) * poly /
           (a + b + (a - b) * t);
  };
  std::vector<double> poles;
  if (auto w0 = model2_wavefn_pole(alpha, beta)) {
    // The polynomial may vanish at the same point, leaving a removable singularity.
    const double t0 = std::tanh(*w0);
    const double poly = kind == PolynomialKind::jacobi
                            ? specfun::jacobi(idx, t0)
                            : specfun::exceptional_jacobi_x1(idx.n, alpha, beta, t0);
    if (std::abs(poly) > 1e-12) poles.push_back(*w0);
  }
  return WaveFunctionSpec(1, std::move(shape), std::move(poles));
}

SpectralLine energy_model2(int m, double alpha, double beta, double k, double R) {
  if (m < 0) throw DomainError("level index must be non-negative");
  check_radius(R);
  if (alpha == 0.0) throw DivisionError("Model II spectrum: alpha == 0");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("Model II spectrum: alpha and beta must exceed -1");
  }
  SpectralLine line;
  line.level = m;
  line.R = R;
  const double sum = alpha + beta;
  const double kk = 1.0 + k * k;
  line.E_sq_bar = (m + 0.5 * sum) * (m + 0.5 * (sum + 2.0)) + beta / alpha -
                  0.25 * (alpha * alpha + beta * beta - 2.0) - k * k / (kk * kk);
  finish_line(line, !wavefn_model2(m, alpha, beta).divergent());
  return line;
}

// ---------------------------------------------------------------------------

PairingReport partner_map(const std::vector<double>& e1, const std::vector<double>& e2) {
  PairingReport report;
  for (std::size_t m = 1; m < e1.size() && m - 1 < e2.size(); ++m) {
    PairedLevel pl;
    pl.m = static_cast<int>(m);
    pl.e1 = e1[m];
    pl.e2 = e2[m - 1];
    pl.deviation = std::abs(pl.e1 - pl.e2);
    pl.relative_deviation = pl.deviation / std::max(1.0, std::abs(pl.e1));
    report.max_deviation = std::max(report.max_deviation, pl.deviation);
    report.max_relative_deviation = std::max(report.max_relative_deviation, pl.relative_deviation);
    report.pairs.push_back(pl);
  }
  return report;
}

PairingReport partner_map(const std::vector<SpectralLine>& lines1,
                          const std::vector<SpectralLine>& lines2) {
  std::vector<double> a, b;
  for (const auto& l : lines1) a.push_back(l.E_sq_bar);
  for (const auto& l : lines2) b.push_back(l.E_sq_bar);
  return partner_map(a, b);
}

}  // namespace dirac_sphere::spectra
