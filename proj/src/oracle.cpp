#include "dirac_sphere/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "dirac_sphere/errors.hpp"

namespace dirac_sphere::oracle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sq(double x) { return x * x; }

}  // namespace

// ---------------------------------------------------------------------------
// Grid and matrix

std::vector<double> Grid::interior_nodes() const {
  std::vector<double> w(static_cast<std::size_t>(N));
  for (int i = 1; i <= N; ++i) w[static_cast<std::size_t>(i - 1)] = node(i);
  return w;
}

void Grid::validate() const {
  if (!(L > 0.0) || !std::isfinite(L) || N < 3) {
    std::ostringstream os;
    os << "invalid grid (L=" << L << ", N=" << N << "): need L > 0 and N >= 3";
    throw DomainError(os.str());
  }
}

std::vector<double> SLMatrix::apply(const std::vector<double>& x) const {
  const int n = size();
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += off[i - 1] * x[i - 1];
    if (i + 1 < n) v += off[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

double SLMatrix::entry(int i, int j) const {
  if (i == j) return diag[i];
  if (j == i + 1) return off[i];
  if (i == j + 1) return off[j];
  return 0.0;
}

std::vector<double> SLMatrix::to_dense() const {
  const int n = size();
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    d[static_cast<std::size_t>(i) * n + i] = diag[i];
    if (i + 1 < n) {
      d[static_cast<std::size_t>(i) * n + i + 1] = off[i];
      d[static_cast<std::size_t>(i + 1) * n + i] = off[i];
    }
  }
  return d;
}

SLMatrix build_sl_matrix(const RealFn& p, const RealFn& q, const Grid& grid) {
  grid.validate();
  const int n = grid.N;
  const double h = grid.h();
  const double h2 = h * h;
  // p at the N+1 cell midpoints, shared by the two rows that touch each cell.
  std::vector<double> pm(static_cast<std::size_t>(n + 1));
  for (int r = 0; r <= n; ++r) pm[r] = p(-grid.L + (r + 0.5) * h);

  SLMatrix m;
  m.h = h;
  m.diag.resize(static_cast<std::size_t>(n));
  m.off.resize(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    const double w = grid.node(i + 1);
    double qi;
    try {
      qi = q(w);
    } catch (const PoleError& e) {
      throw SingularPotentialError(std::string("singular potential on grid: ") + e.what(),
                                   e.location());
    }
    if (!std::isfinite(qi)) {
      std::ostringstream os;
      os << "potential is not finite at grid node w = " << w;
      throw SingularPotentialError(os.str(), w);
    }
    m.diag[i] = (pm[i] + pm[i + 1]) / h2 + qi;
    if (i + 1 < n) m.off[i] = -pm[i + 1] / h2;
  }
  return m;
}

SLMatrix build_sl_matrix(const gauge::EffectivePotential& pot, const Grid& grid) {
  for (double w0 : pot.poles) {
    if (std::abs(w0) <= grid.L) {
      std::ostringstream os;
      os << "potential '" << pot.label << "' has a pole at w = " << w0
         << " inside the window [-" << grid.L << ", " << grid.L << "]";
      throw SingularPotentialError(os.str(), w0);
    }
  }
  SLMatrix m = build_sl_matrix([](double w) { return sq(std::cosh(w)); }, pot.eval, grid);
  m.provenance = pot.label;
  return m;
}

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

double pivot_floor(const SLMatrix& m) {
  double emax = 1.0;
  for (double e : m.off) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() * emax;
}

std::pair<double, double> gershgorin(const SLMatrix& m) {
  const int n = m.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(m.off[i - 1]);
    if (i + 1 < n) r += std::abs(m.off[i]);
    lo = std::min(lo, m.diag[i] - r);
    hi = std::max(hi, m.diag[i] + r);
  }
  const double pad = kEps * std::max(std::abs(lo), std::abs(hi)) + pivot_floor(m);
  return {lo - pad, hi + pad};
}

int factored_count(const LDLFactor& f, double x, double pivmin) {
  const int n = static_cast<int>(f.d.size());
  int count = 0;
  double s = -x;
  for (int i = 0; i + 1 < n; ++i) {
    double dp = s + f.d[i];
    if (std::abs(dp) < pivmin) dp = -pivmin;
    if (dp < 0.0) ++count;
    s = f.d[i] * f.l[i] / dp * f.l[i] * s - x;
  }
  double dp = s + f.d[n - 1];
  if (std::abs(dp) < pivmin) dp = -pivmin;
  if (dp < 0.0) ++count;
  return count;
}

int sturm_count(const SLMatrix& m, double x, double pivmin) {
  if (m.factor) return factored_count(*m.factor, x, pivmin);
  const int n = m.size();
  int count = 0;
  double d = m.diag[0] - x;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    d = m.diag[i] - x - sq(m.off[i - 1]) / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

double bisect_eigenvalue(const SLMatrix& m, int index, double lo, double hi, double pivmin) {
  // Invariant: count(lo) <= index < count(hi).
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (sturm_count(m, mid, pivmin) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// (T - shift I) x = b for tridiagonal T by LU with partial pivoting.
class ShiftedTridiagonalSolver {
 public:
  ShiftedTridiagonalSolver(const SLMatrix& m, double shift) {
    const int n = m.size();
    d_.resize(n);
    dl_.assign(m.off.begin(), m.off.end());
    du_.assign(m.off.begin(), m.off.end());
    du2_.assign(std::max(n - 2, 0), 0.0);
    swap_.assign(std::max(n - 1, 0), false);
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      d_[i] = m.diag[i] - shift;
      norm = std::max(norm, std::abs(d_[i]));
    }
    for (double e : m.off) norm = std::max(norm, std::abs(e));
    const double tiny = kEps * std::max(norm, 1.0);
    for (int i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double f = dl_[i] / d_[i];
        dl_[i] = f;
        d_[i + 1] -= f * du_[i];
      } else {
        const double f = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = f;
        const double tmp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = tmp - f * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -f * du_[i + 1];
        }
        swap_[i] = true;
      }
    }
    if (n > 0 && d_[n - 1] == 0.0) d_[n - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    const int n = static_cast<int>(d_.size());
    for (int i = 0; i + 1 < n; ++i) {
      if (!swap_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - dl_[i] * b[i];
      }
    }
    b[n - 1] /= d_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (int i = n - 3; i >= 0; --i) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  std::vector<double> d_, dl_, du_, du2_;
  std::vector<bool> swap_;
};

void scale_to_max(std::vector<double>& x) {
  double mx = 0.0;
  for (double v : x) mx = std::max(mx, std::abs(v));
  if (mx > 0.0 && std::isfinite(mx)) {
    for (double& v : x) v /= mx;
  }
}

}  // namespace

int count_below(const SLMatrix& m, double x) { return sturm_count(m, x, pivot_floor(m)); }

std::vector<double> eigenvalues_lowest(const SLMatrix& m, int count) {
  const int n = m.size();
  if (count < 0 || count > n) throw DomainError("eigenvalues_lowest: count out of range");
  const double pivmin = pivot_floor(m);
  const auto [lo, hi] = gershgorin(m);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  double lower = lo;
  for (int j = 0; j < count; ++j) {
    // Tighten the lower end with the previous eigenvalue (eigenvalues ascend).
    double a = lower;
    if (sturm_count(m, a, pivmin) > j) a = lo;
    const double value = bisect_eigenvalue(m, j, a, hi, pivmin);
    out.push_back(value);
    const double step = 4.0 * kEps * std::max(std::abs(value), 1.0);
    lower = value - step;
  }
  return out;
}

std::vector<Eigenpair> eig_lowest(const SLMatrix& m, int count) {
  const std::vector<double> values = eigenvalues_lowest(m, count);
  const int n = m.size();
  std::vector<Eigenpair> pairs;
  pairs.reserve(values.size());
  for (int j = 0; j < count; ++j) {
    const double lambda = values[j];
    ShiftedTridiagonalSolver solver(m, lambda);
    std::mt19937 rng(20240601u + static_cast<unsigned>(j));
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = dist(rng);
    for (int iter = 0; iter < 5; ++iter) {
      solver.solve(x);
      scale_to_max(x);
      for (const auto& prev : pairs) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += prev.vector[i] * x[i];
        dot *= m.h;
        for (int i = 0; i < n; ++i) x[i] -= dot * prev.vector[i];
      }
      scale_to_max(x);
    }
    double norm2 = 0.0;
    double mx = 0.0;
    for (double v : x) {
      norm2 += v * v;
      mx = std::max(mx, std::abs(v));
    }
    const double inv = 1.0 / std::sqrt(norm2 * m.h);
    for (double& v : x) v *= inv;
    // Sign: first entry above 1e-8 of the peak is made positive.
    for (double v : x) {
      if (std::abs(v) > 1e-8 * mx * inv) {
        if (v < 0.0) {
          for (double& u : x) u = -u;
        }
        break;
      }
    }
    pairs.push_back(Eigenpair{lambda, std::move(x)});
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// Factorization

std::string FactorConvention::label() const {
  std::ostringstream os;
  os << (sign_k > 0 ? "+k" : "-k") << (sign_A > 0 ? "+A" : "-A")
     << (half_sinh ? "+half-sinh" : "");
  return os.str();
}

std::vector<FactorConvention> all_conventions() {
  std::vector<FactorConvention> out;
  for (bool half : {true, false}) {
    for (int sk : {1, -1}) {
      for (int sa : {-1, 1}) out.push_back(FactorConvention{sk, sa, half});
    }
  }
  return out;
}

FactorizedPair compose_factorized(const RealFn& A, double k, const Grid& grid,
                                  const FactorConvention& convention) {
  grid.validate();
  const int n = grid.N;
  const double h = grid.h();
  // Row r of D is the cell between nodes r and r+1 (r = 0..N).
  std::vector<double> lower(static_cast<std::size_t>(n + 1));  // coefficient on node r
  std::vector<double> upper(static_cast<std::size_t>(n + 1));  // coefficient on node r+1
  for (int r = 0; r <= n; ++r) {
    const double w = -grid.L + (r + 0.5) * h;
    const double c = std::cosh(w);
    double g = c * (convention.sign_k * k + convention.sign_A * A(w));
    if (convention.half_sinh) g += 0.5 * std::sinh(w);
    lower[r] = -c / h + 0.5 * g;
    upper[r] = c / h + 0.5 * g;
  }

  FactorizedPair pair;
  pair.convention = convention;

  pair.dtd.h = h;
  pair.dtd.provenance = "DtD[" + convention.label() + "]";
  pair.dtd.diag.resize(static_cast<std::size_t>(n));
  pair.dtd.off.resize(static_cast<std::size_t>(n - 1));
  for (int j = 0; j < n; ++j) {
    pair.dtd.diag[j] = sq(upper[j]) + sq(lower[j + 1]);
    if (j + 1 < n) pair.dtd.off[j] = lower[j + 1] * upper[j + 1];
  }

  pair.ddt.h = h;
  pair.ddt.provenance = "DDt[" + convention.label() + "]";
  pair.ddt.diag.resize(static_cast<std::size_t>(n + 1));
  pair.ddt.off.resize(static_cast<std::size_t>(n));
  for (int r = 0; r <= n; ++r) {
    double d = 0.0;
    if (r >= 1) d += sq(lower[r]);
    if (r <= n - 1) d += sq(upper[r]);
    pair.ddt.diag[r] = d;
    if (r < n) pair.ddt.off[r] = upper[r] * lower[r + 1];
  }
  // D D^T = L diag(upper^2, ..., 0) L^T with L(r+1, r) = lower[r+1] / upper[r].
  bool factorable = true;
  for (int r = 0; r < n; ++r) factorable = factorable && upper[r] != 0.0;
  if (factorable) {
    LDLFactor f;
    f.d.resize(static_cast<std::size_t>(n + 1));
    f.l.resize(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
      f.d[r] = sq(upper[r]);
      f.l[r] = lower[r + 1] / upper[r];
    }
    f.d[n] = 0.0;
    pair.ddt.factor = std::move(f);
  }
  return pair;
}

IsospectralityCheck check_isospectrality(const FactorizedPair& pair, int count) {
  IsospectralityCheck out;
  out.ddt_eigenvalues = eigenvalues_lowest(pair.ddt, count + 1);
  out.dtd_eigenvalues = eigenvalues_lowest(pair.dtd, count);
  out.dropped_zero = out.ddt_eigenvalues.front();
  for (int i = 0; i < count; ++i) {
    const double a = out.ddt_eigenvalues[i + 1];
    const double b = out.dtd_eigenvalues[i];
    const double scale = std::max(std::abs(a), std::abs(b));
    const double rel = scale > 0.0 ? std::abs(a - b) / scale : 0.0;
    out.max_relative_deviation = std::max(out.max_relative_deviation, rel);
  }
  return out;
}

spectra::WaveFunctionSpec grid_function(const Grid& grid, std::vector<double> samples,
                                        int component) {
  grid.validate();
  if (static_cast<int>(samples.size()) != grid.N) {
    throw DomainError("grid_function: sample count does not match the grid");
  }
  double norm2 = 0.0;
  for (double v : samples) norm2 += v * v;
  norm2 *= grid.h();
  auto fn = [grid, s = std::move(samples)](double w) {
    const double x = (w + grid.L) / grid.h();  // node coordinate, walls at 0 and N+1
    if (!(x > 0.0) || !(x < grid.N + 1)) return 0.0;
    const double fl = std::floor(x);
    int i = static_cast<int>(fl);
    double frac = x - fl;
    // Snap to a node when within rounding of it.
    if (frac < 1e-9) frac = 0.0;
    if (frac > 1.0 - 1e-9) {
      frac = 0.0;
      ++i;
    }
    auto at = [&](int node) { return (node >= 1 && node <= grid.N) ? s[node - 1] : 0.0; };
    return (1.0 - frac) * at(i) + frac * at(i + 1);
  };
  return spectra::WaveFunctionSpec::from_function(component, std::move(fn), norm2);
}

spectra::WaveFunctionSpec derive_partner_component(const spectra::WaveFunctionSpec& phi1,
                                                   double E, const RealFn& A, double k,
                                                   double R, const Grid& grid,
                                                   const FactorConvention& convention,
                                                   int partner_sign) {
  if (E == 0.0) {
    throw ZeroModeError("partner component undefined at E = 0 (zero mode of one partner only)");
  }
  grid.validate();
  const double e_bar = E * R;
  const double h = grid.h();
  const double tanh_weight = convention.half_sinh ? 0.5 : 1.0;
  auto fn = [phi1, A, k, h, e_bar, tanh_weight, convention, partner_sign](double w) {
    const double d1 = (-phi1(w + 2.0 * h) + 8.0 * phi1(w + h) - 8.0 * phi1(w - h) +
                       phi1(w - 2.0 * h)) /
                      (12.0 * h);
    const double f = phi1(w);
    const double g = convention.sign_k * k + convention.sign_A * A(w);
    return partner_sign / e_bar * std::cosh(w) * (d1 + tanh_weight * std::tanh(w) * f - g * f);
  };
  double norm2 = 0.0;
  for (double w : grid.interior_nodes()) norm2 += sq(fn(w));
  norm2 *= h;
  return spectra::WaveFunctionSpec::from_function(2, std::move(fn), norm2);
}

double eigen_residual(const SLMatrix& m, const std::vector<double>& phi, double lambda,
                      bool exclude_boundary_rows) {
  const std::vector<double> mphi = m.apply(phi);
  const int n = m.size();
  const int first = exclude_boundary_rows ? 1 : 0;
  const int last = exclude_boundary_rows ? n - 2 : n - 1;
  double num = 0.0, den = 0.0;
  for (int i = first; i <= last; ++i) {
    num += sq(mphi[i] - lambda * phi[i]);
    den += sq(phi[i]);
  }
  if (den == 0.0) throw DomainError("eigen_residual: candidate vanishes on the grid");
  return std::sqrt(num / den);
}

double verify_eigenpair(const gauge::EffectivePotential& pot,
                        const spectra::WaveFunctionSpec& phi, double lambda, const Grid& grid) {
  const SLMatrix m = build_sl_matrix(pot, grid);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(grid.N));
  double peak = 0.0;
  for (double w : grid.interior_nodes()) {
    const double v = phi(w);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "candidate eigenfunction is not finite at w = " << w;
      throw DomainError(os.str());
    }
    samples.push_back(v);
    peak = std::max(peak, std::abs(v));
  }
  const double edge = std::max(std::abs(phi(-grid.L)), std::abs(phi(grid.L)));
  const bool exclude = !(edge <= 1e-10 * peak);
  return eigen_residual(m, samples, lambda, exclude);
}

}  // namespace dirac_sphere::oracle
