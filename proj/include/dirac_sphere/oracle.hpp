#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dirac_sphere/gauge.hpp"
#include "dirac_sphere/spectra.hpp"

namespace dirac_sphere::oracle {

using RealFn = std::function<double(double)>;

/// Uniform grid on [-L, L] with N interior nodes and Dirichlet ends.
/// Node i (1..N) sits at -L + i h, h = 2L/(N+1); nodes 0 and N+1 are the walls.
struct Grid {
  double L = 12.0;
  int N = 4001;

  double h() const { return 2.0 * L / (N + 1); }
  double node(int i) const { return -L + i * h(); }
  std::vector<double> interior_nodes() const;
  void validate() const;
};

/// M = L diag(d) L^T with L unit lower bidiagonal, L(i+1, i) = l[i].
struct LDLFactor {
  std::vector<double> d;
  std::vector<double> l;
};

/// Symmetric tridiagonal matrix. Only one off-diagonal is stored, so the
/// matrix is symmetric by construction.
struct SLMatrix {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples rows i and i+1
  double h = 1.0;           // spacing used for the discrete L2 norm
  std::string provenance;
  /// When present, Sturm counts run on this factored form (stationary qd
  /// transform), which keeps relative accuracy for singular products.
  std::optional<LDLFactor> factor;

  int size() const { return static_cast<int>(diag.size()); }
  /// M(i, j), zero outside the band.
  double entry(int i, int j) const;
  /// (M x)_i.
  std::vector<double> apply(const std::vector<double>& x) const;
  /// Row-major dense copy, used for symmetry audits and small cross-checks.
  std::vector<double> to_dense() const;
};

/// Conservative three-point scheme for -(p phi')' + q phi:
///   (M phi)_i = [-p_{i+1/2}(phi_{i+1} - phi_i) + p_{i-1/2}(phi_i - phi_{i-1})]/h^2 + q_i phi_i.
/// Throws SingularPotentialError if q has a pole or a non-finite value on the grid.
SLMatrix build_sl_matrix(const RealFn& p, const RealFn& q, const Grid& grid);

/// Same with p = cosh^2 w. Declared poles inside [-L, L] are rejected up front.
SLMatrix build_sl_matrix(const gauge::EffectivePotential& pot, const Grid& grid);

/// Number of eigenvalues strictly below x (Sturm count).
int count_below(const SLMatrix& m, double x);

/// The `count` algebraically smallest eigenvalues, ascending, by bisection on
/// the Sturm count. Accurate for the low end of graded matrices.
std::vector<double> eigenvalues_lowest(const SLMatrix& m, int count);

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;  // h * sum(v^2) == 1, first significant entry > 0
};

/// Eigenvalues as above plus eigenvectors by inverse iteration.
std::vector<Eigenpair> eig_lowest(const SLMatrix& m, int count);

// ---------------------------------------------------------------------------
// First-order factorization

/// Sign and shift choices for the first-order operator
///   B = cosh w d/dw + G,  G = cosh w (sign_k k + sign_A A) + [1/2 sinh w].
struct FactorConvention {
  int sign_k = 1;
  int sign_A = -1;
  bool half_sinh = true;

  std::string label() const;
};

/// All eight sign/shift combinations, default first.
std::vector<FactorConvention> all_conventions();

struct FactorizedPair {
  SLMatrix ddt;  // D D^T, (N+1) x (N+1), lives on cell midpoints
  SLMatrix dtd;  // D^T D, N x N, lives on interior nodes
  FactorConvention convention;
};

/// Discretize B as D: (N+1) x N, with cosh and G sampled at cell midpoints,
/// a centered difference across each cell and the two-point average for G.
/// Both compositions are tridiagonal and share their nonzero spectrum.
FactorizedPair compose_factorized(const RealFn& A, double k, const Grid& grid,
                                  const FactorConvention& convention = {});

struct IsospectralityCheck {
  std::vector<double> ddt_eigenvalues;  // lowest count + 1, includes the rank-deficit zero
  std::vector<double> dtd_eigenvalues;  // lowest count
  double dropped_zero = 0.0;            // the extra eigenvalue of D D^T
  double max_relative_deviation = 0.0;  // over the nonzero pairs
};

IsospectralityCheck check_isospectrality(const FactorizedPair& pair, int count);

/// phi_2 = (partner_sign / E_bar) cosh w (phi_1' + c tanh w phi_1 - g phi_1),
/// g = sign_k k + sign_A A, c = 1/2 with the half-sinh shift and 1 without,
/// E_bar = E R. The derivative uses a fourth-order central difference with
/// the grid spacing; the returned norm is the discrete h-weighted one.
spectra::WaveFunctionSpec derive_partner_component(const spectra::WaveFunctionSpec& phi1,
                                                   double E, const RealFn& A, double k,
                                                   double R, const Grid& grid,
                                                   const FactorConvention& convention = {},
                                                   int partner_sign = -1);

/// Piecewise-linear interpolant of interior-node samples (zero at the walls).
spectra::WaveFunctionSpec grid_function(const Grid& grid, std::vector<double> samples,
                                        int component = 1);

/// ||M phi - lambda phi|| / ||phi|| over the interior rows; the first and last
/// rows are dropped when requested.
double eigen_residual(const SLMatrix& m, const std::vector<double>& phi, double lambda,
                      bool exclude_boundary_rows);

/// Residual of a candidate eigenpair of -(cosh^2 phi')' + V phi. Boundary rows
/// are excluded when |phi(+-L)| exceeds 1e-10 of the sampled maximum.
double verify_eigenpair(const gauge::EffectivePotential& pot,
                        const spectra::WaveFunctionSpec& phi, double lambda, const Grid& grid);

}  // namespace dirac_sphere::oracle
