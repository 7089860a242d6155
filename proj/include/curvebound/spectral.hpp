#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvebound/graph.hpp"
#include "curvebound/rational.hpp"
#include "curvebound/shells.hpp"

namespace curvebound {

// ---------------------------------------------------------------- spectra

enum class SpectrumMethod { DenseJacobi, ClosedFormFamily };
std::string spectrum_method_name(SpectrumMethod m);

/// Normalized Laplacian I - D^{-1/2} A D^{-1/2}, ascending.
struct Spectrum {
  std::vector<double> eigenvalues;
  SpectrumMethod method = SpectrumMethod::DenseJacobi;
  double tolerance = 1e-9;

  /// 1-based, as lambda_1 = 0.
  double lambda(int k) const { return eigenvalues.at(k - 1); }
};

/// Closed form when the graph carries a family with one (cycles, hypercubes,
/// tori, complete graphs and products of regular factors); otherwise dense
/// Jacobi, which throws TooLargeForDense above max_dense vertices.
Spectrum laplacian_spectrum(const Graph& g, int max_dense = 1500);
Spectrum dense_spectrum(const Graph& g, int max_dense = 1500);
std::optional<std::vector<double>> family_spectrum(const FamilySpec& spec);

/// Cyclic Jacobi on a dense symmetric row-major matrix until the
/// off-diagonal Frobenius norm is at most off_tol. Ascending eigenvalues.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n, double off_tol = 1e-12);

// ------------------------------------------------------------ tridiagonal

struct TridiagonalSystem {
  std::vector<double> diag;
  std::vector<double> offdiag;  // size - 1 entries
  Side side = Side::Plus;

  int size() const { return static_cast<int>(diag.size()); }
};

/// Eigenvalues strictly below x.
int sturm_count(const TridiagonalSystem& sys, double x);

/// Smallest `count` eigenvalues by Sturm bisection to absolute width tol
/// (relaxed to a few ulps for large-magnitude spectra). Throws CountTooLarge.
std::vector<double> tridiagonal_eigenvalues(const TridiagonalSystem& sys, int count,
                                            double tol = 1e-12);

/// Generalized problem K x = lambda M x with K tridiagonal symmetric and M
/// diagonal positive. Eigenvalues strictly below x via LDL^T inertia.
int generalized_sturm_count(const TridiagonalSystem& k, const std::vector<double>& m, double x);
double generalized_smallest_eigenvalue(const TridiagonalSystem& k, const std::vector<double>& m,
                                       double tol = 1e-12);
/// Eigenvector of the least eigenvalue by inverse iteration with a shift just
/// below it, so every solve is positive definite.
std::vector<double> generalized_eigenvector(const TridiagonalSystem& k, const std::vector<double>& m,
                                            double lambda);

// ------------------------------------------------------------------ hardy

/// B = max_n (sum_{k=n}^T mu(k)) (sum_{k=1}^n 1/(nu(k)+nu(k-1))), exact.
/// Throws EmptyRange when T < 1.
struct HardyConstant {
  Rational B;
  int argmax = 1;
};
HardyConstant hardy_constant_B(const OneSidedEnvelope& env);
HardyConstant hardy_constant_B(const GrowthEnvelope& env, Side side = Side::Plus);

/// R = inf sum zeta(k) (f(k)-f(k-1))^2 / (2 sum mu(k) f(k)^2) over f with
/// f(0) = 0, solved as the least eigenvalue of a generalized tridiagonal
/// problem. The minimizer f(1..T) is normalized to f(1) > 0.
struct RayleighResult {
  double R = 0;
  std::vector<double> minimizer;
  bool monotone = false;
};
RayleighResult hardy_rayleigh_R(const OneSidedEnvelope& env);
RayleighResult hardy_rayleigh_R(const GrowthEnvelope& env, Side side = Side::Plus);

/// A matrix over indices 1..t of one side (t <= T; t = 0 means T). Entries
/// are formed exactly and converted once; off-diagonals take the square
/// root of an exact rational. Throws EmptySide when t < 1.
TridiagonalSystem build_A_matrix(const OneSidedEnvelope& env, Side side, int t = 0);
std::pair<std::optional<TridiagonalSystem>, std::optional<TridiagonalSystem>> build_A_matrices(
    const GrowthEnvelope& env);

// ----------------------------------------------------------------- bounds

/// 1/2 max(rho_k^+(t+), rho_l^-(t-)) minimized over k <= t+ <= T+ and
/// l <= t- <= |T-|. One-sided envelopes give 1/2 min_t rho_k^+(t), an upper
/// bound on lambda_k. Throws IndexOutOfRange.
struct HigherBound {
  int k = 1;
  int l = 1;
  double value = 0;
  int t_plus = 0;
  int t_minus = 0;
  bool one_sided = false;
  /// Eigenvalue index the bound controls: k + l, or k when one-sided.
  int index() const { return one_sided ? k : k + l; }
};
HigherBound bound_higher(const GrowthEnvelope& env, int k, int l);

/// Explicit test-function bound 2(t+1)|Sigma| / (t^2 |V|), t = floor(1/(4 alpha)),
/// alpha = |Sigma|/|V|. Throws AlphaTooLarge when alpha >= 1/4 and
/// DominanceHypothesisFails when some shell exceeds |Sigma|.
struct CutSetBound {
  Rational alpha;
  long long t = 0;
  Rational bound;
};
CutSetBound buser_constant_route(const ShellProfile& profile, long long vertex_count);

/// 2 min_t (1 - cos(ceil(k/2) pi/(t+1))) / (1 - h (t+1)) over integer
/// t in [ceil(k/2), t_min] with h (t+1) < 1. Throws EmptyRange.
struct HigherBuser {
  double bound = 0;
  int argmin_t = 0;
  /// k^2 h^2 27 pi^2 / 16, reported only.
  double reference = 0;
};
HigherBuser higher_buser_bound(const Rational& h_out_n, int k, int t_min);

// ------------------------------------------------------------ bound report

struct BoundCheck {
  std::string id;
  std::string description;
  int eigen_index = 2;
  std::optional<double> bound;
  std::optional<double> actual;
  bool applicable = false;
  bool satisfied = true;
  std::string note;
};

struct SpectralBoundReport {
  std::string graph_id;
  std::optional<Rational> h_out;
  std::string envelope_summary;
  std::optional<Rational> B;
  std::optional<double> lambda2_bound;
  std::optional<double> R;
  std::map<std::pair<int, int>, double> rho_bounds;
  std::map<std::string, double> buser_constants;
  Spectrum true_spectrum;
  std::vector<BoundCheck> checks;
  bool all_satisfied = true;
};

struct BoundInputs {
  std::string graph_id;
  /// Valid (nu, mu) pair for the tridiagonal route.
  GrowthEnvelope envelope;
  /// mu from an isoperimetric constant for the Hardy route, if available.
  std::optional<GrowthEnvelope> hout_envelope;
  std::optional<Rational> h_out;
  std::optional<ShellProfile> profile;
  long long vertex_count = 0;
  bool regular = true;
  int max_kl = 3;
  Spectrum spectrum;
};

/// Bound-domination slack.
inline constexpr double kDominationSlack = 1e-8;

/// Evaluates every applicable bound route against the spectrum.
SpectralBoundReport bound_lambda2(const BoundInputs& in);

}  // namespace curvebound
