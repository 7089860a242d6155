#include <algorithm>
#include <cmath>

#include "curvebound/error.hpp"
#include "curvebound/spectral.hpp"

namespace curvebound {

namespace {

void require_range(const OneSidedEnvelope& env) {
  if (env.mu.size() != env.nu.size() || env.T() < 1)
    throw Error(Errc::EmptyRange, "Hardy quantities need T >= 1");
  for (int k = 1; k <= env.T(); ++k) {
    if (env.mu[k] <= 0) throw Error(Errc::ParameterOutOfRange, "mu must be positive on 1..T");
    if (env.nu[k] + env.nu[k - 1] <= 0)
      throw Error(Errc::ParameterOutOfRange, "nu(k) + nu(k-1) must be positive on 1..T");
  }
}

// zeta(k) = nu(k) + nu(k-1)
Rational zeta(const OneSidedEnvelope& env, int k) { return env.nu[k] + env.nu[k - 1]; }

// LDL^T pivots of K - x M with K = D^T diag(z) D, f_0 = 0. Writing the pivot
// as z_{i+1} + s_i keeps the recurrence free of the cancellation that the
// plain tridiagonal form suffers when z and m span many orders of magnitude.
// z is indexed 1..T+1 with z[T+1] = 0.
std::vector<double> pivots(const std::vector<double>& z, const std::vector<double>& m, double x) {
  const std::size_t T = m.size();
  std::vector<double> q(T);
  double s = z[1] - x * m[0];
  for (std::size_t i = 1; i <= T; ++i) {
    if (i > 1) s = z[i] * (s / q[i - 2]) - x * m[i - 1];
    q[i - 1] = z[i + 1] + s;
    if (q[i - 1] == 0) q[i - 1] = -1e-300;
  }
  return q;
}

double least_eigenvalue(const std::vector<double>& z, const std::vector<double>& m) {
  double lo = 0, hi = (z[1] + z[2]) / m[0];
  for (int iter = 0; iter < 4000 && hi - lo > 4 * 2.3e-16 * hi; ++iter) {
    double mid = lo + (hi - lo) / 2;
    auto q = pivots(z, m, mid);
    bool negative = std::any_of(q.begin(), q.end(), [](double v) { return v < 0; });
    (negative ? hi : lo) = mid;
  }
  return lo + (hi - lo) / 2;
}

// inverse iteration on K - sigma M through the same pivots
std::vector<double> least_eigenvector(const std::vector<double>& z, const std::vector<double>& m,
                                      double lambda) {
  const std::size_t T = m.size();
  const double sigma = lambda * (1 - 1e-7);
  auto q = pivots(z, m, sigma);
  std::vector<double> x(T, 1.0), y(T);
  for (int iter = 0; iter < 60; ++iter) {
    for (std::size_t i = 0; i < T; ++i) y[i] = m[i] * x[i];
    // L has sub-diagonal -z_{i+1} / q_{i-1}
    for (std::size_t i = 1; i < T; ++i) y[i] += z[i + 1] / q[i - 1] * y[i - 1];
    for (std::size_t i = 0; i < T; ++i) y[i] /= q[i];
    for (std::size_t i = T - 1; i-- > 0;) y[i] += z[i + 2] / q[i] * y[i + 1];
    double norm = 0;
    for (double v : y) norm = std::max(norm, std::abs(v));
    for (std::size_t i = 0; i < T; ++i) x[i] = y[i] / norm;
  }
  if (x[0] < 0)
    for (double& v : x) v = -v;
  return x;
}

}  // namespace

HardyConstant hardy_constant_B(const OneSidedEnvelope& env) {
  require_range(env);
  const int T = env.T();
  std::vector<Rational> tail(T + 2, Rational(0));
  for (int k = T; k >= 1; --k) tail[k] = tail[k + 1] + env.mu[k];
  HardyConstant out;
  Rational harmonic = 0;
  for (int n = 1; n <= T; ++n) {
    harmonic += 1 / zeta(env, n);
    Rational value = tail[n] * harmonic;
    if (n == 1 || value > out.B) {
      out.B = value;
      out.argmax = n;
    }
  }
  return out;
}

HardyConstant hardy_constant_B(const GrowthEnvelope& env, Side side) {
  OneSidedEnvelope view;
  try {
    view = side_view(env, side);
  } catch (const Error& e) {
    throw Error(Errc::EmptyRange, e.what());
  }
  return hardy_constant_B(view);
}

RayleighResult hardy_rayleigh_R(const OneSidedEnvelope& env) {
  require_range(env);
  const int T = env.T();
  // Quadratic form sum zeta(k) (f_k - f_{k-1})^2 on f_1..f_T with f_0 = 0.
  std::vector<double> z(T + 2, 0.0), m(T);
  for (int i = 1; i <= T; ++i) {
    z[i] = to_double(zeta(env, i));
    m[i - 1] = to_double(env.mu[i]);
  }
  RayleighResult out;
  double lambda = least_eigenvalue(z, m);
  out.R = lambda / 2;
  out.minimizer = least_eigenvector(z, m, lambda);
  double scale = 0;
  for (double v : out.minimizer) scale = std::max(scale, std::abs(v));
  out.monotone = out.minimizer[0] > 0;
  for (int i = 1; i < T; ++i)
    if (out.minimizer[i] < out.minimizer[i - 1] - 1e-9 * scale) out.monotone = false;
  return out;
}

RayleighResult hardy_rayleigh_R(const GrowthEnvelope& env, Side side) {
  OneSidedEnvelope view;
  try {
    view = side_view(env, side);
  } catch (const Error& e) {
    throw Error(Errc::EmptyRange, e.what());
  }
  return hardy_rayleigh_R(view);
}

TridiagonalSystem build_A_matrix(const OneSidedEnvelope& env, Side side, int t) {
  if (t == 0) t = env.T();
  if (t < 1 || t > env.T()) throw Error(Errc::EmptySide, "A matrix needs 1 <= t <= T");
  TridiagonalSystem sys;
  sys.side = side;
  const auto& nu = env.nu;
  const auto& mu = env.mu;
  for (int i = 1; i <= t; ++i) {
    if (mu[i] <= 0) throw Error(Errc::ParameterOutOfRange, "mu must be positive on 1..t");
    Rational d = i < t ? (2 * nu[i] + nu[i - 1] + nu[i + 1]) / mu[i] : (nu[i] + nu[i - 1]) / mu[i];
    sys.diag.push_back(to_double(d));
    if (i < t) {
      Rational num = nu[i] + nu[i + 1];
      Rational squared = num * num / (mu[i] * mu[i + 1]);
      sys.offdiag.push_back(-std::sqrt(to_double(squared)));
    }
  }
  return sys;
}

std::pair<std::optional<TridiagonalSystem>, std::optional<TridiagonalSystem>> build_A_matrices(
    const GrowthEnvelope& env) {
  std::pair<std::optional<TridiagonalSystem>, std::optional<TridiagonalSystem>> out;
  if (env.t_plus >= 1) out.first = build_A_matrix(side_view(env, Side::Plus), Side::Plus);
  if (env.t_minus <= -1) out.second = build_A_matrix(side_view(env, Side::Minus), Side::Minus);
  if (!out.first && !out.second) throw Error(Errc::EmptySide, "envelope has no positive range");
  return out;
}

}  // namespace curvebound
