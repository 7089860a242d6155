#include <algorithm>
#include <cmath>
#include <limits>

#include "curvebound/error.hpp"
#include "curvebound/spectral.hpp"

namespace curvebound {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Eigenvalues of K - x M below zero, counted through the LDL^T pivots.
int inertia(const std::vector<double>& d, const std::vector<double>& e, const std::vector<double>* m,
            double x) {
  int count = 0;
  double q = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double shift = m ? x * (*m)[i] : x;
    q = i == 0 ? d[i] - shift : d[i] - shift - e[i - 1] * e[i - 1] / q;
    if (q == 0) q = -kEps * (std::abs(d[i]) + std::abs(shift) + 1e-300);
    if (q < 0) ++count;
  }
  return count;
}

// |lambda| <= max_i (|d_i| + |e_{i-1}| + |e_i|) / m_i
double spectral_radius_bound(const std::vector<double>& d, const std::vector<double>& e,
                             const std::vector<double>* m) {
  double r = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double row = std::abs(d[i]);
    if (i > 0) row += std::abs(e[i - 1]);
    if (i + 1 < d.size()) row += std::abs(e[i]);
    r = std::max(r, m ? row / (*m)[i] : row);
  }
  return r;
}

double bisect(const std::vector<double>& d, const std::vector<double>& e, const std::vector<double>* m,
              int k, double tol) {
  double radius = spectral_radius_bound(d, e, m);
  double lo = -radius - 1, hi = radius + 1;
  for (int iter = 0; iter < 2000; ++iter) {
    double width = std::max(tol, 4 * kEps * std::max(std::abs(lo), std::abs(hi)));
    if (hi - lo <= width) break;
    double mid = lo + (hi - lo) / 2;
    if (inertia(d, e, m, mid) >= k) hi = mid;
    else lo = mid;
  }
  return lo + (hi - lo) / 2;
}

void check_system(const TridiagonalSystem& sys) {
  if (sys.diag.empty()) throw Error(Errc::EmptyRange, "empty tridiagonal system");
  if (sys.offdiag.size() + 1 != sys.diag.size())
    throw Error(Errc::ParameterOutOfRange, "off-diagonal must have size - 1 entries");
  for (double v : sys.diag)
    if (!std::isfinite(v)) throw Error(Errc::ParameterOutOfRange, "non-finite diagonal entry");
  for (double v : sys.offdiag)
    if (!std::isfinite(v)) throw Error(Errc::ParameterOutOfRange, "non-finite off-diagonal entry");
}

void check_mass(const TridiagonalSystem& k, const std::vector<double>& m) {
  check_system(k);
  if (m.size() != k.diag.size()) throw Error(Errc::ParameterOutOfRange, "mass size mismatch");
  for (double v : m)
    if (!(v > 0) || !std::isfinite(v))
      throw Error(Errc::ParameterOutOfRange, "mass matrix must be positive");
}

}  // namespace

int sturm_count(const TridiagonalSystem& sys, double x) {
  check_system(sys);
  return inertia(sys.diag, sys.offdiag, nullptr, x);
}

std::vector<double> tridiagonal_eigenvalues(const TridiagonalSystem& sys, int count, double tol) {
  check_system(sys);
  if (count > sys.size() || count < 0)
    throw Error(Errc::CountTooLarge, "requested " + std::to_string(count) + " of " +
                                         std::to_string(sys.size()) + " eigenvalues");
  std::vector<double> out;
  for (int k = 1; k <= count; ++k) out.push_back(bisect(sys.diag, sys.offdiag, nullptr, k, tol));
  return out;
}

int generalized_sturm_count(const TridiagonalSystem& k, const std::vector<double>& m, double x) {
  check_mass(k, m);
  return inertia(k.diag, k.offdiag, &m, x);
}

double generalized_smallest_eigenvalue(const TridiagonalSystem& k, const std::vector<double>& m,
                                       double tol) {
  check_mass(k, m);
  return bisect(k.diag, k.offdiag, &m, 1, tol);
}

std::vector<double> generalized_eigenvector(const TridiagonalSystem& k, const std::vector<double>& m,
                                            double lambda) {
  check_mass(k, m);
  const std::size_t n = k.diag.size();
  const double sigma = lambda - 1e-7 * std::max(1.0, std::abs(lambda));
  // LDL^T of K - sigma M
  std::vector<double> piv(n), low(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double di = k.diag[i] - sigma * m[i];
    if (i > 0) {
      low[i] = k.offdiag[i - 1] / piv[i - 1];
      di -= low[i] * k.offdiag[i - 1];
    }
    piv[i] = di;
  }
  std::vector<double> x(n, 1.0), y(n);
  for (int iter = 0; iter < 60; ++iter) {
    for (std::size_t i = 0; i < n; ++i) y[i] = m[i] * x[i];
    for (std::size_t i = 1; i < n; ++i) y[i] -= low[i] * y[i - 1];
    for (std::size_t i = 0; i < n; ++i) y[i] /= piv[i];
    for (std::size_t i = n - 1; i-- > 0;) y[i] -= low[i + 1] * y[i + 1];
    double norm = 0;
    for (double v : y) norm = std::max(norm, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
  }
  if (x[0] < 0)
    for (double& v : x) v = -v;
  return x;
}

}  // namespace curvebound
