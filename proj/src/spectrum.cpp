#include "curvebound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvebound/error.hpp"

namespace curvebound {

std::string spectrum_method_name(SpectrumMethod m) {
  return m == SpectrumMethod::DenseJacobi ? "dense-jacobi" : "closed-form-family";
}

namespace {

std::optional<int> family_degree(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilySpec::Kind::Cycle: return 2;
    case FamilySpec::Kind::Hypercube: return spec.params[0];
    case FamilySpec::Kind::Torus: return 2 * spec.params[1];
    case FamilySpec::Kind::Complete: return spec.params[0] - 1;
    case FamilySpec::Kind::Tree: return std::nullopt;
    case FamilySpec::Kind::Product: {
      auto a = family_degree(spec.factors[0]);
      auto b = family_degree(spec.factors[1]);
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
  }
  return std::nullopt;
}

std::vector<double> cycle_values(int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = 1 - std::cos(2 * std::numbers::pi * k / n);
  return out;
}

// Regular product: (d1 a + d2 b) / (d1 + d2) over all pairs.
std::vector<double> combine(const std::vector<double>& a, int da, const std::vector<double>& b,
                            int db) {
  std::vector<double> out;
  out.reserve(a.size() * b.size());
  for (double y : b)
    for (double x : a) out.push_back((da * x + db * y) / (da + db));
  return out;
}

}  // namespace

std::optional<std::vector<double>> family_spectrum(const FamilySpec& spec) {
  std::vector<double> out;
  switch (spec.kind) {
    case FamilySpec::Kind::Cycle: out = cycle_values(spec.params[0]); break;
    case FamilySpec::Kind::Hypercube: {
      int d = spec.params[0];
      for (int k = 0; k <= d; ++k) {
        long long mult = binomial(d, k).convert_to<long long>();
        out.insert(out.end(), mult, 2.0 * k / d);
      }
      break;
    }
    case FamilySpec::Kind::Torus: {
      int n = spec.params[0], d = spec.params[1];
      std::vector<double> ring = cycle_values(n);
      out = ring;
      for (int j = 1; j < d; ++j) out = combine(out, 2 * j, ring, 2);
      break;
    }
    case FamilySpec::Kind::Complete: {
      int n = spec.params[0];
      out.assign(n, static_cast<double>(n) / (n - 1));
      out[0] = 0;
      break;
    }
    case FamilySpec::Kind::Tree: return std::nullopt;
    case FamilySpec::Kind::Product: {
      auto da = family_degree(spec.factors[0]);
      auto db = family_degree(spec.factors[1]);
      auto a = family_spectrum(spec.factors[0]);
      auto b = family_spectrum(spec.factors[1]);
      if (!da || !db || !a || !b) return std::nullopt;
      out = combine(*a, *da, *b, *db);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n, double off_tol) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2 * at(i, j) * at(i, j);
    if (std::sqrt(off) <= off_tol) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0) continue;
        double theta = (at(q, q) - at(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1 + theta * theta));
        double c = 1 / std::sqrt(1 + t * t);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = at(q, p) = 0;
      }
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = at(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

Spectrum dense_spectrum(const Graph& g, int max_dense) {
  const int n = g.vertex_count();
  if (n > max_dense)
    throw Error(Errc::TooLargeForDense,
                std::to_string(n) + " vertices exceed the dense limit " + std::to_string(max_dense));
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (Vertex x = 0; x < n; ++x) {
    if (g.degree(x) > 0) a[static_cast<std::size_t>(x) * n + x] = 1;
    for (Vertex y : g.neighbors(x))
      a[static_cast<std::size_t>(x) * n + y] = -1 / std::sqrt(double(g.degree(x)) * g.degree(y));
  }
  Spectrum s;
  s.method = SpectrumMethod::DenseJacobi;
  s.eigenvalues = jacobi_eigenvalues(std::move(a), n);
  s.tolerance = 1e-9;
  return s;
}

Spectrum laplacian_spectrum(const Graph& g, int max_dense) {
  if (g.family())
    if (auto values = family_spectrum(*g.family())) {
      Spectrum s;
      s.method = SpectrumMethod::ClosedFormFamily;
      s.eigenvalues = std::move(*values);
      s.tolerance = 1e-12;
      return s;
    }
  return dense_spectrum(g, max_dense);
}

}  // namespace curvebound
