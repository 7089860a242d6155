#include "curvebound/curvature.hpp"

#include <algorithm>
#include <thread>

#include "curvebound/error.hpp"
#include "curvebound/transport.hpp"

namespace curvebound {

Rational kappa(const Graph& g, Vertex x, Vertex y, const Rational& laziness) {
  if (x == y) throw Error(Errc::SameVertex, "curvature needs two distinct vertices");
  TransportResult t = w1(g, lazy_walk_measure(g, x, laziness), lazy_walk_measure(g, y, laziness));
  return 1 - t.cost / g.distance(x, y);
}

bool boundary_contaminated(const Graph& g, Edge e) {
  if (!g.has_boundary()) return false;
  const auto& dx = g.distances_from(e.u);
  const auto& dy = g.distances_from(e.v);
  for (Vertex z = 0; z < g.vertex_count(); ++z)
    if (g.boundary()[z] && (dx[z] <= 2 || dy[z] <= 2)) return true;
  return false;
}

CurvatureReport global_lower_bound(const Graph& g, const Rational& laziness, unsigned threads) {
  std::vector<Edge> edges = g.edges();
  std::vector<Rational> values(edges.size());
  // Fill distance rows first so workers only read the cache.
  for (Vertex x = 0; x < g.vertex_count(); ++x) (void)g.distances_from(x);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, edges.size()));
  auto work = [&](unsigned id) {
    for (std::size_t e = id; e < edges.size(); e += threads)
      values[e] = kappa(g, edges[e].u, edges[e].v, laziness);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  CurvatureReport report;
  report.laziness = laziness;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    report.edge_kappa[edges[e]] = values[e];
    if (e == 0 || values[e] < report.global_lower_bound) report.global_lower_bound = values[e];
    if (boundary_contaminated(g, edges[e])) {
      report.boundary_contaminated.insert(edges[e]);
    } else if (!report.interior_lower_bound || values[e] < *report.interior_lower_bound) {
      report.interior_lower_bound = values[e];
    }
  }
  if (edges.empty()) report.global_lower_bound = 1;
  return report;
}

std::vector<PairViolation> check_neighbor_minimization(
    const Graph& g, std::span<const std::pair<Vertex, Vertex>> samples, const Rational& laziness) {
  std::vector<PairViolation> out;
  if (samples.empty()) return out;
  Rational k = global_lower_bound(g, laziness, 1).global_lower_bound;
  for (auto [x, y] : samples) {
    if (x == y || g.adjacent(x, y)) continue;
    Rational value = kappa(g, x, y, laziness);
    if (value < k) out.push_back({x, y, value, k});
  }
  return out;
}

std::vector<std::pair<Vertex, Vertex>> all_vertex_pairs(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex x = 0; x < g.vertex_count(); ++x)
    for (Vertex y = x + 1; y < g.vertex_count(); ++y) out.emplace_back(x, y);
  return out;
}

TensorizationCheck check_tensorization(const Graph& g, int r, const Rational& laziness) {
  TensorizationCheck out;
  out.r = r;
  Graph power = graph_power(g, r, 10000);
  out.k_base = global_lower_bound(g, laziness, 1).global_lower_bound;
  out.k_power = global_lower_bound(power, laziness).global_lower_bound;
  out.holds = out.k_power >= out.k_base / r;
  return out;
}

Rational paeng_shell_bound(int max_degree, const Rational& k, int r) {
  if (r < 0) throw Error(Errc::ParameterOutOfRange, "radius must be non-negative");
  Rational value = 1;
  for (int m = 0; m < r; ++m) {
    Rational factor = 1 - k / 2 * m;
    if (factor <= 0) return 0;
    value *= factor * max_degree;
  }
  return value;
}

std::vector<long long> vertex_shells(const Graph& g, Vertex x) {
  const auto& row = g.distances_from(x);
  int ecc = *std::max_element(row.begin(), row.end());
  std::vector<long long> shells(ecc + 1, 0);
  for (int d : row) ++shells[d];
  return shells;
}

Rational CurvatureGrowth::ratio() const {
  Rational r = bipartite ? Rational(d) * (1 - k) / 2 : (Rational(d) + 1 - 2 * d * k) / 2;
  return r < 0 ? Rational(0) : r;
}

Rational CurvatureGrowth::nu(int i) const {
  if (i < 0) throw Error(Errc::IndexOutOfRange, "shell index must be non-negative");
  if (i == 0) return 1;
  Rational value = d;
  Rational q = ratio();
  for (int j = 1; j < i; ++j) value *= q;
  return value;
}

CurvatureGrowth nu_from_curvature(int d, const Rational& k, bool bipartite) {
  if (d < 2) throw Error(Errc::ParameterOutOfRange, "growth envelope needs d >= 2");
  return CurvatureGrowth{d, k, bipartite};
}

ShellGrowthCheck check_shell_growth(const Graph& g, const Rational& k) {
  ShellGrowthCheck out;
  out.k = k;
  out.d = g.max_degree();
  out.max_ratio = 0;
  CurvatureGrowth general{out.d, k, false};
  CurvatureGrowth bip{out.d, k, true};
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    auto shells = vertex_shells(g, x);
    for (std::size_t i = 1; i < shells.size(); ++i) {
      long long next = i + 1 < shells.size() ? shells[i + 1] : 0;
      ++out.comparisons;
      Rational observed(next, shells[i]);
      if (observed > out.max_ratio) out.max_ratio = observed;
      if (observed > general.ratio())
        out.violations.push_back({x, static_cast<int>(i), shells[i], next, general.ratio(), false});
      if (g.is_bipartite() && observed > bip.ratio())
        out.violations.push_back({x, static_cast<int>(i), shells[i], next, bip.ratio(), true});
    }
  }
  return out;
}

std::vector<std::pair<Vertex, int>> check_paeng(const Graph& g, const Rational& k) {
  std::vector<std::pair<Vertex, int>> out;
  std::optional<long long> empty_from;
  if (k > 0) {
    Rational limit = 2 / k + 1;
    BigInt c = numerator(limit) / denominator(limit);
    if (c * denominator(limit) != numerator(limit)) c += 1;
    empty_from = c.convert_to<long long>();
  }
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    auto shells = vertex_shells(g, x);
    for (std::size_t r = 0; r < shells.size(); ++r) {
      if (Rational(shells[r]) > paeng_shell_bound(g.max_degree(), k, static_cast<int>(r)) ||
          (empty_from && static_cast<long long>(r) >= *empty_from && shells[r] > 0))
        out.emplace_back(x, static_cast<int>(r));
    }
  }
  return out;
}

}  // namespace curvebound
