#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "curvebound/graph.hpp"
#include "curvebound/rational.hpp"

namespace curvebound {

/// kappa(x, y) = 1 - W1(mu_x, mu_y) / d(x, y). Throws SameVertex.
Rational kappa(const Graph& g, Vertex x, Vertex y, const Rational& laziness = half());

struct CurvatureReport {
  std::map<Edge, Rational> edge_kappa;
  Rational global_lower_bound;
  /// Minimum over edges with no boundary vertex within distance 2 of either
  /// endpoint; empty when every edge is contaminated.
  std::optional<Rational> interior_lower_bound;
  Rational laziness;
  std::set<Edge> boundary_contaminated;
};

/// True when a truncation-boundary vertex lies within distance 2 of x or y.
bool boundary_contaminated(const Graph& g, Edge e);

/// Edge sweep; deterministic for any thread count (0 = hardware).
CurvatureReport global_lower_bound(const Graph& g, const Rational& laziness = half(),
                                   unsigned threads = 0);

struct PairViolation {
  Vertex x;
  Vertex y;
  Rational kappa;
  Rational edge_minimum;
};

/// Pairs with kappa(x, y) below the edge minimum. Adjacent pairs are
/// skipped since they define the minimum.
std::vector<PairViolation> check_neighbor_minimization(
    const Graph& g, std::span<const std::pair<Vertex, Vertex>> samples,
    const Rational& laziness = half());

std::vector<std::pair<Vertex, Vertex>> all_vertex_pairs(const Graph& g);

struct TensorizationCheck {
  int r = 1;
  Rational k_base;
  Rational k_power;
  bool holds = false;
};

/// Compares the edge minimum of G^r with k/r. Throws PowerTooLarge when
/// |V|^r > 10^4.
TensorizationCheck check_tensorization(const Graph& g, int r, const Rational& laziness = half());

/// D^r prod_{m<r} (1 - (k/2) m), zero once any factor is non-positive.
Rational paeng_shell_bound(int max_degree, const Rational& k, int r);

/// Shell sizes |S_i| around a vertex, i = 0..eccentricity.
std::vector<long long> vertex_shells(const Graph& g, Vertex x);

/// Upper envelope nu(i) = d * ratio^(i-1) for i >= 1, nu(0) = 1, with
/// ratio (d+1-2dk)/2 in general and d(1-k)/2 on bipartite graphs, clamped
/// at zero.
struct CurvatureGrowth {
  int d = 2;
  Rational k;
  bool bipartite = false;

  Rational ratio() const;
  Rational nu(int i) const;
};

/// Throws ParameterOutOfRange when d < 2.
CurvatureGrowth nu_from_curvature(int d, const Rational& k, bool bipartite);

struct ShellGrowthViolation {
  Vertex x;
  int i;
  long long shell;
  long long next_shell;
  Rational ratio;
  bool bipartite_rule;
};

struct ShellGrowthCheck {
  Rational k;
  int d = 0;
  long long comparisons = 0;
  /// Largest observed |S_{i+1}| / |S_i| over i >= 1.
  Rational max_ratio;
  std::vector<ShellGrowthViolation> violations;
};

/// |S_{i+1}| <= ratio |S_i| for i >= 1 at every vertex, with d the maximum
/// degree. Bipartite graphs are checked against both ratios.
ShellGrowthCheck check_shell_growth(const Graph& g, const Rational& k);

/// Shell sizes against paeng_shell_bound for r up to the eccentricity, plus
/// emptiness beyond radius ceil(2/k + 1) when k > 0. Returns offending
/// (vertex, radius) pairs.
std::vector<std::pair<Vertex, int>> check_paeng(const Graph& g, const Rational& k);

}  // namespace curvebound
