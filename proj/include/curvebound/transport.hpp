#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "curvebound/graph.hpp"
#include "curvebound/rational.hpp"

namespace curvebound {

/// Vertex -> positive mass.
using SparseMeasure = std::map<Vertex, Rational>;

/// Mass `laziness` at x and (1 - laziness)/deg(x) on each neighbor.
/// Throws ParameterOutOfRange unless 0 <= laziness < 1.
SparseMeasure lazy_walk_measure(const Graph& g, Vertex x, const Rational& laziness = half());

Rational total_mass(const SparseMeasure& m);

struct TransportResult {
  Rational cost;
  /// (source vertex, target vertex) -> transported mass; zero flows omitted.
  std::map<std::pair<Vertex, Vertex>, Rational> plan;
  /// Kantorovich potential on the union of both supports.
  std::map<Vertex, Rational> potential;
  /// sum f dnu - sum f dmu, equal to cost when certified.
  Rational dual_value;
  bool certified = false;
};

/// Exact W1 under the graph metric. Throws MassMismatch when totals differ.
TransportResult w1(const Graph& g, const SparseMeasure& mu, const SparseMeasure& nu);

struct Certificate {
  bool marginals = false;
  bool lipschitz = false;
  bool zero_gap = false;
  bool ok() const { return marginals && lipschitz && zero_gap; }
};

/// Re-checks marginals, 1-Lipschitz potential and zero duality gap.
Certificate certify(const Graph& g, const SparseMeasure& mu, const SparseMeasure& nu,
                    const TransportResult& result);

/// Balanced transportation problem over a dense integer cost matrix.
struct TransportationSolution {
  Rational cost;
  std::vector<std::vector<Rational>> flow;  // supply x demand
  std::vector<std::int64_t> u;              // row duals, u[0] = 0
  std::vector<std::int64_t> v;              // column duals
  int pivots = 0;
};

/// Transportation simplex from a northwest-corner basis with Bland's rule
/// (cells indexed row-major) for both entering and leaving choices.
TransportationSolution solve_transportation(const std::vector<Rational>& supply,
                                            const std::vector<Rational>& demand,
                                            const std::vector<std::vector<std::int64_t>>& cost);

struct TransportStats {
  std::uint64_t solved = 0;
  std::uint64_t certificate_failures = 0;
};

/// Process-wide counters over every w1 call.
TransportStats transport_stats();

}  // namespace curvebound
