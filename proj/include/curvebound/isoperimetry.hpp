#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvebound/graph.hpp"
#include "curvebound/rational.hpp"

namespace curvebound {

enum class CheegerKind { Edge, Inner, Outer };
enum class IsoMethod { BruteForce, ClosedFormFamily };

std::string cheeger_kind_name(CheegerKind kind);
CheegerKind parse_cheeger_kind(std::string_view text);
std::string iso_method_name(IsoMethod method);

struct IsoperimetryResult {
  CheegerKind kind = CheegerKind::Outer;
  /// 1 for the ordinary constants, n for h_out(n).
  int order = 1;
  Rational value;
  /// The optimizing set, or the partition cells for order > 1.
  std::vector<std::vector<Vertex>> witness;
  IsoMethod method = IsoMethod::BruteForce;
  /// Brute-force optimum recorded alongside a family witness when feasible.
  std::optional<Rational> brute_value;
};

/// |boundary(A)| / |A| for the given kind; the edge kind divides by the
/// maximum degree as well.
Rational boundary_ratio(const Graph& g, std::span<const Vertex> a, CheegerKind kind);

/// Subset guard: CURVEBOUND_MAX_BRUTE if set, else 2^24.
long long brute_force_limit();

/// Exhaustive minimum over 0 < |A| <= |V|/2. Ties go to the smaller set,
/// then the lexicographically least. Throws TooLarge.
IsoperimetryResult cheeger_brute(const Graph& g, CheegerKind kind, unsigned threads = 0);

/// Outer-vertex witness for hypercube:d (a side of the middle slice) and
/// torus:n,d (half cycle for d = 1, otherwise a ball of radius
/// ceil(dn/4) - 1, shrunk until it fits in half the vertices). The value is
/// the witness ratio; brute force is attached when it fits the guard.
/// Throws UnknownFamily.
IsoperimetryResult cheeger_family(const FamilySpec& spec);

/// Middle-slice witness ratio for Q_d in closed form.
Rational hypercube_slice_ratio(int d);

/// Exact min over partitions into n non-empty cells of the largest
/// outer-boundary ratio. Throws TooLarge beyond 16 vertices (n = 2) or 12
/// vertices (n >= 3), ParameterOutOfRange unless 2 <= n <= |V|.
IsoperimetryResult higher_cheeger_brute(const Graph& g, int n);

/// Merges the two lowest-ratio cells and returns the largest ratio of the
/// resulting partition.
Rational merged_partition_ratio(const Graph& g, const std::vector<std::vector<Vertex>>& cells);

struct MonotonicityViolation {
  int n;
  Rational lower_order;  // h_out(n-1)
  Rational value;        // h_out(n)
};

/// h_out(n-1) <= h_out(n) for n = 3..n_max, together with the merge bound on
/// each optimal partition.
std::vector<MonotonicityViolation> verify_h_monotonicity(const Graph& g, int n_max);

}  // namespace curvebound
