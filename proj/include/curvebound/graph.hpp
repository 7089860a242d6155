#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace curvebound {

using Vertex = std::int32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Named graph family, e.g. "hypercube:4" or "product:cycle:3,cycle:5".
struct FamilySpec {
  enum class Kind { Cycle, Hypercube, Torus, Tree, Complete, Product };

  Kind kind = Kind::Cycle;
  std::vector<int> params;
  std::vector<FamilySpec> factors;  // Product only, exactly two

  static FamilySpec parse(std::string_view text);
  std::string to_string() const;

  static FamilySpec cycle(int n) { return {Kind::Cycle, {n}, {}}; }
  static FamilySpec hypercube(int d) { return {Kind::Hypercube, {d}, {}}; }
  static FamilySpec torus(int n, int d) { return {Kind::Torus, {n, d}, {}}; }
  static FamilySpec tree(int p, int depth) { return {Kind::Tree, {p, depth}, {}}; }
  static FamilySpec complete(int n) { return {Kind::Complete, {n}, {}}; }
  static FamilySpec product(FamilySpec a, FamilySpec b) {
    return {Kind::Product, {}, {std::move(a), std::move(b)}};
  }
};

/// Immutable connected simple undirected graph on vertices 0..n-1.
///
/// Adjacency is stored in CSR form with sorted neighbor lists. BFS rows from
/// single vertices are computed on first use and cached; the cache is safe
/// to fill from several threads at once.
class Graph {
 public:
  /// Throws EmptyGraph, VertexOutOfRange, SelfLoop, DuplicateEdge, Disconnected.
  static Graph from_edges(int n, std::span<const Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  std::span<const Vertex> neighbors(Vertex x) const {
    return {targets_.data() + offsets_[x], targets_.data() + offsets_[x + 1]};
  }
  int degree(Vertex x) const { return offsets_[x + 1] - offsets_[x]; }
  int max_degree() const { return max_degree_; }
  int min_degree() const { return min_degree_; }
  bool is_regular() const { return max_degree_ == min_degree_; }
  bool is_bipartite() const { return !color_.empty(); }
  /// Proper 2-coloring, empty when the graph is not bipartite.
  const std::vector<std::int8_t>& coloring() const { return color_; }
  bool adjacent(Vertex x, Vertex y) const;
  /// Each edge once with u < v, sorted.
  std::vector<Edge> edges() const;

  const std::vector<int>& distances_from(Vertex x) const;
  int distance(Vertex x, Vertex y) const { return distances_from(x)[y]; }
  int diameter() const;

  const std::optional<FamilySpec>& family() const { return family_; }
  /// Truncation boundary (tree leaves and products thereof); all false for
  /// families without a boundary.
  const std::vector<char>& boundary() const { return boundary_; }
  bool has_boundary() const;

  Graph with_family(std::optional<FamilySpec> family, std::vector<char> boundary) const;

 private:
  Graph() = default;

  struct DistanceCache {
    explicit DistanceCache(int n) : once(n), rows(n) {}
    std::vector<std::once_flag> once;
    std::vector<std::vector<int>> rows;
  };

  int n_ = 0;
  std::vector<int> offsets_;
  std::vector<Vertex> targets_;
  int max_degree_ = 0;
  int min_degree_ = 0;
  std::vector<std::int8_t> color_;
  std::optional<FamilySpec> family_;
  std::vector<char> boundary_;
  std::shared_ptr<DistanceCache> cache_;
};

struct DistanceField {
  std::vector<Vertex> source;
  std::vector<int> dist;
};

/// Multi-source BFS. Throws EmptySource.
DistanceField bfs_distances(const Graph& g, std::span<const Vertex> source);

/// Vertex numbering per family:
///   cycle:n       i ~ i+1 mod n
///   hypercube:d   binary encoding, bit j is coordinate j
///   torus:n,d     mixed radix, coordinate 0 least significant
///   tree:p,depth  BFS order from the root; root has p children, every other
///                 internal vertex p-1
///   complete:n    0..n-1
///   product:A,B   (a, b) -> a + |A| * b
Graph generate(const FamilySpec& spec);
Graph generate(std::string_view spec);

/// Cartesian product G □ H.
Graph cartesian_product(const Graph& g, const Graph& h);
/// Cartesian power G^r, numbered like nested products. Throws PowerTooLarge
/// when |V|^r exceeds max_vertices.
Graph graph_power(const Graph& g, int r, long long max_vertices = 10000);

/// Text format: "p <n>" followed by one "u v" line per edge.
Graph parse_graph_text(std::string_view text);
std::string graph_to_text(const Graph& g);
/// Path to a graph file, or "gen:<family>".
Graph load_graph(const std::string& source);

}  // namespace curvebound
