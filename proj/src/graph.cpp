#include "curvebound/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include "curvebound/error.hpp"

namespace curvebound {

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view piece = text.substr(start, comma - start);
    int value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size())
      throw Error(Errc::ParseError, "bad integer list '" + std::string(text) + "'");
    out.push_back(value);
    start = comma + 1;
  }
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::ParameterOutOfRange, what);
}

}  // namespace

FamilySpec FamilySpec::parse(std::string_view text) {
  std::size_t colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(Errc::UnknownFamily, "missing ':' in family '" + std::string(text) + "'");
  std::string_view name = text.substr(0, colon);
  std::string_view rest = text.substr(colon + 1);

  if (name == "product") {
    // The split point is ambiguous because factors contain commas; take the
    // first split where both halves parse.
    for (std::size_t comma = rest.find(','); comma != std::string_view::npos;
         comma = rest.find(',', comma + 1)) {
      try {
        FamilySpec a = parse(rest.substr(0, comma));
        FamilySpec b = parse(rest.substr(comma + 1));
        return product(std::move(a), std::move(b));
      } catch (const Error&) {
      }
    }
    throw Error(Errc::ParseError, "cannot split product '" + std::string(text) + "'");
  }

  std::vector<int> p = parse_int_list(rest);
  auto arity = [&](std::size_t k) {
    if (p.size() != k)
      throw Error(Errc::ParseError, "wrong parameter count in '" + std::string(text) + "'");
  };
  if (name == "cycle") { arity(1); return cycle(p[0]); }
  if (name == "hypercube") { arity(1); return hypercube(p[0]); }
  if (name == "torus") { arity(2); return torus(p[0], p[1]); }
  if (name == "tree") { arity(2); return tree(p[0], p[1]); }
  if (name == "complete") { arity(1); return complete(p[0]); }
  throw Error(Errc::UnknownFamily, "unknown family '" + std::string(name) + "'");
}

std::string FamilySpec::to_string() const {
  auto join = [&](const char* name) {
    std::string s = name;
    s += ':';
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(params[i]);
    }
    return s;
  };
  switch (kind) {
    case Kind::Cycle: return join("cycle");
    case Kind::Hypercube: return join("hypercube");
    case Kind::Torus: return join("torus");
    case Kind::Tree: return join("tree");
    case Kind::Complete: return join("complete");
    case Kind::Product: return "product:" + factors[0].to_string() + "," + factors[1].to_string();
  }
  return {};
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  if (n <= 0) throw Error(Errc::EmptyGraph, "graph needs at least one vertex");
  std::vector<std::vector<Vertex>> adj(n);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw Error(Errc::VertexOutOfRange,
                  "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " outside 0.." +
                      std::to_string(n - 1));
    if (e.u == e.v) throw Error(Errc::SelfLoop, "loop at " + std::to_string(e.u));
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }

  Graph g;
  g.n_ = n;
  g.offsets_.assign(n + 1, 0);
  for (int x = 0; x < n; ++x) {
    auto& row = adj[x];
    std::sort(row.begin(), row.end());
    if (auto dup = std::adjacent_find(row.begin(), row.end()); dup != row.end())
      throw Error(Errc::DuplicateEdge,
                  "edge " + std::to_string(x) + "-" + std::to_string(*dup) + " repeated");
    g.offsets_[x + 1] = g.offsets_[x] + static_cast<int>(row.size());
  }
  g.targets_.reserve(g.offsets_[n]);
  for (auto& row : adj) g.targets_.insert(g.targets_.end(), row.begin(), row.end());

  g.max_degree_ = 0;
  g.min_degree_ = n > 1 ? n : 0;
  for (int x = 0; x < n; ++x) {
    g.max_degree_ = std::max(g.max_degree_, g.degree(x));
    g.min_degree_ = std::min(g.min_degree_, g.degree(x));
  }
  if (n == 1) g.min_degree_ = 0;

  // Connectivity and 2-coloring in one BFS.
  std::vector<std::int8_t> color(n, -1);
  bool bipartite = true;
  std::deque<Vertex> queue{0};
  color[0] = 0;
  int seen = 1;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : g.neighbors(x)) {
      if (color[y] < 0) {
        color[y] = static_cast<std::int8_t>(1 - color[x]);
        ++seen;
        queue.push_back(y);
      } else if (color[y] == color[x]) {
        bipartite = false;
      }
    }
  }
  if (seen != n)
    throw Error(Errc::Disconnected, std::to_string(n - seen) + " vertices unreachable from 0");
  if (bipartite) g.color_ = std::move(color);

  g.boundary_.assign(n, 0);
  g.cache_ = std::make_shared<DistanceCache>(n);
  return g;
}

bool Graph::adjacent(Vertex x, Vertex y) const {
  auto row = neighbors(x);
  return std::binary_search(row.begin(), row.end(), y);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex x = 0; x < n_; ++x)
    for (Vertex y : neighbors(x))
      if (x < y) out.push_back({x, y});
  return out;
}

const std::vector<int>& Graph::distances_from(Vertex x) const {
  if (x < 0 || x >= n_) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(x));
  std::call_once(cache_->once[x], [&] {
    Vertex src[] = {x};
    cache_->rows[x] = bfs_distances(*this, src).dist;
  });
  return cache_->rows[x];
}

int Graph::diameter() const {
  int best = 0;
  for (Vertex x = 0; x < n_; ++x) {
    const auto& row = distances_from(x);
    best = std::max(best, *std::max_element(row.begin(), row.end()));
  }
  return best;
}

bool Graph::has_boundary() const {
  return std::any_of(boundary_.begin(), boundary_.end(), [](char c) { return c != 0; });
}

Graph Graph::with_family(std::optional<FamilySpec> family, std::vector<char> boundary) const {
  Graph g = *this;
  g.family_ = std::move(family);
  if (boundary.empty()) boundary.assign(n_, 0);
  g.boundary_ = std::move(boundary);
  return g;
}

DistanceField bfs_distances(const Graph& g, std::span<const Vertex> source) {
  if (source.empty()) throw Error(Errc::EmptySource, "BFS needs a source vertex");
  DistanceField field;
  field.source.assign(source.begin(), source.end());
  field.dist.assign(g.vertex_count(), -1);
  std::vector<Vertex> frontier;
  for (Vertex s : source) {
    if (s < 0 || s >= g.vertex_count())
      throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(s));
    if (field.dist[s] < 0) {
      field.dist[s] = 0;
      frontier.push_back(s);
    }
  }
  std::vector<Vertex> next;
  for (int level = 1; !frontier.empty(); ++level) {
    next.clear();
    for (Vertex x : frontier)
      for (Vertex y : g.neighbors(x))
        if (field.dist[y] < 0) {
          field.dist[y] = level;
          next.push_back(y);
        }
    frontier.swap(next);
  }
  return field;
}

namespace {

Graph make_cycle(int n) {
  require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph::from_edges(n, edges);
}

Graph make_hypercube(int d) {
  require(d >= 1 && d <= 20, "hypercube needs 1 <= d <= 20");
  int n = 1 << d;
  std::vector<Edge> edges;
  for (int x = 0; x < n; ++x)
    for (int j = 0; j < d; ++j)
      if (!(x >> j & 1)) edges.push_back({x, x | (1 << j)});
  return Graph::from_edges(n, edges);
}

Graph make_torus(int n, int d) {
  require(n >= 3 && d >= 1, "torus needs n >= 3 and d >= 1");
  long long total = 1;
  for (int j = 0; j < d; ++j) {
    total *= n;
    require(total <= (1 << 22), "torus too large");
  }
  std::vector<Edge> edges;
  for (int x = 0; x < total; ++x) {
    int stride = 1;
    for (int j = 0; j < d; ++j) {
      int coord = (x / stride) % n;
      int y = x + ((coord + 1) % n - coord) * stride;
      // each ring edge once: from coord to coord+1
      edges.push_back({x, y});
      stride *= n;
    }
  }
  return Graph::from_edges(static_cast<int>(total), edges);
}

Graph make_tree(int p, int depth) {
  require(p >= 2 && depth >= 1, "tree needs p >= 2 and depth >= 1");
  std::vector<Edge> edges;
  std::vector<int> level{0};
  std::vector<Vertex> frontier{0};
  int next_id = 1;
  for (int lvl = 1; lvl <= depth; ++lvl) {
    std::vector<Vertex> next;
    for (Vertex parent : frontier) {
      int children = parent == 0 ? p : p - 1;
      for (int c = 0; c < children; ++c) {
        require(next_id < (1 << 22), "tree too large");
        edges.push_back({parent, next_id});
        level.push_back(lvl);
        next.push_back(next_id++);
      }
    }
    frontier.swap(next);
  }
  Graph g = Graph::from_edges(next_id, edges);
  std::vector<char> leaf(next_id, 0);
  for (int v = 0; v < next_id; ++v) leaf[v] = level[v] == depth;
  return g.with_family(FamilySpec::tree(p, depth), std::move(leaf));
}

Graph make_complete(int n) {
  require(n >= 2, "complete graph needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Graph::from_edges(n, edges);
}

}  // namespace

Graph cartesian_product(const Graph& g, const Graph& h) {
  long long total = static_cast<long long>(g.vertex_count()) * h.vertex_count();
  if (total > (1 << 22)) throw Error(Errc::ParameterOutOfRange, "product too large");
  int na = g.vertex_count();
  std::vector<Edge> edges;
  for (int b = 0; b < h.vertex_count(); ++b)
    for (const Edge& e : g.edges()) edges.push_back({e.u + na * b, e.v + na * b});
  for (const Edge& e : h.edges())
    for (int a = 0; a < na; ++a) edges.push_back({a + na * e.u, a + na * e.v});
  Graph out = Graph::from_edges(static_cast<int>(total), edges);
  std::vector<char> boundary(total, 0);
  for (int b = 0; b < h.vertex_count(); ++b)
    for (int a = 0; a < na; ++a) boundary[a + na * b] = g.boundary()[a] || h.boundary()[b];
  std::optional<FamilySpec> family;
  if (g.family() && h.family()) family = FamilySpec::product(*g.family(), *h.family());
  return out.with_family(std::move(family), std::move(boundary));
}

Graph generate(const FamilySpec& spec) {
  auto p = spec.params;
  switch (spec.kind) {
    case FamilySpec::Kind::Cycle: return make_cycle(p[0]).with_family(spec, {});
    case FamilySpec::Kind::Hypercube: return make_hypercube(p[0]).with_family(spec, {});
    case FamilySpec::Kind::Torus: return make_torus(p[0], p[1]).with_family(spec, {});
    case FamilySpec::Kind::Tree: return make_tree(p[0], p[1]);
    case FamilySpec::Kind::Complete: return make_complete(p[0]).with_family(spec, {});
    case FamilySpec::Kind::Product:
      return cartesian_product(generate(spec.factors[0]), generate(spec.factors[1]));
  }
  throw Error(Errc::UnknownFamily, spec.to_string());
}

Graph generate(std::string_view spec) { return generate(FamilySpec::parse(spec)); }

Graph graph_power(const Graph& g, int r, long long max_vertices) {
  if (r < 1) throw Error(Errc::ParameterOutOfRange, "power needs r >= 1");
  long long total = 1;
  for (int i = 0; i < r; ++i) {
    total *= g.vertex_count();
    if (total > max_vertices)
      throw Error(Errc::PowerTooLarge, "|V|^r exceeds " + std::to_string(max_vertices));
  }
  Graph out = g;
  for (int i = 1; i < r; ++i) out = cartesian_product(out, g);
  return out;
}

Graph parse_graph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag;
  long long n = 0;
  if (!(in >> tag >> n) || tag != "p")
    throw Error(Errc::ParseError, "graph text must start with 'p <n>'");
  if (n <= 0 || n > (1 << 22)) throw Error(Errc::EmptyGraph, "vertex count " + std::to_string(n));
  std::vector<Edge> edges;
  long long u = 0, v = 0;
  while (in >> u) {
    if (!(in >> v)) throw Error(Errc::ParseError, "dangling endpoint in edge list");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw Error(Errc::VertexOutOfRange,
                  "edge " + std::to_string(u) + "-" + std::to_string(v) + " outside 0.." +
                      std::to_string(n - 1));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (!in.eof()) throw Error(Errc::ParseError, "non-numeric token in edge list");
  return Graph::from_edges(static_cast<int>(n), edges);
}

std::string graph_to_text(const Graph& g) {
  std::string out = "p " + std::to_string(g.vertex_count()) + "\n";
  for (const Edge& e : g.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

Graph load_graph(const std::string& source) {
  if (source.rfind("gen:", 0) == 0) return generate(std::string_view(source).substr(4));
  std::ifstream in(source);
  if (!in) throw Error(Errc::ParseError, "cannot open graph file '" + source + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_text(buffer.str());
}

}  // namespace curvebound
