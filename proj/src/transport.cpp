#include "curvebound/transport.hpp"

#include <algorithm>
#include <atomic>
#include <optional>

#include "curvebound/error.hpp"

namespace curvebound {

namespace {

std::atomic<std::uint64_t> g_solved{0};
std::atomic<std::uint64_t> g_failures{0};

struct Cell {
  int i;
  int j;
};

// Basis tree over nodes 0..m-1 (rows) and m..m+n-1 (columns).
class BasisTree {
 public:
  BasisTree(int m, int n) : m_(m), n_(n), in_basis_(m * n, 0) {}

  void add(int i, int j) { in_basis_[i * n_ + j] = 1; }
  void remove(int i, int j) { in_basis_[i * n_ + j] = 0; }
  bool contains(int i, int j) const { return in_basis_[i * n_ + j] != 0; }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(m_ + n_);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j)
        if (contains(i, j)) {
          adj[i].push_back(m_ + j);
          adj[m_ + j].push_back(i);
        }
    return adj;
  }

  /// Basis cells along the tree path from row i to column j, in order.
  std::vector<Cell> path(int i, int j) const {
    auto adj = adjacency();
    std::vector<int> parent(m_ + n_, -2);
    std::vector<int> stack{i};
    parent[i] = -1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (parent[y] == -2) {
          parent[y] = x;
          stack.push_back(y);
        }
    }
    std::vector<Cell> cells;
    for (int x = m_ + j; parent[x] != -1; x = parent[x]) {
      int a = x, b = parent[x];
      cells.push_back(a < m_ ? Cell{a, b - m_} : Cell{b, a - m_});
    }
    std::reverse(cells.begin(), cells.end());
    return cells;
  }

 private:
  int m_;
  int n_;
  std::vector<char> in_basis_;
};

void solve_duals(const BasisTree& tree, int m, int n,
                 const std::vector<std::vector<std::int64_t>>& cost, std::vector<std::int64_t>& u,
                 std::vector<std::int64_t>& v) {
  auto adj = tree.adjacency();
  std::vector<std::optional<std::int64_t>> pot(m + n);
  pot[0] = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x]) {
      if (pot[y]) continue;
      // u_i + v_j = c_ij on basis cells
      if (x < m) pot[y] = cost[x][y - m] - *pot[x];
      else pot[y] = cost[y][x - m] - *pot[x];
      stack.push_back(y);
    }
  }
  u.assign(m, 0);
  v.assign(n, 0);
  for (int i = 0; i < m; ++i) u[i] = *pot[i];
  for (int j = 0; j < n; ++j) v[j] = *pot[m + j];
}

}  // namespace

TransportationSolution solve_transportation(const std::vector<Rational>& supply,
                                            const std::vector<Rational>& demand,
                                            const std::vector<std::vector<std::int64_t>>& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  if (m == 0 || n == 0) throw Error(Errc::EmptySource, "transportation problem with empty side");
  Rational total_a = 0, total_b = 0;
  for (const auto& a : supply) total_a += a;
  for (const auto& b : demand) total_b += b;
  if (total_a != total_b)
    throw Error(Errc::MassMismatch, to_string(total_a) + " vs " + to_string(total_b));

  TransportationSolution sol;
  sol.flow.assign(m, std::vector<Rational>(n, Rational(0)));
  BasisTree tree(m, n);

  // Northwest corner: exactly m + n - 1 cells, degenerate zeros included.
  {
    std::vector<Rational> a = supply, b = demand;
    int i = 0, j = 0;
    for (;;) {
      Rational x = a[i] < b[j] ? a[i] : b[j];
      sol.flow[i][j] = x;
      tree.add(i, j);
      a[i] -= x;
      b[j] -= x;
      if (i == m - 1 && j == n - 1) break;
      if (a[i] == 0 && i < m - 1) ++i;
      else ++j;
    }
  }

  for (;;) {
    solve_duals(tree, m, n, cost, sol.u, sol.v);
    std::optional<Cell> entering;
    for (int i = 0; i < m && !entering; ++i)
      for (int j = 0; j < n; ++j)
        if (!tree.contains(i, j) && cost[i][j] - sol.u[i] - sol.v[j] < 0) {
          entering = Cell{i, j};
          break;
        }
    if (!entering) break;

    std::vector<Cell> cycle = tree.path(entering->i, entering->j);
    // Cells at even positions lose flow, odd positions gain.
    std::optional<Cell> leaving;
    Rational theta;
    for (std::size_t k = 0; k < cycle.size(); k += 2) {
      const Cell c = cycle[k];
      const Rational& f = sol.flow[c.i][c.j];
      bool better = !leaving || f < theta ||
                    (f == theta && c.i * n + c.j < leaving->i * n + leaving->j);
      if (better) {
        leaving = c;
        theta = f;
      }
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const Cell c = cycle[k];
      if (k % 2 == 0) sol.flow[c.i][c.j] -= theta;
      else sol.flow[c.i][c.j] += theta;
    }
    sol.flow[entering->i][entering->j] += theta;
    tree.remove(leaving->i, leaving->j);
    tree.add(entering->i, entering->j);
    ++sol.pivots;
  }

  sol.cost = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (sol.flow[i][j] != 0) sol.cost += sol.flow[i][j] * cost[i][j];
  return sol;
}

SparseMeasure lazy_walk_measure(const Graph& g, Vertex x, const Rational& laziness) {
  if (laziness < 0 || laziness >= 1)
    throw Error(Errc::ParameterOutOfRange, "laziness must lie in [0, 1), got " + to_string(laziness));
  if (x < 0 || x >= g.vertex_count()) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(x));
  SparseMeasure m;
  if (laziness > 0) m[x] = laziness;
  if (g.degree(x) == 0) {
    m[x] = 1;
    return m;
  }
  Rational step = (1 - laziness) / g.degree(x);
  for (Vertex y : g.neighbors(x)) m[y] = step;
  return m;
}

Rational total_mass(const SparseMeasure& m) {
  Rational t = 0;
  for (const auto& [v, mass] : m) t += mass;
  return t;
}

TransportResult w1(const Graph& g, const SparseMeasure& mu, const SparseMeasure& nu) {
  Rational a = total_mass(mu), b = total_mass(nu);
  if (a != b) throw Error(Errc::MassMismatch, to_string(a) + " vs " + to_string(b));
  std::vector<Vertex> xs, ys;
  std::vector<Rational> supply, demand;
  for (const auto& [v, mass] : mu)
    if (mass != 0) {
      if (mass < 0) throw Error(Errc::ParameterOutOfRange, "negative mass");
      xs.push_back(v);
      supply.push_back(mass);
    }
  for (const auto& [v, mass] : nu)
    if (mass != 0) {
      if (mass < 0) throw Error(Errc::ParameterOutOfRange, "negative mass");
      ys.push_back(v);
      demand.push_back(mass);
    }

  TransportResult result;
  if (xs.empty()) {
    result.certified = true;
    g_solved.fetch_add(1, std::memory_order_relaxed);
    return result;
  }

  std::vector<std::vector<std::int64_t>> cost(xs.size(), std::vector<std::int64_t>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& row = g.distances_from(xs[i]);
    for (std::size_t j = 0; j < ys.size(); ++j) cost[i][j] = row[ys[j]];
  }
  TransportationSolution sol = solve_transportation(supply, demand, cost);

  result.cost = sol.cost;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j)
      if (sol.flow[i][j] != 0) result.plan[{xs[i], ys[j]}] = sol.flow[i][j];

  // f(z) = min_i d(x_i, z) - u_i is 1-Lipschitz, equals v_j on every target
  // and closes the duality gap.
  auto potential_at = [&](Vertex z) {
    std::int64_t best = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::int64_t val = g.distance(xs[i], z) - sol.u[i];
      if (i == 0 || val < best) best = val;
    }
    return best;
  };
  for (Vertex z : xs) result.potential[z] = potential_at(z);
  for (Vertex z : ys) result.potential[z] = potential_at(z);
  result.dual_value = 0;
  for (const auto& [v, mass] : nu) result.dual_value += result.potential[v] * mass;
  for (const auto& [v, mass] : mu) result.dual_value -= result.potential[v] * mass;

  result.certified = certify(g, mu, nu, result).ok();
  g_solved.fetch_add(1, std::memory_order_relaxed);
  if (!result.certified) g_failures.fetch_add(1, std::memory_order_relaxed);
  return result;
}

Certificate certify(const Graph& g, const SparseMeasure& mu, const SparseMeasure& nu,
                    const TransportResult& result) {
  Certificate c;
  std::map<Vertex, Rational> out, in;
  Rational cost = 0;
  for (const auto& [key, mass] : result.plan) {
    if (mass <= 0) return c;
    out[key.first] += mass;
    in[key.second] += mass;
    cost += mass * g.distance(key.first, key.second);
  }
  auto same = [](const std::map<Vertex, Rational>& flow, const SparseMeasure& m) {
    for (const auto& [v, mass] : m) {
      auto it = flow.find(v);
      Rational got = it == flow.end() ? Rational(0) : it->second;
      if (got != mass) return false;
    }
    for (const auto& [v, mass] : flow)
      if (!m.count(v)) return false;
    return true;
  };
  c.marginals = same(out, mu) && same(in, nu) && cost == result.cost;

  c.lipschitz = true;
  for (auto a = result.potential.begin(); a != result.potential.end() && c.lipschitz; ++a)
    for (auto b = std::next(a); b != result.potential.end(); ++b) {
      Rational diff = a->second - b->second;
      if (diff < 0) diff = -diff;
      if (diff > g.distance(a->first, b->first)) {
        c.lipschitz = false;
        break;
      }
    }

  Rational dual = 0;
  bool defined = true;
  for (const auto& [v, mass] : nu) {
    auto it = result.potential.find(v);
    if (it == result.potential.end()) defined = false;
    else dual += it->second * mass;
  }
  for (const auto& [v, mass] : mu) {
    auto it = result.potential.find(v);
    if (it == result.potential.end()) defined = false;
    else dual -= it->second * mass;
  }
  c.zero_gap = defined && dual == result.cost && dual == result.dual_value;
  return c;
}

TransportStats transport_stats() {
  return {g_solved.load(std::memory_order_relaxed), g_failures.load(std::memory_order_relaxed)};
}

}  // namespace curvebound
