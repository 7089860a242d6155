#include "curvebound/isoperimetry.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <thread>

#include "curvebound/error.hpp"
#include "curvebound/shells.hpp"

namespace curvebound {

std::string cheeger_kind_name(CheegerKind kind) {
  switch (kind) {
    case CheegerKind::Edge: return "edge";
    case CheegerKind::Inner: return "inner";
    case CheegerKind::Outer: return "outer";
  }
  return "unknown";
}

CheegerKind parse_cheeger_kind(std::string_view text) {
  if (text == "edge") return CheegerKind::Edge;
  if (text == "inner") return CheegerKind::Inner;
  if (text == "outer") return CheegerKind::Outer;
  throw Error(Errc::ParseError, "unknown Cheeger kind '" + std::string(text) + "'");
}

std::string iso_method_name(IsoMethod method) {
  return method == IsoMethod::BruteForce ? "brute-force" : "closed-form-family";
}

Rational boundary_ratio(const Graph& g, std::span<const Vertex> a, CheegerKind kind) {
  if (a.empty()) throw Error(Errc::ParameterOutOfRange, "ratio of an empty set");
  std::vector<char> in_a(g.vertex_count(), 0);
  for (Vertex v : a) in_a[v] = 1;
  long long boundary = 0;
  switch (kind) {
    case CheegerKind::Edge:
      for (Vertex v : a)
        for (Vertex y : g.neighbors(v)) boundary += !in_a[y];
      return Rational(boundary) / (Rational(g.max_degree()) * static_cast<long long>(a.size()));
    case CheegerKind::Inner:
      for (Vertex v : a)
        for (Vertex y : g.neighbors(v))
          if (!in_a[y]) {
            ++boundary;
            break;
          }
      break;
    case CheegerKind::Outer:
      boundary = static_cast<long long>(outer_boundary(g, a).size());
      break;
  }
  return Rational(boundary, static_cast<long long>(a.size()));
}

long long brute_force_limit() {
  if (const char* env = std::getenv("CURVEBOUND_MAX_BRUTE")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 1LL << 24;
}

namespace {

using Mask = std::uint64_t;

std::vector<Mask> neighbor_masks(const Graph& g) {
  std::vector<Mask> out(g.vertex_count(), 0);
  for (Vertex x = 0; x < g.vertex_count(); ++x)
    for (Vertex y : g.neighbors(x)) out[x] |= Mask{1} << y;
  return out;
}

std::vector<Vertex> mask_vertices(Mask m) {
  std::vector<Vertex> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

Mask outer_mask(const std::vector<Mask>& nbr, Mask a) {
  Mask hit = 0;
  for (Mask m = a; m; m &= m - 1) hit |= nbr[std::countr_zero(m)];
  return hit & ~a;
}

struct Candidate {
  long long boundary = 0;
  long long size = 0;
  Mask set = 0;
  bool valid = false;
};

// ratio, then size, then lexicographic order of the sorted vertex list
bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  __int128 lhs = static_cast<__int128>(a.boundary) * b.size;
  __int128 rhs = static_cast<__int128>(b.boundary) * a.size;
  if (lhs != rhs) return lhs < rhs;
  if (a.size != b.size) return a.size < b.size;
  Mask diff = a.set ^ b.set;
  if (!diff) return false;
  return (a.set >> std::countr_zero(diff)) & 1;
}

}  // namespace

IsoperimetryResult cheeger_brute(const Graph& g, CheegerKind kind, unsigned threads) {
  const int n = g.vertex_count();
  if (n < 2) throw Error(Errc::ParameterOutOfRange, "Cheeger constant needs two vertices");
  if (n > 62 || (1LL << n) > brute_force_limit())
    throw Error(Errc::TooLarge, "2^" + std::to_string(n) + " subsets exceed the brute-force guard");
  const std::vector<Mask> nbr = neighbor_masks(g);
  const Mask total = Mask{1} << n;
  const int half = n / 2;

  auto scan = [&](Mask begin, Mask end) {
    Candidate best;
    for (Mask a = begin; a < end; ++a) {
      int size = std::popcount(a);
      if (size == 0 || size > half) continue;
      Candidate c{0, size, a, true};
      switch (kind) {
        case CheegerKind::Outer: c.boundary = std::popcount(outer_mask(nbr, a)); break;
        case CheegerKind::Inner:
          for (Mask m = a; m; m &= m - 1) c.boundary += (nbr[std::countr_zero(m)] & ~a) != 0;
          break;
        case CheegerKind::Edge:
          for (Mask m = a; m; m &= m - 1) c.boundary += std::popcount(nbr[std::countr_zero(m)] & ~a);
          c.size = static_cast<long long>(size) * g.max_degree();  // ordering unchanged
          break;
      }
      if (better(c, best)) best = c;
    }
    return best;
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (total < 4096) threads = 1;
  std::vector<Candidate> partial(threads);
  if (threads == 1) {
    partial[0] = scan(1, total);
  } else {
    std::vector<std::thread> pool;
    Mask chunk = total / threads;
    for (unsigned t = 0; t < threads; ++t) {
      Mask begin = std::max<Mask>(1, chunk * t);
      Mask end = t + 1 == threads ? total : chunk * (t + 1);
      pool.emplace_back([&, t, begin, end] { partial[t] = scan(begin, end); });
    }
    for (auto& th : pool) th.join();
  }
  Candidate best;
  for (const auto& c : partial)
    if (better(c, best)) best = c;

  IsoperimetryResult r;
  r.kind = kind;
  r.method = IsoMethod::BruteForce;
  r.value = Rational(best.boundary, best.size);
  r.witness.push_back(mask_vertices(best.set));
  return r;
}

Rational hypercube_slice_ratio(int d) {
  if (d < 1) throw Error(Errc::ParameterOutOfRange, "hypercube needs d >= 1");
  const int m = d / 2;
  BigInt slice = binomial(d, m);
  BigInt below = 0, above = 0;
  for (int w = 0; w < m; ++w) below += binomial(d, w);
  for (int w = m + 1; w <= d; ++w) above += binomial(d, w);
  BigInt half = (BigInt(1) << d) / 2;
  BigInt side = 0;
  if (below <= half) side = below;
  if (above <= half && above > side) side = above;
  if (side == 0) throw Error(Errc::ParameterOutOfRange, "no admissible side of the middle slice");
  return Rational(slice, side);
}

namespace {

std::vector<Vertex> hypercube_witness(int d) {
  const int m = d / 2;
  const int n = 1 << d;
  std::vector<Vertex> below, above;
  for (Vertex v = 0; v < n; ++v) {
    int w = std::popcount(static_cast<unsigned>(v));
    if (w < m) below.push_back(v);
    else if (w > m) above.push_back(v);
  }
  const std::size_t half = n / 2;
  if (above.size() <= half && above.size() > below.size()) return above;
  return below.size() <= half && !below.empty() ? below : above;
}

std::vector<Vertex> torus_witness(const Graph& g, int n, int d) {
  if (d == 1) {
    std::vector<Vertex> arc;
    for (int i = 0; i < n / 2; ++i) arc.push_back(i);
    return arc;
  }
  const auto& dist = g.distances_from(0);
  int radius = (d * n + 3) / 4 - 1;
  for (; radius >= 0; --radius) {
    std::vector<Vertex> ball;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (dist[v] <= radius) ball.push_back(v);
    if (2 * ball.size() <= static_cast<std::size_t>(g.vertex_count())) return ball;
  }
  return {0};
}

}  // namespace

IsoperimetryResult cheeger_family(const FamilySpec& spec) {
  IsoperimetryResult r;
  r.kind = CheegerKind::Outer;
  r.method = IsoMethod::ClosedFormFamily;
  Graph g = generate(spec);
  std::vector<Vertex> witness;
  if (spec.kind == FamilySpec::Kind::Hypercube) {
    witness = hypercube_witness(spec.params[0]);
  } else if (spec.kind == FamilySpec::Kind::Torus) {
    witness = torus_witness(g, spec.params[0], spec.params[1]);
  } else {
    throw Error(Errc::UnknownFamily, "no closed-form witness for " + spec.to_string());
  }
  r.value = boundary_ratio(g, witness, CheegerKind::Outer);
  r.witness.push_back(std::move(witness));
  const int n = g.vertex_count();
  if (n <= 62 && (1LL << n) <= brute_force_limit())
    r.brute_value = cheeger_brute(g, CheegerKind::Outer).value;
  return r;
}

namespace {

struct PartitionSearch {
  const std::vector<Mask>& nbr;
  int n_vertices;
  int cells;
  std::vector<Mask> cell_mask;
  bool found = false;
  long long best_b = 0, best_s = 1;
  std::vector<Mask> best_cells;

  void finish() {
    long long wb = 0, ws = 1;
    for (Mask c : cell_mask) {
      long long b = std::popcount(outer_mask(nbr, c));
      long long s = std::popcount(c);
      if (b * ws > wb * s) {
        wb = b;
        ws = s;
      }
    }
    if (!found || wb * best_s < best_b * ws) {
      found = true;
      best_b = wb;
      best_s = ws;
      best_cells = cell_mask;
    }
  }

  void assign(int v, int used) {
    if (n_vertices - v < cells - used) return;
    if (v == n_vertices) {
      if (used == cells) finish();
      return;
    }
    for (int c = 0; c <= used && c < cells; ++c) {
      cell_mask[c] |= Mask{1} << v;
      assign(v + 1, std::max(used, c + 1));
      cell_mask[c] &= ~(Mask{1} << v);
    }
  }
};

}  // namespace

IsoperimetryResult higher_cheeger_brute(const Graph& g, int n) {
  const int nv = g.vertex_count();
  if (n < 2 || n > nv) throw Error(Errc::ParameterOutOfRange, "need 2 <= n <= |V|");
  const int limit = n == 2 ? 16 : 12;
  if (nv > limit)
    throw Error(Errc::TooLarge, "partition enumeration limited to " + std::to_string(limit) +
                                    " vertices for n = " + std::to_string(n));
  const std::vector<Mask> nbr = neighbor_masks(g);
  PartitionSearch search{nbr, nv, n, std::vector<Mask>(n, 0), false, 0, 1, {}};
  search.assign(0, 0);
  IsoperimetryResult r;
  r.kind = CheegerKind::Outer;
  r.order = n;
  r.method = IsoMethod::BruteForce;
  r.value = Rational(search.best_b, search.best_s);
  for (Mask c : search.best_cells) r.witness.push_back(mask_vertices(c));
  return r;
}

Rational merged_partition_ratio(const Graph& g, const std::vector<std::vector<Vertex>>& cells) {
  if (cells.size() < 2) throw Error(Errc::ParameterOutOfRange, "merge needs two cells");
  std::vector<std::pair<Rational, std::size_t>> ranked;
  for (std::size_t i = 0; i < cells.size(); ++i)
    ranked.emplace_back(boundary_ratio(g, cells[i], CheegerKind::Outer), i);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vertex> merged = cells[ranked[0].second];
  merged.insert(merged.end(), cells[ranked[1].second].begin(), cells[ranked[1].second].end());
  Rational worst = boundary_ratio(g, merged, CheegerKind::Outer);
  for (std::size_t i = 2; i < ranked.size(); ++i) worst = std::max(worst, ranked[i].first);
  return worst;
}

std::vector<MonotonicityViolation> verify_h_monotonicity(const Graph& g, int n_max) {
  std::vector<MonotonicityViolation> out;
  if (n_max < 3) return out;
  Rational previous = higher_cheeger_brute(g, 2).value;
  for (int n = 3; n <= std::min(n_max, g.vertex_count()); ++n) {
    IsoperimetryResult r = higher_cheeger_brute(g, n);
    Rational merged = merged_partition_ratio(g, r.witness);
    if (previous > r.value || merged > r.value) out.push_back({n, previous, r.value});
    previous = r.value;
  }
  return out;
}

}  // namespace curvebound
