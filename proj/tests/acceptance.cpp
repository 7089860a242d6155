// Acceptance driver: `acceptance <criterion 1..11> <path to curvebound cli>`.
// Prints one PASS/FAIL line and exits 0 on pass, 1 on fail.
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "curvebound/curvature.hpp"
#include "curvebound/error.hpp"
#include "curvebound/isoperimetry.hpp"
#include "curvebound/shells.hpp"
#include "curvebound/spectral.hpp"
#include "curvebound/transport.hpp"
#include "oracles.hpp"

using namespace curvebound;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Rational r(long long p, long long q = 1) { return make_rational(p, q); }

// Tolerances and limits, fixed here and nowhere else.
constexpr double kTransportSeconds = 30, kCurvatureSeconds = 1, kPairsSeconds = 60, kShellSeconds = 120;
constexpr double kSandwichSlack = 1e-8, kSandwichSeconds = 60;
constexpr double kDominationSeconds = 120;
constexpr double kBuserFactor = 1.25, kBuserSeconds = 30;
constexpr double kConstantEnvelopeBand = 0.2;
constexpr double kPolyLow = 0.2, kPolyHigh = 1.0, kBracketSeconds = 30;
constexpr double kToeplitzTol = 1e-12, kJacobiTol = 1e-9, kEigenSeconds = 60;
constexpr double kSqrtDLow = 0.3, kSqrtDHigh = 3.0, kIsoSeconds = 120;
constexpr double kDeterminismSeconds = 60;

void note(Outcome& o, const std::string& s) {
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += s;
}

void fail(Outcome& o, const std::string& s) {
  o.pass = false;
  note(o, s);
}

std::vector<Vertex> weight_set(int d, const std::function<bool(int)>& pred) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < (1 << d); ++v)
    if (pred(std::popcount(static_cast<unsigned>(v)))) out.push_back(v);
  return out;
}

ShellProfile middle_slice(const Graph& g, int d) {
  const int m = d / 2;
  return shell_profile(g, weight_set(d, [&](int w) { return w == m; }),
                       SideSelector::plus(weight_set(d, [&](int w) { return w > m; })));
}

ShellProfile optimal_cut(const Graph& g, const std::vector<Vertex>& a) {
  return shell_profile(g, outer_boundary(g, a), SideSelector::plus(a));
}

const char* kSmallGraphs[] = {"cycle:4",    "cycle:5",    "cycle:6",     "cycle:7",     "cycle:8",
                              "cycle:9",    "cycle:10",   "hypercube:2", "hypercube:3", "torus:3,2",
                              "tree:2,2",   "tree:3,2",   "tree:2,3",    "complete:3",  "complete:4",
                              "complete:5", "complete:6", "product:cycle:3,complete:2",
                              "product:cycle:4,complete:2", "product:cycle:5,complete:2",
                              "product:complete:3,complete:3"};

// 1. exact curvature values
Outcome exact_curvature() {
  Outcome o;
  if (kappa(generate("complete:2"), 0, 1) != 1) fail(o, "K2 edge is not 1");
  Graph q2 = generate("hypercube:2");
  for (auto e : q2.edges())
    if (kappa(q2, e.u, e.v) != r(1, 2)) fail(o, "Q2 edge is not 1/2");
  for (int n = 6; n <= 12; ++n) {
    Graph c = generate(FamilySpec::cycle(n));
    for (auto e : c.edges())
      if (kappa(c, e.u, e.v) != 0) fail(o, "C" + std::to_string(n) + " edge is not 0");
  }
  CurvatureReport tree = global_lower_bound(generate("tree:3,5"));
  int interior = 0;
  for (const auto& [e, k] : tree.edge_kappa) {
    if (tree.boundary_contaminated.count(e)) continue;
    ++interior;
    if (k != r(-1, 3)) fail(o, "tree edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is " + to_string(k));
  }
  if (interior == 0) fail(o, "no uncontaminated tree edges");
  note(o, std::to_string(interior) + " interior tree edges at -1/3");
  return o;
}

// 2. zero duality gap on every transport instance
Outcome duality_gap() {
  Outcome o;
  const TransportStats before = transport_stats();
  long long certified = 0;
  for (const char* spec : {"torus:5,3", "hypercube:6", "torus:8,2", "tree:3,4", "hypercube:5", "cycle:12",
                           "product:cycle:5,complete:3"}) {
    Graph g = generate(spec);
    for (auto [x, y] : all_vertex_pairs(g)) {
      SparseMeasure mx = lazy_walk_measure(g, x), my = lazy_walk_measure(g, y);
      TransportResult t = w1(g, mx, my);
      Certificate c = certify(g, mx, my, t);
      if (!c.ok() || t.dual_value != t.cost) {
        fail(o, std::string(spec) + " pair " + std::to_string(x) + "," + std::to_string(y));
        continue;
      }
      ++certified;
    }
  }
  const TransportStats after = transport_stats();
  const auto solved = after.solved - before.solved;
  if (after.certificate_failures != before.certificate_failures) fail(o, "solver reported certificate failures");
  if (solved < 10000) fail(o, "only " + std::to_string(solved) + " instances");
  note(o, std::to_string(solved) + " instances, " + std::to_string(certified) + " independently certified");
  return o;
}

// 3. neighbor minimization and tensorization
Outcome pairs_and_tensorization() {
  Outcome o;
  std::vector<std::pair<std::string, Graph>> graphs{{"hypercube:3", generate("hypercube:3")},
                                                    {"cycle:8", generate("cycle:8")}};
  for (int rr = 1; rr <= 4; ++rr) graphs.emplace_back("K2^" + std::to_string(rr), graph_power(generate("complete:2"), rr));
  long long pairs = 0;
  for (const auto& [name, g] : graphs) {
    auto all = all_vertex_pairs(g);
    pairs += static_cast<long long>(all.size());
    auto bad = check_neighbor_minimization(g, all);
    if (!bad.empty()) fail(o, name + ": " + std::to_string(bad.size()) + " pairs below the edge minimum");
  }
  const Graph k2 = generate("complete:2");
  for (int rr = 1; rr <= 4; ++rr) {
    TensorizationCheck t = check_tensorization(k2, rr);
    if (!t.holds) fail(o, "K2 power " + std::to_string(rr));
  }
  for (const char* spec : {"hypercube:3", "cycle:8"}) {
    TensorizationCheck t = check_tensorization(generate(spec), 2);
    if (!t.holds) fail(o, std::string(spec) + " squared");
  }
  note(o, std::to_string(pairs) + " pairs");
  return o;
}

// 4. shell growth under a curvature lower bound
Outcome shell_growth() {
  Outcome o;
  std::vector<std::string> specs;
  for (int d = 2; d <= 6; ++d) specs.push_back("hypercube:" + std::to_string(d));
  for (int n = 3; n <= 6; ++n) specs.push_back("torus:" + std::to_string(n) + ",2");
  for (int p = 3; p <= 4; ++p)
    for (int depth = 1; depth <= 6; ++depth) specs.push_back("tree:" + std::to_string(p) + "," + std::to_string(depth));
  long long comparisons = 0;
  int bipartite = 0;
  for (const auto& spec : specs) {
    Graph g = generate(spec);
    CurvatureReport cr = global_lower_bound(g);
    Rational k = cr.global_lower_bound;
    if (g.has_boundary()) {
      // a truncated tree stands in for the regular tree, whose curvature is
      // the uncontaminated edge value (2 - p)/p
      const int p = g.max_degree();
      k = r(2 - p, p);
      if (cr.interior_lower_bound && *cr.interior_lower_bound != k) fail(o, spec + " interior curvature");
    }
    ShellGrowthCheck c = check_shell_growth(g, k);
    comparisons += c.comparisons;
    bipartite += g.is_bipartite();
    if (!c.violations.empty()) fail(o, spec + ": " + std::to_string(c.violations.size()) + " violations");
  }
  // the bipartite ratio d(1-k)/2 = 2 is attained on the 3-regular tree
  ShellGrowthCheck tight = check_shell_growth(generate("tree:3,5"), r(-1, 3));
  if (tight.max_ratio != 2 || !tight.violations.empty()) fail(o, "tree:3 ratio is " + to_string(tight.max_ratio));
  note(o, std::to_string(specs.size()) + " graphs, " + std::to_string(bipartite) + " bipartite, " +
              std::to_string(comparisons) + " comparisons, tree ratio " + to_string(tight.max_ratio));
  return o;
}

// 5. 1/(8B) <= R <= 1/(2B) with a monotone minimizer
Outcome hardy_sandwich() {
  Outcome o;
  int envelopes = 0;
  auto check = [&](const OneSidedEnvelope& v, const std::string& name) {
    double B = to_double(hardy_constant_B(v).B);
    RayleighResult res = hardy_rayleigh_R(v);
    ++envelopes;
    if (!(1 / (8 * B) <= res.R + kSandwichSlack && res.R <= 1 / (2 * B) + kSandwichSlack))
      fail(o, name + " R=" + std::to_string(res.R) + " B=" + std::to_string(B));
    if (!res.monotone) fail(o, name + " minimizer not monotone");
  };
  std::vector<std::pair<std::string, GrowthFunction>> synthetic{
      {"constant", growth::constant()},          {"exp 3/2", growth::exponential(r(3, 2))},
      {"exp 2", growth::exponential(r(2))},       {"exp 3", growth::exponential(r(3))},
      {"poly 1", growth::polynomial(1)},          {"poly 2", growth::polynomial(2)}};
  for (const auto& [name, nu] : synthetic)
    for (int T : {1, 2, 4, 8, 16, 32, 64}) {
      GrowthEnvelope e = mu_from_hout(nu, hout_for_truncation(nu, T));
      check(side_view(e, Side::Plus), name + " T=" + std::to_string(T));
    }
  auto empirical = [&](const ShellProfile& p, const std::string& name) {
    GrowthEnvelope e = empirical_envelope(p);
    if (e.t_plus >= 1) check(side_view(e, Side::Plus), name + " +");
    if (e.two_sided && e.t_minus <= -1) check(side_view(e, Side::Minus), name + " -");
  };
  for (int d = 3; d <= 10; ++d) empirical(middle_slice(generate(FamilySpec::hypercube(d)), d), "Q" + std::to_string(d));
  for (int n = 6; n <= 16; n += 2) {
    Graph c = generate(FamilySpec::cycle(n));
    empirical(optimal_cut(c, cheeger_brute(c, CheegerKind::Outer).witness[0]), "C" + std::to_string(n));
  }
  for (int n = 4; n <= 10; n += 2) {
    IsoperimetryResult w = cheeger_family(FamilySpec::torus(n, 2));
    empirical(optimal_cut(generate(FamilySpec::torus(n, 2)), w.witness[0]), "torus " + std::to_string(n));
  }
  if (envelopes < 50) fail(o, "only " + std::to_string(envelopes) + " envelopes");
  note(o, std::to_string(envelopes) + " envelopes");
  return o;
}

// 6. every bound route dominates the true eigenvalue
Outcome domination() {
  Outcome o;
  std::map<std::string, int> applied;
  auto run = [&](const std::string& name, const Graph& g, const ShellProfile& p, std::optional<Rational> h) {
    BoundInputs in;
    in.graph_id = name;
    in.envelope = empirical_envelope(p);
    // the measured shells are themselves a valid lower envelope
    in.hout_envelope = in.envelope;
    in.h_out = h;
    in.profile = p;
    in.vertex_count = g.vertex_count();
    in.regular = g.is_regular();
    in.spectrum = laplacian_spectrum(g);
    SpectralBoundReport rep = bound_lambda2(in);
    for (const auto& c : rep.checks) {
      if (!c.applicable) continue;
      ++applied[c.id];
      if (!c.satisfied)
        fail(o, name + " " + c.id + " " + c.note + " bound=" + std::to_string(c.bound.value_or(-1)) +
                    " actual=" + std::to_string(c.actual.value_or(-1)));
    }
    if (!rep.all_satisfied && o.pass) fail(o, name + " report not satisfied");
  };
  for (int d = 4; d <= 10; ++d) {
    Graph g = generate(FamilySpec::hypercube(d));
    run("Q" + std::to_string(d), g, middle_slice(g, d), std::nullopt);
  }
  for (int n = 6; n <= 20; ++n) {
    Graph c = generate(FamilySpec::cycle(n));
    IsoperimetryResult iso = cheeger_brute(c, CheegerKind::Outer);
    run("C" + std::to_string(n), c, optimal_cut(c, iso.witness[0]), iso.value);
    // antipodal pair cut
    std::vector<Vertex> sigma{0, n / 2};
    std::vector<Vertex> arc;
    for (Vertex v = 1; v < n / 2; ++v) arc.push_back(v);
    if (!arc.empty()) run("C" + std::to_string(n) + " antipodal", c, shell_profile(c, sigma, SideSelector::plus(arc)), iso.value);
  }
  for (int n = 4; n <= 12; n += 2) {
    Graph t = generate(FamilySpec::torus(n, 2));
    IsoperimetryResult w = cheeger_family(FamilySpec::torus(n, 2));
    run("torus " + std::to_string(n), t, optimal_cut(t, w.witness[0]), w.value);
  }
  std::string counts;
  for (const char* id : {"hardy-lambda2", "tridiagonal-lambda2", "tridiagonal-higher", "explicit-cut-set"}) {
    if (applied[id] == 0) fail(o, std::string(id) + " never applicable");
    counts += std::string(counts.empty() ? "" : " ") + id + "=" + std::to_string(applied[id]);
  }
  note(o, counts);
  return o;
}

// 7. constant-envelope Buser form
Outcome constant_buser() {
  Outcome o;
  // (a) hypercube middle slices with the slice witness as h_out
  std::string a_detail;
  bool a_pass = true;
  for (int d = 8; d <= 30; d += 2) {
    Graph g = d <= 12 ? generate(FamilySpec::hypercube(d)) : Graph::from_edges(2, std::vector<Edge>{{0, 1}});
    if (d <= 12) {
      // nu = 1 certified by the binomial shells
      GrowthEnvelope emp = empirical_envelope(middle_slice(g, d));
      for (const auto& [k, v] : emp.nu)
        if (v > 1) fail(o, "Q" + std::to_string(d) + " slice shell exceeds nu = 1");
    }
    Rational h = hypercube_slice_ratio(d);
    const double limit = 13.5 * to_double(h * h) * kBuserFactor;
    std::string line;
    try {
      GrowthEnvelope e = mu_from_hout(growth::constant(), h);
      double inv = 1 / (2 * to_double(hardy_constant_B(e).B));
      if (inv > limit) a_pass = false;
      line = "d=" + std::to_string(d) + " 1/(2B)=" + std::to_string(inv) + " limit=" + std::to_string(limit);
    } catch (const Error&) {
      a_pass = false;
      line = "d=" + std::to_string(d) + " T=0 no bound";
    }
    if (d == 8 || d == 16 || d == 30) a_detail += (a_detail.empty() ? "" : ", ") + line;
  }
  if (!a_pass) fail(o, "slice form fails: " + a_detail + " (h_out >= 1/3 leaves T <= 1)");
  else note(o, "slice form holds: " + a_detail);

  // (b) synthetic constant envelopes
  double worst = 0;
  for (int T = 30; T <= 300; ++T) {
    Rational h = hout_for_truncation(growth::constant(), T);
    Rational B = hardy_constant_B(mu_from_hout(growth::constant(), h)).B;
    worst = std::max(worst, std::abs(to_double(27 * B * h * h) - 1));
  }
  if (worst > kConstantEnvelopeBand) fail(o, "synthetic |27 B h^2 - 1| reaches " + std::to_string(worst));
  else note(o, "synthetic |27 B h^2 - 1| <= " + std::to_string(worst));
  return o;
}

// 8. exponential brackets and linear growth for polynomial envelopes
Outcome brackets() {
  Outcome o;
  long long checked = 0;
  auto cpow = [](const Rational& c, int n) {
    Rational p = 1;
    for (int i = 0; i < n; ++i) p *= c;
    return p;
  };
  for (Rational c : {r(3, 2), r(2), r(3)}) {
    // nu(i) = c^i and nu(i) = d c^(i-1) with nu(0) = 1
    for (int T = 1; T <= 100; ++T) {
      Rational hi = (c - 1) / (cpow(c, T + 1) - 1), lo = (c - 1) / (cpow(c, T + 2) - 1);
      for (Rational h : {lo, (lo + hi) / 2, hi - (hi - lo) / 1000}) {
        GrowthEnvelope e = mu_from_hout(growth::exponential(c), h);
        if (e.T != T) fail(o, "exponential truncation mismatch");
        Rational B = hardy_constant_B(e).B;
        Rational lower = (T + T / (cpow(c, T + 1) - 1) - c / (c - 1)) / (c + 1);
        Rational upper = T * c / (c * c - 1);
        ++checked;
        if (B < lower || B > upper) fail(o, "exponential c=" + to_string(c) + " T=" + std::to_string(T));
      }
    }
    for (int d : {3, 4}) {
      if (c > d) continue;
      for (int T = 1; T <= 100; ++T) {
        Rational hi = (c - 1) / (c - 1 + d * (cpow(c, T) - 1)), lo = (c - 1) / (c - 1 + d * (cpow(c, T + 1) - 1));
        for (Rational h : {lo, (lo + hi) / 2, hi - (hi - lo) / 1000}) {
          GrowthEnvelope e = mu_from_hout(growth::shifted_exponential(Rational(d), c), h);
          if (e.T != T) fail(o, "shifted truncation mismatch");
          Rational B = hardy_constant_B(e).B;
          Rational lower = (T + T * (d + 1 - c) / (c - 1 + d * (cpow(c, T) - 1)) - c / (c - 1)) / (1 + d);
          Rational upper = T * (Rational(1, 1 + d) + c / (d * (c * c - 1)));
          ++checked;
          if (B < lower || B > upper)
            fail(o, "shifted c=" + to_string(c) + " d=" + std::to_string(d) + " T=" + std::to_string(T));
        }
      }
    }
  }
  double lo_ratio = 1e9, hi_ratio = 0;
  for (int b : {1, 2})
    for (int T = 10; T <= 200; ++T) {
      GrowthFunction nu = growth::polynomial(b);
      Rational B = hardy_constant_B(mu_from_hout(nu, hout_for_truncation(nu, T))).B;
      double ratio = to_double(B) / T;
      lo_ratio = std::min(lo_ratio, ratio);
      hi_ratio = std::max(hi_ratio, ratio);
    }
  if (lo_ratio < kPolyLow || hi_ratio > kPolyHigh)
    fail(o, "polynomial B/T in [" + std::to_string(lo_ratio) + ", " + std::to_string(hi_ratio) + "]");
  note(o, std::to_string(checked) + " exact brackets, polynomial B/T in [" + std::to_string(lo_ratio) + ", " +
              std::to_string(hi_ratio) + "]");
  return o;
}

// 9. eigensolvers against closed forms
Outcome eigensolvers() {
  Outcome o;
  double worst_t = 0, worst_j = 0;
  for (int m = 1; m <= 200; ++m) {
    TridiagonalSystem t{std::vector<double>(m, 4.0), std::vector<double>(m - 1, -2.0), Side::Plus};
    auto ev = tridiagonal_eigenvalues(t, m);
    for (int k = 1; k <= m; ++k)
      worst_t = std::max(worst_t, std::abs(ev[k - 1] - 4 * (1 - std::cos(k * std::numbers::pi / (m + 1)))));
  }
  if (worst_t > kToeplitzTol) fail(o, "Toeplitz error " + std::to_string(worst_t));
  std::vector<FamilySpec> specs;
  for (int d = 1; d <= 8; ++d) specs.push_back(FamilySpec::hypercube(d));
  for (int n : {3, 4, 5, 7, 10, 16, 31, 64, 101, 128, 200, 256}) specs.push_back(FamilySpec::cycle(n));
  for (const auto& s : specs) {
    auto closed = family_spectrum(s);
    if (!closed) {
      fail(o, "no closed form for " + s.to_string());
      continue;
    }
    Spectrum dense = dense_spectrum(generate(s), 256);
    for (std::size_t i = 0; i < closed->size(); ++i)
      worst_j = std::max(worst_j, std::abs(dense.eigenvalues[i] - (*closed)[i]));
  }
  if (worst_j > kJacobiTol) fail(o, "Jacobi error " + std::to_string(worst_j));
  std::ostringstream s;
  s << "Toeplitz max error " << worst_t << ", Jacobi max error " << worst_j;
  note(o, s.str());
  return o;
}

// 10. isoperimetric constants
Outcome isoperimetry() {
  Outcome o;
  if (cheeger_brute(generate("cycle:6"), CheegerKind::Outer).value != r(2, 3)) fail(o, "h_out(C6) != 2/3");
  if (cheeger_brute(generate("hypercube:2"), CheegerKind::Outer).value != 1) fail(o, "h_out(Q2) != 1");
  int sandwiched = 0, monotone = 0;
  std::vector<std::string> specs(std::begin(kSmallGraphs), std::end(kSmallGraphs));
  for (const char* extra : {"hypercube:4", "torus:4,2", "cycle:14", "tree:3,3"}) specs.push_back(extra);
  for (const auto& spec : specs) {
    Graph g = generate(spec);
    const int d = g.max_degree();
    Rational h = cheeger_brute(g, CheegerKind::Edge).value;
    Rational hout = cheeger_brute(g, CheegerKind::Outer).value;
    if (!(h <= hout && hout <= d * h)) fail(o, spec + " sandwich");
    ++sandwiched;
    if (g.vertex_count() <= 10 && g.vertex_count() >= 3) {
      if (!verify_h_monotonicity(g, 3).empty()) fail(o, spec + " monotonicity");
      ++monotone;
    }
  }
  if (monotone < 20) fail(o, "monotonicity on only " + std::to_string(monotone) + " graphs");
  for (int d = 4; d <= 12; ++d) {
    double v = std::sqrt(d) * to_double(cheeger_family(FamilySpec::hypercube(d)).value);
    if (v < kSqrtDLow || v > kSqrtDHigh) fail(o, "sqrt(d) h_out = " + std::to_string(v) + " at d=" + std::to_string(d));
  }
  note(o, std::to_string(sandwiched) + " sandwiches, monotonicity on " + std::to_string(monotone) + " graphs");
  return o;
}

// 11. byte-identical verify output
Outcome determinism(const std::string& cli) {
  Outcome o;
  auto capture = [&](std::string& out) {
    std::string cmd = "\"" + cli + "\" verify gen:hypercube:4 --format json";
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return -1;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    return pclose(f);
  };
  std::string a, b;
  int sa = capture(a), sb = capture(b);
  if (sa != 0 || sb != 0) fail(o, "verify exited with " + std::to_string(sa) + "/" + std::to_string(sb));
  if (a.empty()) fail(o, "empty output");
  if (a != b) fail(o, "outputs differ");
  note(o, std::to_string(a.size()) + " bytes");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <1..11> [cli path]\n";
    return 2;
  }
  const int which = std::atoi(argv[1]);
  const std::string cli = argc > 2 ? argv[2] : "curvebound";
  struct Entry {
    const char* name;
    double seconds;
    std::function<Outcome()> run;
  };
  const std::map<int, Entry> table{
      {1, {"exact curvature values", kCurvatureSeconds, exact_curvature}},
      {2, {"zero duality gap", kTransportSeconds, duality_gap}},
      {3, {"pair minimization and tensorization", kPairsSeconds, pairs_and_tensorization}},
      {4, {"shell growth", kShellSeconds, shell_growth}},
      {5, {"Hardy sandwich", kSandwichSeconds, hardy_sandwich}},
      {6, {"bound domination", kDominationSeconds, domination}},
      {7, {"constant-envelope Buser", kBuserSeconds, constant_buser}},
      {8, {"growth envelope brackets", kBracketSeconds, brackets}},
      {9, {"eigensolver oracles", kEigenSeconds, eigensolvers}},
      {10, {"isoperimetry", kIsoSeconds, isoperimetry}},
      {11, {"determinism", kDeterminismSeconds, [&] { return determinism(cli); }}},
  };
  auto it = table.find(which);
  if (it == table.end()) {
    std::cerr << "unknown criterion " << which << "\n";
    return 2;
  }
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = it->second.run();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > it->second.seconds) fail(out, "over time budget " + std::to_string(it->second.seconds) + " s");
  std::printf("criterion %2d %s: %s (%s; %.2f s)\n", which, out.pass ? "PASS" : "FAIL", it->second.name,
              out.detail.c_str(), elapsed);
  return out.pass ? 0 : 1;
}
