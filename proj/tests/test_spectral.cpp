#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "curvebound/error.hpp"
#include "curvebound/isoperimetry.hpp"
#include "curvebound/spectral.hpp"
#include "oracles.hpp"

using namespace curvebound;

namespace {

Rational r(long long p, long long q = 1) { return make_rational(p, q); }

GrowthEnvelope two_sided(const std::vector<Rational>& nu, const std::vector<Rational>& mu) {
  GrowthEnvelope env;
  env.two_sided = true;
  for (int k = 0; k < static_cast<int>(mu.size()); ++k) {
    env.nu[k] = env.nu[-k] = nu[k];
    env.mu[k] = env.mu[-k] = mu[k];
  }
  env.t_plus = static_cast<int>(mu.size()) - 1;
  env.t_minus = -env.t_plus;
  return env;
}

std::vector<Vertex> weight_set(int d, auto pred) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < (1 << d); ++v)
    if (pred(std::popcount(static_cast<unsigned>(v)))) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("spectra of small graphs") {
  Spectrum c6 = laplacian_spectrum(generate("cycle:6"));
  CHECK(c6.method == SpectrumMethod::ClosedFormFamily);
  std::vector<double> expect{0, 0.5, 0.5, 1.5, 1.5, 2};
  Spectrum dense = dense_spectrum(generate("cycle:6"));
  for (int i = 0; i < 6; ++i) {
    CHECK(c6.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    CHECK(std::abs(dense.eigenvalues[i] - expect[i]) <= 1e-9);
  }
  Spectrum k2 = laplacian_spectrum(generate("complete:2"));
  CHECK(k2.eigenvalues.size() == 2);
  CHECK(std::abs(k2.lambda(1)) <= 1e-12);
  CHECK(std::abs(k2.lambda(2) - 2) <= 1e-12);
}

TEST_CASE("hypercube spectrum with multiplicities") {
  for (int d = 1; d <= 6; ++d) {
    Graph g = generate(FamilySpec::hypercube(d));
    Spectrum closed = laplacian_spectrum(g);
    Spectrum dense = dense_spectrum(g);
    std::vector<double> expect;
    for (int k = 0; k <= d; ++k)
      for (BigInt m = 0; m < oracle::choose(d, k); ++m) expect.push_back(2.0 * k / d);
    REQUIRE(closed.eigenvalues.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
      CHECK(std::abs(closed.eigenvalues[i] - expect[i]) <= 1e-12);
      CHECK(std::abs(dense.eigenvalues[i] - expect[i]) <= 1e-9);
    }
  }
}

TEST_CASE("spectrum invariants") {
  for (const char* spec : {"torus:4,2", "tree:3,3", "product:cycle:3,complete:3", "complete:6", "cycle:9"}) {
    Graph g = generate(spec);
    Spectrum s = laplacian_spectrum(g);
    REQUIRE(static_cast<int>(s.eigenvalues.size()) == g.vertex_count());
    CHECK(std::abs(s.lambda(1)) <= s.tolerance);
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      CHECK(s.eigenvalues[i] >= -s.tolerance);
      CHECK(s.eigenvalues[i] <= 2 + s.tolerance);
      if (i) CHECK(s.eigenvalues[i - 1] <= s.eigenvalues[i]);
    }
    // closed form and dense agree wherever both exist
    if (s.method == SpectrumMethod::ClosedFormFamily) {
      Spectrum d = dense_spectrum(g);
      for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        CHECK(std::abs(d.eigenvalues[i] - s.eigenvalues[i]) <= 1e-9);
    }
  }
  CHECK_THROWS_AS(dense_spectrum(generate("cycle:40"), 30), Error);
}

TEST_CASE("tridiagonal eigenvalues") {
  for (int m = 1; m <= 60; ++m) {
    TridiagonalSystem t{std::vector<double>(m, 4.0), std::vector<double>(m - 1, -2.0), Side::Plus};
    auto ev = tridiagonal_eigenvalues(t, m);
    for (int k = 1; k <= m; ++k) CHECK(std::abs(ev[k - 1] - oracle::toeplitz_eigenvalue(4, -2, m, k)) <= 1e-12);
  }
  TridiagonalSystem one{{3.5}, {}, Side::Plus};
  CHECK(tridiagonal_eigenvalues(one, 1)[0] == doctest::Approx(3.5).epsilon(1e-14));
  TridiagonalSystem two{{2.0, 2.0}, {-0.75}, Side::Plus};
  auto ev = tridiagonal_eigenvalues(two, 2);
  CHECK(std::abs(ev[0] - 1.25) <= 1e-12);
  CHECK(std::abs(ev[1] - 2.75) <= 1e-12);
  CHECK(sturm_count(two, 2.0) == 1);
  CHECK_THROWS_AS(tridiagonal_eigenvalues(two, 3), Error);
}

TEST_CASE("Hardy constant") {
  GrowthEnvelope a = mu_from_hout(growth::constant(), r(1, 5));
  HardyConstant b = hardy_constant_B(a);
  CHECK(b.B == r(3, 5));
  CHECK((b.argmax == 1 || b.argmax == 2));

  // T = 1 leaves a single term
  GrowthFunction nu = growth::exponential(r(2));
  Rational h = hout_for_truncation(nu, 1);
  GrowthEnvelope one = mu_from_hout(nu, h);
  REQUIRE(one.T == 1);
  CHECK(hardy_constant_B(one).B == (1 - h * (nu(0) + nu(1))) / (nu(1) + nu(0)));

  GrowthEnvelope zero = mu_from_hout(growth::constant(), r(2, 3));
  CHECK_THROWS_AS(hardy_constant_B(zero), Error);

  // constant envelope grows like T^2 / 27
  for (int T = 30; T <= 120; T += 15) {
    GrowthEnvelope e = mu_from_hout(growth::constant(), hout_for_truncation(growth::constant(), T));
    double ratio = to_double(hardy_constant_B(e).B) / (T * T / 27.0);
    CHECK(ratio >= 0.85);
    CHECK(ratio <= 1.15);
  }
}

TEST_CASE("B agrees with the direct oracle") {
  for (auto nu : {growth::constant(), growth::exponential(r(3, 2)), growth::polynomial(1),
                  growth::shifted_exponential(r(3), r(2))})
    for (int T = 1; T <= 25; T += 3) {
      GrowthEnvelope e = mu_from_hout(nu, hout_for_truncation(nu, T));
      OneSidedEnvelope v = side_view(e, Side::Plus);
      CHECK(hardy_constant_B(e).B == oracle::hardy_B(v.nu, v.mu));
    }
}

TEST_CASE("Rayleigh quotient R") {
  GrowthEnvelope one = mu_from_hout(growth::constant(), r(2, 5));
  REQUIRE(one.T == 1);
  RayleighResult r1 = hardy_rayleigh_R(one);
  CHECK(std::abs(r1.R - 1 / to_double(one.mu_at(1))) <= 1e-12);

  for (auto nu : {growth::constant(), growth::exponential(r(2)), growth::polynomial(2)})
    for (int T = 1; T <= 40; T += 4) {
      GrowthEnvelope e = mu_from_hout(nu, hout_for_truncation(nu, T));
      RayleighResult res = hardy_rayleigh_R(e);
      double B = to_double(hardy_constant_B(e).B);
      OneSidedEnvelope v = side_view(e, Side::Plus);
      double oracle_R = oracle::hardy_R(v.nu, v.mu);
      CHECK(std::abs(res.R - oracle_R) <= 1e-12 * oracle_R);
      CHECK(1 / (8 * B) <= res.R + kDominationSlack);
      CHECK(res.R <= 1 / (2 * B) + kDominationSlack);
      CHECK(res.monotone);
      REQUIRE(static_cast<int>(res.minimizer.size()) == T);
      for (int k = 1; k < T; ++k) CHECK(res.minimizer[k] >= res.minimizer[k - 1]);
    }
}

TEST_CASE("A matrices") {
  GrowthEnvelope e = mu_from_hout(growth::constant(), r(1, 5));
  TridiagonalSystem a = build_A_matrix(side_view(e, Side::Plus), Side::Plus);
  REQUIRE(a.size() == 3);
  CHECK(a.diag[0] == doctest::Approx(20.0 / 3).epsilon(1e-14));
  CHECK(a.diag[1] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(a.diag[2] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(a.offdiag[0] == doctest::Approx(-10 / std::sqrt(6.0)).epsilon(1e-14));
  CHECK(a.offdiag[1] == doctest::Approx(-10 / std::sqrt(2.0)).epsilon(1e-14));

  TridiagonalSystem corner = build_A_matrix(side_view(e, Side::Plus), Side::Plus, 1);
  REQUIRE(corner.size() == 1);
  CHECK(corner.diag[0] == doctest::Approx(2 / 0.6).epsilon(1e-14));

  GrowthEnvelope sym = mu_from_hout(growth::polynomial(1), hout_for_truncation(growth::polynomial(1), 6), true);
  auto [ap, am] = build_A_matrices(sym);
  REQUIRE(ap);
  REQUIRE(am);
  auto ep = tridiagonal_eigenvalues(*ap, ap->size());
  auto em = tridiagonal_eigenvalues(*am, am->size());
  for (int i = 0; i < ap->size(); ++i) CHECK(std::abs(ep[i] - em[i]) <= 1e-12);

  // half the least A eigenvalue is R
  CHECK(std::abs(ep[0] / 2 - hardy_rayleigh_R(sym).R) <= 1e-9);
  CHECK_THROWS_AS(build_A_matrix(side_view(e, Side::Plus), Side::Plus, -1), Error);
}

TEST_CASE("higher bounds on Q6 and the 8x8 torus") {
  Graph q6 = generate("hypercube:6");
  auto sigma = weight_set(6, [](int w) { return w == 3; });
  auto above = weight_set(6, [](int w) { return w > 3; });
  ShellProfile p = shell_profile(q6, sigma, SideSelector::plus(above));
  GrowthEnvelope env = empirical_envelope(p);
  Spectrum s = laplacian_spectrum(q6);
  for (int k = 1; k <= 3; ++k)
    for (int l = 1; l <= 3; ++l) {
      HigherBound hb = bound_higher(env, k, l);
      CHECK(hb.index() == k + l);
      CHECK(hb.value + kDominationSlack >= s.lambda(k + l));
    }
  HigherBound b11 = bound_higher(env, 1, 1);
  double r_max = std::max(hardy_rayleigh_R(env, Side::Plus).R, hardy_rayleigh_R(env, Side::Minus).R);
  CHECK(b11.value <= r_max + 1e-9);
  CHECK(b11.value + kDominationSlack >= s.lambda(2));
  CHECK_THROWS_AS(bound_higher(env, 4, 1), Error);

  Graph t = generate("torus:8,2");
  IsoperimetryResult w = cheeger_family(FamilySpec::torus(8, 2));
  std::vector<Vertex> ts = outer_boundary(t, w.witness[0]);
  GrowthEnvelope te = empirical_envelope(shell_profile(t, ts, SideSelector::plus(w.witness[0])));
  Spectrum st = laplacian_spectrum(t);
  CHECK(bound_higher(te, 1, 1).value + kDominationSlack >= st.lambda(2));
  CHECK(bound_higher(te, 2, 2).value + kDominationSlack >= st.lambda(4));
}

TEST_CASE("explicit cut-set bound") {
  Graph c16 = generate("cycle:16");
  std::vector<Vertex> sigma{0, 8};
  ShellProfile p = shell_profile(c16, sigma, SideSelector::plus({1, 2, 3, 4, 5, 6, 7}));
  CutSetBound b = buser_constant_route(p, 16);
  CHECK(b.alpha == r(1, 8));
  CHECK(b.t == 2);
  CHECK(b.bound == r(3, 16));
  CHECK(to_double(b.bound) >= 1 - std::cos(std::numbers::pi / 8));

  std::vector<Vertex> big{0, 4, 8, 12};
  ShellProfile pb = shell_profile(c16, big, SideSelector::all_plus());
  try {
    buser_constant_route(pb, 16);
    FAIL("expected AlphaTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AlphaTooLarge);
  }
  Graph c20 = generate("cycle:20");
  std::vector<Vertex> one{0};
  try {
    buser_constant_route(shell_profile(c20, one), 20);
    FAIL("expected DominanceHypothesisFails");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DominanceHypothesisFails);
  }
}

TEST_CASE("higher Buser scan") {
  HigherBuser b = higher_buser_bound(r(1, 10), 2, 8);
  CHECK(b.argmin_t >= 1);
  CHECK(b.argmin_t <= 8);
  // C40 has h_out = 1/10
  Spectrum c40 = laplacian_spectrum(generate("cycle:40"));
  CHECK(b.bound + kDominationSlack >= c40.lambda(2));
  HigherBuser k1 = higher_buser_bound(r(1, 10), 1, 8);
  CHECK(k1.bound == doctest::Approx(b.bound).epsilon(1e-14));
  // the analytic choice of t is one of the scanned points
  const int t_star = 6;
  double at_star = 2 * (1 - std::cos(std::numbers::pi / (t_star + 1))) / (1 - 0.1 * (t_star + 1));
  CHECK(b.bound <= at_star + 1e-15);
  CHECK(b.reference > 0);
  CHECK_THROWS_AS(higher_buser_bound(r(1, 2), 2, 8), Error);
}

TEST_CASE("bound report") {
  // C12 with its optimal cut and nu = 1
  Graph c12 = generate("cycle:12");
  IsoperimetryResult iso = cheeger_brute(c12, CheegerKind::Outer);
  std::vector<Vertex> sigma = outer_boundary(c12, iso.witness[0]);
  ShellProfile p = shell_profile(c12, sigma, SideSelector::plus(iso.witness[0]));
  BoundInputs in;
  in.graph_id = "cycle:12";
  in.envelope = empirical_envelope(p);
  in.hout_envelope = mu_from_hout(growth::constant(), iso.value, true, Provenance::Constant);
  in.h_out = iso.value;
  in.profile = p;
  in.vertex_count = 12;
  in.spectrum = laplacian_spectrum(c12);
  SpectralBoundReport rep = bound_lambda2(in);
  CHECK(rep.all_satisfied);
  REQUIRE(rep.lambda2_bound);
  CHECK(*rep.lambda2_bound >= 1 - std::cos(std::numbers::pi / 6));
  int applicable = 0;
  for (const auto& c : rep.checks) applicable += c.applicable;
  CHECK(applicable >= 3);

  // truncation below one
  BoundInputs deg = in;
  deg.hout_envelope = mu_from_hout(growth::constant(), r(3, 4), true);
  SpectralBoundReport rd = bound_lambda2(deg);
  CHECK_FALSE(rd.lambda2_bound);
  bool marked = false;
  for (const auto& c : rd.checks)
    if (c.id == "hardy-lambda2") marked = !c.applicable && c.note.find("unavailable") != std::string::npos;
  CHECK(marked);
}
