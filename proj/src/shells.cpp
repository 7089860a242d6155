#include "curvebound/shells.hpp"

#include <algorithm>
#include <sstream>

#include "curvebound/error.hpp"

namespace curvebound {

ShellProfile shell_profile(const Graph& g, std::span<const Vertex> sigma, const SideSelector& sides) {
  const int n = g.vertex_count();
  if (sigma.empty()) throw Error(Errc::EmptySigma, "cut set is empty");
  // 0 = Sigma, 1 = V+, -1 = V-
  std::vector<int> side(n, 1);
  std::vector<char> in_sigma(n, 0);
  for (Vertex s : sigma) {
    if (s < 0 || s >= n) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(s));
    in_sigma[s] = 1;
    side[s] = 0;
  }
  if (sides.kind != SideSelector::Kind::AllPlus) {
    std::vector<char> marked(n, 0);
    for (Vertex v : sides.set) {
      if (v < 0 || v >= n) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v));
      if (in_sigma[v]) throw Error(Errc::ParameterOutOfRange, "side set meets the cut set");
      marked[v] = 1;
    }
    const bool plus = sides.kind == SideSelector::Kind::PlusSet;
    for (Vertex v = 0; v < n; ++v)
      if (!in_sigma[v]) side[v] = (marked[v] != 0) == plus ? 1 : -1;
  }
  for (const Edge& e : g.edges())
    if (side[e.u] * side[e.v] < 0)
      throw Error(Errc::NonSeparating, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                           " joins both sides");

  ShellProfile p;
  for (Vertex v = 0; v < n; ++v) {
    if (side[v] == 0) p.sigma.push_back(v);
    else if (side[v] > 0) p.v_plus.push_back(v);
    else p.v_minus.push_back(v);
  }
  DistanceField field = bfs_distances(g, p.sigma);
  p.signed_dist.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    int k = side[v] < 0 ? -field.dist[v] : field.dist[v];
    p.signed_dist[v] = k;
    ++p.shell_size[k];
    p.t_plus = std::max(p.t_plus, k);
    p.t_minus = std::min(p.t_minus, k);
  }
  return p;
}

std::vector<Vertex> outer_boundary(const Graph& g, std::span<const Vertex> a) {
  std::vector<char> in_a(g.vertex_count(), 0), hit(g.vertex_count(), 0);
  for (Vertex v : a) in_a[v] = 1;
  for (Vertex v : a)
    for (Vertex y : g.neighbors(v))
      if (!in_a[y]) hit[y] = 1;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (hit[v]) out.push_back(v);
  return out;
}

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Curvature: return "curvature";
    case Provenance::Constant: return "constant";
    case Provenance::Empirical: return "empirical";
    case Provenance::ExplicitSequence: return "explicit-sequence";
  }
  return "unknown";
}

Rational GrowthEnvelope::nu_at(int k) const {
  auto it = nu.find(k);
  return it == nu.end() ? Rational(0) : it->second;
}

Rational GrowthEnvelope::mu_at(int k) const {
  auto it = mu.find(k);
  return it == mu.end() ? Rational(0) : it->second;
}

OneSidedEnvelope side_view(const GrowthEnvelope& env, Side side) {
  const int sign = side == Side::Plus ? 1 : -1;
  const int T = side == Side::Plus ? env.t_plus : -env.t_minus;
  if (T < 1)
    throw Error(Errc::EmptySide,
                std::string(side == Side::Plus ? "plus" : "minus") + " side has no positive range");
  OneSidedEnvelope out;
  for (int k = 0; k <= T; ++k) {
    out.nu.push_back(env.nu_at(sign * k));
    out.mu.push_back(env.mu_at(sign * k));
  }
  return out;
}

GrowthEnvelope empirical_envelope(const ShellProfile& profile) {
  GrowthEnvelope env;
  env.provenance = Provenance::Empirical;
  env.two_sided = profile.two_sided();
  const Rational size = profile.sigma_size();
  const int reach = std::max(profile.t_plus, -profile.t_minus);
  for (int k = 0; k <= reach; ++k) {
    Rational up = Rational(profile.shell(k)) / size;
    Rational lo = up;
    if (env.two_sided) {
      Rational down = Rational(profile.shell(-k)) / size;
      up = std::max(up, down);
      lo = std::min(lo, down);
    }
    env.nu[k] = up;
    env.mu[k] = lo;
    if (env.two_sided) {
      env.nu[-k] = up;
      env.mu[-k] = lo;
    }
  }
  int t = 0;
  while (env.mu_at(t + 1) > 0) ++t;
  env.t_plus = t;
  env.t_minus = env.two_sided ? -t : 0;
  return env;
}

namespace growth {

GrowthFunction constant(Rational c) {
  return [c](int) { return c; };
}

GrowthFunction exponential(Rational c) {
  return [c](int i) {
    Rational v = 1;
    for (int j = 0; j < i; ++j) v *= c;
    return v;
  };
}

GrowthFunction shifted_exponential(Rational d, Rational c) {
  return [d, c](int i) {
    if (i == 0) return Rational(1);
    Rational v = d;
    for (int j = 1; j < i; ++j) v *= c;
    return v;
  };
}

GrowthFunction polynomial(int b) {
  return [b](int i) {
    BigInt p = 1;
    for (int j = 0; j < b; ++j) p *= i;
    return Rational(1 + p);
  };
}

}  // namespace growth

GrowthEnvelope mu_from_hout(const GrowthFunction& nu, const Rational& h_out, bool two_sided,
                            Provenance provenance) {
  if (h_out <= 0) throw Error(Errc::ParameterOutOfRange, "h_out must be positive");
  if (nu(0) < 1) throw Error(Errc::ParameterOutOfRange, "nu(0) must be at least 1");
  GrowthEnvelope env;
  env.provenance = provenance;
  env.two_sided = two_sided;
  env.h_out = h_out;
  Rational partial = 0;
  int T = -1;
  for (int k = 0;; ++k) {
    Rational v = nu(k);
    if (v < 0) throw Error(Errc::ParameterOutOfRange, "nu must be non-negative");
    partial += v;
    Rational m = 1 - h_out * partial;
    if (m <= 0) break;
    env.nu[k] = v;
    env.mu[k] = m;
    T = k;
    if (k > 1000000) throw Error(Errc::TooLarge, "truncation index exceeds 10^6");
  }
  if (T < 0) throw Error(Errc::NoPositiveRange, "mu(0) = 1 - h_out nu(0) is not positive");
  env.T = T;
  env.t_plus = T;
  env.t_minus = two_sided ? -T : 0;
  if (two_sided)
    for (int k = 1; k <= T; ++k) {
      env.nu[-k] = env.nu[k];
      env.mu[-k] = env.mu[k];
    }
  return env;
}

GrowthEnvelope mu_from_hout(const GrowthEnvelope& env, const Rational& h_out) {
  GrowthEnvelope src = env;
  auto nu = [&src](int k) { return src.nu_at(k); };
  GrowthEnvelope out = mu_from_hout(nu, h_out, env.two_sided, env.provenance);
  out.note = env.note;
  return out;
}

Rational hout_for_truncation(const GrowthFunction& nu, int T) {
  if (T < 0) throw Error(Errc::ParameterOutOfRange, "truncation must be non-negative");
  Rational s = 0;
  for (int k = 0; k <= T; ++k) s += nu(k);
  Rational next = s + nu(T + 1);
  return 2 / (s + next);
}

std::vector<EnvelopeViolation> check_envelope(const ShellProfile& profile, const GrowthEnvelope& env) {
  std::vector<EnvelopeViolation> out;
  const Rational size = profile.sigma_size();
  std::vector<int> indices;
  for (const auto& [k, count] : profile.shell_size) indices.push_back(k);
  for (const auto& [k, m] : env.mu)
    if (m > 0) indices.push_back(k);
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  for (int k : indices) {
    // one-sided envelopes speak for the positive side only
    if (k < 0 && !env.two_sided) continue;
    Rational lower = size * env.mu_at(k);
    Rational shell = profile.shell(k);
    // nu is only constrained where the envelope records it
    auto nu = env.nu.find(k);
    Rational upper = nu == env.nu.end() ? Rational(shell) : size * nu->second;
    if (shell < lower || shell > upper) out.push_back({k, profile.shell(k), lower, upper});
  }
  return out;
}

std::vector<LowerBoundViolation> verify_shell_lower_bound(const Graph& g, std::span<const Vertex> a,
                                                          const GrowthFunction& nu,
                                                          const Rational& h_out) {
  std::vector<Vertex> sigma = outer_boundary(g, a);
  std::vector<Vertex> a_vec(a.begin(), a.end());
  std::vector<LowerBoundViolation> out;
  for (bool a_positive : {true, false}) {
    SideSelector sel = a_positive ? SideSelector::plus(a_vec) : SideSelector::minus(a_vec);
    ShellProfile p = shell_profile(g, sigma, sel);
    const Rational size = p.sigma_size();
    Rational partial = 0;
    for (int k = 0;; ++k) {
      partial += nu(k);
      Rational bound = size * (1 - h_out * partial);
      if (Rational(p.shell(k)) < bound) out.push_back({a_positive, k, p.shell(k), bound});
      if (k > p.t_plus) break;  // bound is non-increasing past the last shell
    }
  }
  return out;
}

std::string envelope_csv(const GrowthEnvelope& env) {
  std::ostringstream out;
  out << "k,nu,mu\n";
  std::vector<int> keys;
  for (const auto& [k, v] : env.nu) keys.push_back(k);
  for (const auto& [k, v] : env.mu) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (int k : keys) out << k << ',' << to_string(env.nu_at(k)) << ',' << to_string(env.mu_at(k)) << '\n';
  return out.str();
}

}  // namespace curvebound
