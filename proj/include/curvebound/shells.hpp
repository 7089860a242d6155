#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvebound/graph.hpp"
#include "curvebound/rational.hpp"

namespace curvebound {

enum class Side { Plus, Minus };

/// How V \ Sigma is split into the positive and negative sides.
struct SideSelector {
  enum class Kind {
    PlusSet,   // V+ = set, V- = the rest
    MinusSet,  // V- = set, V+ = the rest
    AllPlus,   // V+ = V \ Sigma, V- empty
  };
  Kind kind = Kind::AllPlus;
  std::vector<Vertex> set;

  static SideSelector plus(std::vector<Vertex> a) { return {Kind::PlusSet, std::move(a)}; }
  static SideSelector minus(std::vector<Vertex> a) { return {Kind::MinusSet, std::move(a)}; }
  static SideSelector all_plus() { return {Kind::AllPlus, {}}; }
};

struct ShellProfile {
  std::vector<Vertex> sigma;
  std::vector<Vertex> v_plus;
  std::vector<Vertex> v_minus;
  std::vector<int> signed_dist;
  std::map<int, long long> shell_size;  // occupied indices only
  int t_plus = 0;
  int t_minus = 0;

  long long shell(int k) const {
    auto it = shell_size.find(k);
    return it == shell_size.end() ? 0 : it->second;
  }
  long long sigma_size() const { return static_cast<long long>(sigma.size()); }
  bool two_sided() const { return !v_minus.empty(); }
};

/// Throws EmptySigma, NonSeparating (an edge joins V+ and V-),
/// VertexOutOfRange, ParameterOutOfRange (side set meets Sigma).
ShellProfile shell_profile(const Graph& g, std::span<const Vertex> sigma,
                           const SideSelector& sides = SideSelector::all_plus());

/// Outer vertex boundary of A.
std::vector<Vertex> outer_boundary(const Graph& g, std::span<const Vertex> a);

enum class Provenance { Curvature, Constant, Empirical, ExplicitSequence };
std::string provenance_name(Provenance p);

/// Growth envelope nu and decay envelope mu over signed shell indices.
///
/// t_plus / t_minus bound the range where mu is positive. When mu comes from
/// an isoperimetric constant, h_out is set and T equals t_plus.
struct GrowthEnvelope {
  std::map<int, Rational> nu;
  std::map<int, Rational> mu;
  int t_plus = 0;
  int t_minus = 0;
  std::optional<int> T;
  std::optional<Rational> h_out;
  Provenance provenance = Provenance::ExplicitSequence;
  bool two_sided = false;
  std::string note;

  Rational nu_at(int k) const;
  Rational mu_at(int k) const;
};

/// Per-side view with indices 0..T: nu[k] = nu(+-k), mu[k] = mu(+-k).
struct OneSidedEnvelope {
  std::vector<Rational> nu;
  std::vector<Rational> mu;
  int T() const { return static_cast<int>(mu.size()) - 1; }
};

/// Throws EmptySide when the requested side has no positive range.
OneSidedEnvelope side_view(const GrowthEnvelope& env, Side side);

/// nu(k) = max over sides of |Sigma_{+-k}|/|Sigma|, mu(k) = the min; both
/// symmetric in k. One-sided profiles yield a one-sided envelope.
GrowthEnvelope empirical_envelope(const ShellProfile& profile);

using GrowthFunction = std::function<Rational(int)>;

namespace growth {
GrowthFunction constant(Rational c = 1);
/// c^i
GrowthFunction exponential(Rational c);
/// 1 at 0, d c^(i-1) after
GrowthFunction shifted_exponential(Rational d, Rational c);
/// 1 + i^b
GrowthFunction polynomial(int b);
}  // namespace growth

/// mu(k) = 1 - h_out sum_{i<=k} nu(i) for k = 0.. while positive; T is the
/// largest index with mu(T) > 0 (strict). The envelope is one-sided unless
/// `two_sided`, in which case nu and mu are mirrored. Throws NoPositiveRange
/// when mu(0) <= 0, ParameterOutOfRange when nu(0) < 1 or h_out <= 0.
GrowthEnvelope mu_from_hout(const GrowthFunction& nu, const Rational& h_out,
                            bool two_sided = false, Provenance provenance = Provenance::ExplicitSequence);
/// Same, using the nu values already stored for k >= 0 (missing indices 0).
GrowthEnvelope mu_from_hout(const GrowthEnvelope& env, const Rational& h_out);

/// Envelope for a given target truncation: the midpoint h between the two
/// values at which T changes, so mu_from_hout(nu, h) has exactly T.
Rational hout_for_truncation(const GrowthFunction& nu, int T);

struct EnvelopeViolation {
  int k;
  long long shell;
  Rational lower;  // |Sigma| mu(k)
  Rational upper;  // |Sigma| nu(k)
};

/// |Sigma| mu(k) <= |Sigma_k| <= |Sigma| nu(k) on every occupied k and on
/// every k inside the positive range of mu. The upper bound is skipped at
/// indices with no recorded nu; `upper` then echoes the shell size.
std::vector<EnvelopeViolation> check_envelope(const ShellProfile& profile, const GrowthEnvelope& env);

struct LowerBoundViolation {
  bool a_positive;  // orientation: V+ = A
  int k;
  long long shell;
  Rational bound;
};

/// |Sigma_k| >= |Sigma| (1 - h_out sum_{i<=k} nu(i)) for every k >= 0 with
/// Sigma = outer boundary of A, checked in both orientations.
std::vector<LowerBoundViolation> verify_shell_lower_bound(const Graph& g, std::span<const Vertex> a,
                                                          const GrowthFunction& nu,
                                                          const Rational& h_out);

/// Rows "k,nu,mu" with exact rationals.
std::string envelope_csv(const GrowthEnvelope& env);

}  // namespace curvebound
