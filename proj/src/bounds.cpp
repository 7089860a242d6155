#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvebound/error.hpp"
#include "curvebound/spectral.hpp"

namespace curvebound {

namespace {

double min_rho_over_truncations(const OneSidedEnvelope& view, Side side, int k, int& best_t) {
  double best = 0;
  best_t = 0;
  for (int t = k; t <= view.T(); ++t) {
    double rho = tridiagonal_eigenvalues(build_A_matrix(view, side, t), k).back();
    if (best_t == 0 || rho < best) {
      best = rho;
      best_t = t;
    }
  }
  return best;
}

}  // namespace

HigherBound bound_higher(const GrowthEnvelope& env, int k, int l) {
  HigherBound out;
  out.k = k;
  out.l = l;
  out.one_sided = env.t_minus == 0;
  if (k < 1 || k > env.t_plus)
    throw Error(Errc::IndexOutOfRange, "k = " + std::to_string(k) + " outside 1.." +
                                           std::to_string(env.t_plus));
  OneSidedEnvelope plus = side_view(env, Side::Plus);
  double rho_plus = min_rho_over_truncations(plus, Side::Plus, k, out.t_plus);
  if (out.one_sided) {
    out.l = 0;
    out.value = rho_plus / 2;
    return out;
  }
  if (l < 1 || l > -env.t_minus)
    throw Error(Errc::IndexOutOfRange, "l = " + std::to_string(l) + " outside 1.." +
                                           std::to_string(-env.t_minus));
  OneSidedEnvelope minus = side_view(env, Side::Minus);
  int t_minus = 0;
  double rho_minus = min_rho_over_truncations(minus, Side::Minus, l, t_minus);
  out.t_minus = -t_minus;
  out.value = std::max(rho_plus, rho_minus) / 2;
  return out;
}

CutSetBound buser_constant_route(const ShellProfile& profile, long long vertex_count) {
  CutSetBound out;
  const long long sigma = profile.sigma_size();
  if (sigma == 0) throw Error(Errc::EmptySigma, "cut set is empty");
  out.alpha = Rational(sigma, vertex_count);
  if (out.alpha >= Rational(1, 4))
    throw Error(Errc::AlphaTooLarge, "alpha = " + to_string(out.alpha) + " is not below 1/4");
  for (const auto& [k, size] : profile.shell_size)
    if (size > sigma)
      throw Error(Errc::DominanceHypothesisFails,
                  "shell " + std::to_string(k) + " has " + std::to_string(size) + " > |Sigma| = " +
                      std::to_string(sigma) + " vertices");
  Rational inv = 1 / (4 * out.alpha);
  out.t = (numerator(inv) / denominator(inv)).convert_to<long long>();
  out.bound = Rational(2 * (out.t + 1) * sigma, out.t * out.t * vertex_count);
  return out;
}

HigherBuser higher_buser_bound(const Rational& h_out_n, int k, int t_min) {
  if (k < 1) throw Error(Errc::IndexOutOfRange, "k must be positive");
  const int half_k = (k + 1) / 2;
  const double h = to_double(h_out_n);
  HigherBuser out;
  bool found = false;
  for (int t = half_k; t <= t_min; ++t) {
    Rational denom = 1 - h_out_n * (t + 1);
    if (denom <= 0) break;
    double value =
        2 * (1 - std::cos(half_k * std::numbers::pi / (t + 1))) / to_double(denom);
    if (!found || value < out.bound) {
      out.bound = value;
      out.argmin_t = t;
      found = true;
    }
  }
  if (!found) throw Error(Errc::EmptyRange, "no admissible truncation for the higher bound");
  out.reference = k * k * h * h * 27 * std::numbers::pi * std::numbers::pi / 16;
  return out;
}

SpectralBoundReport bound_lambda2(const BoundInputs& in) {
  SpectralBoundReport rep;
  rep.graph_id = in.graph_id;
  rep.h_out = in.h_out;
  rep.true_spectrum = in.spectrum;
  rep.envelope_summary = provenance_name(in.envelope.provenance) + " T+=" +
                         std::to_string(in.envelope.t_plus) + " T-=" +
                         std::to_string(in.envelope.t_minus);
  const auto& ev = in.spectrum.eigenvalues;
  auto actual = [&](int index) -> std::optional<double> {
    if (index < 1 || index > static_cast<int>(ev.size())) return std::nullopt;
    return ev[index - 1];
  };
  auto add = [&](BoundCheck c) {
    if (c.applicable && c.bound && c.actual) c.satisfied = *c.bound + kDominationSlack >= *c.actual;
    if (!c.satisfied) rep.all_satisfied = false;
    rep.checks.push_back(std::move(c));
  };
  auto skipped = [&](std::string id, std::string description, int index, std::string note) {
    BoundCheck c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.eigen_index = index;
    c.actual = actual(index);
    c.note = std::move(note);
    add(std::move(c));
  };
  const std::string irregular = "bounds assume a regular graph";
  const bool two_sided = in.envelope.t_plus >= 1 && in.envelope.t_minus <= -1;

  // Hardy route with mu from h_out.
  const char* hardy_desc = "lambda_2 <= 1/(2B), mu from h_out";
  const char* sandwich_desc = "1/(8B) <= R <= 1/(2B) with a monotone minimizer";
  if (!in.regular) {
    skipped("hardy-lambda2", hardy_desc, 2, irregular);
  } else if (!in.hout_envelope) {
    skipped("hardy-lambda2", hardy_desc, 2, "no isoperimetric envelope");
  } else if (in.hout_envelope->t_plus < 1 ||
             (in.hout_envelope->two_sided && in.hout_envelope->t_minus > -1)) {
    skipped("hardy-lambda2", hardy_desc, 2, "truncation T < 1, bound unavailable");
    skipped("hardy-sandwich", sandwich_desc, 0, "truncation T < 1");
  } else if (!in.hout_envelope->two_sided) {
    skipped("hardy-lambda2", hardy_desc, 2, "one-sided cut, lambda_2 route needs both sides");
  } else {
    const GrowthEnvelope& he = *in.hout_envelope;
    double worst = 0;
    bool sandwich = true, monotone = true;
    double r_max = 0;
    for (Side side : {Side::Plus, Side::Minus}) {
      HardyConstant b = hardy_constant_B(he, side);
      RayleighResult r = hardy_rayleigh_R(he, side);
      double bd = to_double(b.B);
      if (!rep.B || b.B < *rep.B) rep.B = b.B;
      worst = std::max(worst, 1 / (2 * bd));
      r_max = std::max(r_max, r.R);
      sandwich = sandwich && 1 / (8 * bd) <= r.R + kDominationSlack &&
                 r.R <= 1 / (2 * bd) + kDominationSlack;
      monotone = monotone && r.monotone;
    }
    rep.lambda2_bound = worst;
    rep.R = r_max;
    rep.buser_constants["hardy_inverse_2B"] = worst;
    BoundCheck c;
    c.id = "hardy-lambda2";
    c.description = hardy_desc;
    c.applicable = true;
    c.bound = worst;
    c.actual = actual(2);
    add(c);
    BoundCheck s;
    s.id = "hardy-sandwich";
    s.description = sandwich_desc;
    s.eigen_index = 0;
    s.applicable = true;
    s.bound = worst;
    s.actual = r_max;
    s.satisfied = sandwich && monotone;
    add(s);
  }

  // Tridiagonal route on the (nu, mu) envelope.
  const char* rho_desc = "lambda_2 <= max(rho+, rho-) from the Hardy constants";
  if (!in.regular) {
    skipped("tridiagonal-lambda2", rho_desc, 2, irregular);
  } else if (!two_sided) {
    skipped("tridiagonal-lambda2", rho_desc, 2, "one-sided cut");
  } else {
    double r_plus = hardy_rayleigh_R(in.envelope, Side::Plus).R;
    double r_minus = hardy_rayleigh_R(in.envelope, Side::Minus).R;
    BoundCheck c;
    c.id = "tridiagonal-lambda2";
    c.description = rho_desc;
    c.applicable = true;
    c.bound = std::max(r_plus, r_minus);
    c.actual = actual(2);
    // half the least A eigenvalue is the same Rayleigh quotient
    auto [ap, am] = build_A_matrices(in.envelope);
    double via_a = std::max(tridiagonal_eigenvalues(*ap, 1)[0], tridiagonal_eigenvalues(*am, 1)[0]) / 2;
    // plain bisection on A is only accurate to a multiple of eps * ||A||
    double norm = 0;
    for (const auto* a : {&*ap, &*am})
      for (std::size_t i = 0; i < a->diag.size(); ++i)
        norm = std::max(norm, std::abs(a->diag[i]) + (i ? std::abs(a->offdiag[i - 1]) : 0.0) +
                                  (i < a->offdiag.size() ? std::abs(a->offdiag[i]) : 0.0));
    if (std::abs(via_a - *c.bound) > 1e-8 * std::max(1.0, std::abs(via_a)) + 1e-13 * norm) {
      c.satisfied = false;
      c.note = "A-matrix route disagrees: " + std::to_string(via_a);
    }
    add(c);
  }

  const char* higher_desc = "lambda_{k+l} <= 1/2 max(rho_k+, rho_l-), minimized over truncations";
  if (!in.regular) {
    skipped("tridiagonal-higher", higher_desc, 3, irregular);
  } else {
    for (int k = 1; k <= in.max_kl && k <= in.envelope.t_plus; ++k) {
      int l_max = two_sided ? std::min(in.max_kl, -in.envelope.t_minus) : 0;
      for (int l = two_sided ? 1 : 0; l <= l_max; ++l) {
        HigherBound hb = bound_higher(in.envelope, k, l);
        rep.rho_bounds[{k, l}] = hb.value;
        BoundCheck c;
        c.id = "tridiagonal-higher";
        c.description = higher_desc;
        c.eigen_index = hb.index();
        c.applicable = actual(hb.index()).has_value();
        c.bound = hb.value;
        c.actual = actual(hb.index());
        c.note = "k=" + std::to_string(k) + " l=" + std::to_string(hb.l) +
                 (hb.one_sided ? " one-sided" : "");
        add(c);
      }
    }
  }

  const char* cut_desc = "lambda_2 <= 2(t+1)|Sigma|/(t^2 |V|)";
  if (!in.profile) {
    skipped("explicit-cut-set", cut_desc, 2, "no cut set profile");
  } else if (!in.regular) {
    skipped("explicit-cut-set", cut_desc, 2, irregular);
  } else {
    try {
      CutSetBound cb = buser_constant_route(*in.profile, in.vertex_count);
      double v = to_double(cb.bound);
      rep.buser_constants["explicit_cut_set"] = v;
      BoundCheck c;
      c.id = "explicit-cut-set";
      c.description = cut_desc;
      c.applicable = true;
      c.bound = v;
      c.actual = actual(2);
      c.note = "alpha=" + to_string(cb.alpha) + " t=" + std::to_string(cb.t);
      add(c);
    } catch (const Error& e) {
      skipped("explicit-cut-set", cut_desc, 2, e.what());
    }
  }

  if (in.h_out) {
    double h = to_double(*in.h_out);
    rep.buser_constants["reference_27_over_2_h_squared"] = 13.5 * h * h;
  }
  return rep;
}

}  // namespace curvebound
