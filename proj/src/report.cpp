#include "curvebound/report.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <random>
#include <sstream>

#include "curvebound/curvature.hpp"
#include "curvebound/error.hpp"
#include "curvebound/graph.hpp"
#include "curvebound/isoperimetry.hpp"
#include "curvebound/shells.hpp"
#include "curvebound/spectral.hpp"
#include "curvebound/transport.hpp"

#ifndef CURVEBOUND_VERSION
#define CURVEBOUND_VERSION "0.0.0"
#endif

namespace curvebound {

using nlohmann::json;

std::string tool_version() { return CURVEBOUND_VERSION; }

json RunConfig::to_json() const {
  return {{"command", command},     {"source", source},   {"laziness", to_string(laziness)},
          {"envelope", envelope},   {"sigma", sigma},     {"format", format},
          {"seed", seed},           {"max_dense", max_dense}, {"interior_only", interior_only},
          {"kind", kind},           {"order", order}};
}

json ReportDocument::to_json() const {
  json v = json::array();
  for (const auto& x : verdicts)
    v.push_back({{"id", x.id}, {"description", x.description}, {"status", x.status}, {"detail", x.detail}});
  return {{"tool_version", tool_version},
          {"command", command},
          {"config", config},
          {"sections", sections},
          {"table", {{"columns", columns}, {"rows", rows}}},
          {"verdicts", v},
          {"exit_code", exit_code}};
}

ReportDocument ReportDocument::from_json(const json& j) {
  ReportDocument d;
  d.tool_version = j.at("tool_version").get<std::string>();
  d.command = j.at("command").get<std::string>();
  d.config = j.at("config");
  d.sections = j.at("sections");
  d.columns = j.at("table").at("columns").get<std::vector<std::string>>();
  d.rows = j.at("table").at("rows").get<std::vector<std::vector<std::string>>>();
  for (const auto& v : j.at("verdicts"))
    d.verdicts.push_back({v.at("id").get<std::string>(), v.at("description").get<std::string>(),
                          v.at("status").get<std::string>(), v.at("detail").get<std::string>()});
  d.exit_code = j.at("exit_code").get<int>();
  return d;
}

namespace {

std::string fmt_double(double v) { return json(v).dump(); }

json edge_json(const Edge& e) { return json::array({e.u, e.v}); }

ReportDocument start(const RunConfig& config) {
  ReportDocument doc;
  doc.tool_version = tool_version();
  doc.command = config.command;
  doc.config = config.to_json();
  return doc;
}

void add_verdict(ReportDocument& doc, std::string id, std::string description, std::string status,
                 std::string detail = {}) {
  if (status == "fail") doc.exit_code = std::max(doc.exit_code, 1);
  if (status == "error") doc.exit_code = 2;
  doc.verdicts.push_back({std::move(id), std::move(description), std::move(status), std::move(detail)});
}

std::vector<Vertex> read_vertex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open vertex list '" + path + "'");
  std::vector<Vertex> out;
  long long v = 0;
  while (in >> v) out.push_back(static_cast<Vertex>(v));
  if (!in.eof()) throw Error(Errc::ParseError, "non-numeric token in vertex list '" + path + "'");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ------------------------------------------------------------------ stages

struct CutChoice {
  std::vector<Vertex> sigma;
  SideSelector sides;
  /// Set whose outer boundary is sigma, when known.
  std::vector<Vertex> a;
  std::string how;
};

struct IsoStage {
  IsoperimetryResult result;
  bool certified = false;  // exhaustive optimum
};

IsoStage run_isoperimetry(const Graph& g) {
  IsoStage s;
  const int n = g.vertex_count();
  if (n <= 62 && (1LL << n) <= brute_force_limit()) {
    s.result = cheeger_brute(g, CheegerKind::Outer);
    s.certified = true;
    return s;
  }
  if (g.family() && (g.family()->kind == FamilySpec::Kind::Hypercube ||
                     g.family()->kind == FamilySpec::Kind::Torus)) {
    s.result = cheeger_family(*g.family());
    return s;
  }
  throw Error(Errc::TooLarge, "2^" + std::to_string(n) +
                                  " subsets exceed the brute-force guard and no family witness applies");
}

CutChoice choose_cut(const Graph& g, const RunConfig& config, const std::optional<IsoStage>& iso) {
  CutChoice c;
  const std::string& spec = config.sigma;
  if (spec == "auto") {
    if (!iso) throw Error(Errc::ParameterOutOfRange, "automatic cut needs an isoperimetric witness");
    c.a = iso->result.witness.at(0);
    c.sigma = outer_boundary(g, c.a);
    c.sides = SideSelector::plus(c.a);
    c.how = iso->certified ? "boundary of the exhaustive h_out optimizer"
                           : "boundary of the family witness";
    return c;
  }
  if (spec == "middle-slice") {
    if (!g.family() || g.family()->kind != FamilySpec::Kind::Hypercube)
      throw Error(Errc::ParameterOutOfRange, "middle-slice needs a hypercube");
    const int d = g.family()->params[0];
    const int m = d / 2;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (std::popcount(static_cast<unsigned>(v)) == m) c.sigma.push_back(v);
    IsoperimetryResult w = cheeger_family(FamilySpec::hypercube(d));
    c.a = w.witness.at(0);
    c.sides = SideSelector::plus(c.a);
    c.how = "middle slice of the hypercube";
    return c;
  }
  if (spec.rfind("sphere:", 0) == 0) {
    std::string rest = spec.substr(7);
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw Error(Errc::ParseError, "sphere needs <x>,<r>");
    Vertex x = std::stoi(rest.substr(0, comma));
    int r = std::stoi(rest.substr(comma + 1));
    if (x < 0 || x >= g.vertex_count()) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(x));
    if (r < 1) throw Error(Errc::ParameterOutOfRange, "sphere radius must be positive");
    const auto& dist = g.distances_from(x);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (dist[v] == r) c.sigma.push_back(v);
      else if (dist[v] < r) c.a.push_back(v);
    }
    c.sides = SideSelector::plus(c.a);
    c.how = "sphere of radius " + std::to_string(r) + " around " + std::to_string(x);
    return c;
  }
  c.sigma = read_vertex_file(spec);
  // V+ is the component of V \ Sigma holding the least vertex outside Sigma.
  std::vector<char> in_sigma(g.vertex_count(), 0);
  for (Vertex v : c.sigma) {
    if (v < 0 || v >= g.vertex_count()) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v));
    in_sigma[v] = 1;
  }
  Vertex seed = -1;
  for (Vertex v = 0; v < g.vertex_count() && seed < 0; ++v)
    if (!in_sigma[v]) seed = v;
  if (seed >= 0) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> stack{seed};
    seen[seed] = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      c.a.push_back(x);
      for (Vertex y : g.neighbors(x))
        if (!seen[y] && !in_sigma[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    std::sort(c.a.begin(), c.a.end());
  }
  c.sides = SideSelector::plus(c.a);
  c.how = "vertex list " + spec;
  return c;
}

struct EnvelopeChoice {
  GrowthFunction nu;
  /// Envelope for the tridiagonal route.
  GrowthEnvelope envelope;
  /// mu from h_out, when positive at 0.
  std::optional<GrowthEnvelope> hout_envelope;
  std::string how;
};

GrowthFunction nu_from_map(std::map<int, Rational> values) {
  return [values = std::move(values)](int k) {
    auto it = values.find(k);
    return it == values.end() ? Rational(0) : it->second;
  };
}

EnvelopeChoice choose_envelope(const Graph& g, const RunConfig& config, const ShellProfile& profile,
                               const std::optional<Rational>& h, const Rational& k_curv) {
  EnvelopeChoice e;
  const std::string& mode = config.envelope;
  std::optional<GrowthEnvelope> explicit_env;
  Provenance prov = Provenance::ExplicitSequence;
  if (mode == "empirical") {
    GrowthEnvelope emp = empirical_envelope(profile);
    e.nu = nu_from_map(emp.nu);
    explicit_env = emp;
    prov = Provenance::Empirical;
    e.how = "normalized shell sizes";
  } else if (mode == "constant") {
    e.nu = growth::constant();
    prov = Provenance::Constant;
    e.how = "nu = 1";
  } else if (mode == "curvature") {
    CurvatureGrowth cg = nu_from_curvature(g.max_degree(), k_curv, g.is_bipartite());
    e.nu = [cg](int i) { return cg.nu(i); };
    prov = Provenance::Curvature;
    e.how = "curvature growth, ratio " + to_string(cg.ratio());
  } else if (mode.rfind("file:", 0) == 0) {
    std::ifstream in(mode.substr(5));
    if (!in) throw Error(Errc::ParseError, "cannot open envelope file '" + mode.substr(5) + "'");
    std::map<int, Rational> nu, mu;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || !(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-')) continue;
      std::stringstream ss(line);
      std::string a, b, c;
      std::getline(ss, a, ',');
      std::getline(ss, b, ',');
      std::getline(ss, c, ',');
      int k = std::stoi(a);
      nu[k] = parse_rational(b);
      if (!c.empty()) mu[k] = parse_rational(c);
    }
    e.nu = nu_from_map(nu);
    if (!mu.empty()) {
      GrowthEnvelope env;
      env.nu = nu;
      env.mu = mu;
      env.two_sided = nu.begin()->first < 0;
      int t = 0;
      while (env.mu_at(t + 1) > 0) ++t;
      env.t_plus = t;
      t = 0;
      while (env.mu_at(t - 1) > 0) --t;
      env.t_minus = t;
      explicit_env = env;
    }
    e.how = "file " + mode.substr(5);
  } else {
    throw Error(Errc::ParseError, "unknown envelope mode '" + mode + "'");
  }

  if (h) {
    try {
      GrowthEnvelope he = mu_from_hout(e.nu, *h, profile.two_sided(), prov);
      he.note = "mu from h_out";
      e.hout_envelope = he;
    } catch (const Error& err) {
      if (err.code() != Errc::NoPositiveRange) throw;
    }
  }
  if (explicit_env) e.envelope = *explicit_env;
  else if (e.hout_envelope) e.envelope = *e.hout_envelope;
  else {
    // no positive range: a degenerate envelope with only the cut-set entry
    e.envelope.nu[0] = e.nu(0);
    e.envelope.mu[0] = 0;
    e.envelope.provenance = prov;
  }
  return e;
}

json envelope_json(const GrowthEnvelope& env) {
  json nu = json::object(), mu = json::object();
  for (const auto& [k, v] : env.nu) nu[std::to_string(k)] = to_string(v);
  for (const auto& [k, v] : env.mu) mu[std::to_string(k)] = to_string(v);
  json j = {{"nu", nu},
            {"mu", mu},
            {"t_plus", env.t_plus},
            {"t_minus", env.t_minus},
            {"provenance", provenance_name(env.provenance)},
            {"two_sided", env.two_sided}};
  if (env.T) j["T"] = *env.T;
  if (env.h_out) j["h_out"] = to_string(*env.h_out);
  return j;
}

json profile_json(const ShellProfile& p) {
  json shells = json::object();
  for (const auto& [k, s] : p.shell_size) shells[std::to_string(k)] = s;
  return {{"sigma", p.sigma},         {"sigma_size", p.sigma_size()}, {"shells", shells},
          {"t_plus", p.t_plus},       {"t_minus", p.t_minus},         {"v_plus_size", p.v_plus.size()},
          {"v_minus_size", p.v_minus.size()}};
}

json iso_json(const IsoperimetryResult& r) {
  json j = {{"kind", cheeger_kind_name(r.kind)},
            {"order", r.order},
            {"value", to_string(r.value)},
            {"method", iso_method_name(r.method)},
            {"witness", r.witness}};
  if (r.brute_value) j["brute_value"] = to_string(*r.brute_value);
  return j;
}

json spectrum_json(const Spectrum& s) {
  return {{"method", spectrum_method_name(s.method)}, {"tolerance", s.tolerance}, {"eigenvalues", s.eigenvalues}};
}

BoundInputs bound_inputs(const Graph& g, const std::string& id, const EnvelopeChoice& e,
                         const ShellProfile& profile, const std::optional<Rational>& h,
                         const Spectrum& spectrum) {
  BoundInputs in;
  in.graph_id = id;
  in.envelope = e.envelope;
  in.hout_envelope = e.hout_envelope;
  in.h_out = h;
  in.profile = profile;
  in.vertex_count = g.vertex_count();
  in.regular = g.is_regular();
  in.spectrum = spectrum;
  return in;
}

// Appends bound checks as verdicts and table rows; returns the section.
json record_bounds(ReportDocument& doc, const SpectralBoundReport& rep) {
  json checks = json::array();
  std::map<std::string, std::pair<int, int>> tally;  // passes, fails
  std::map<std::string, std::string> first_failure, descriptions, skip_note;
  for (const auto& c : rep.checks) {
    json j = {{"id", c.id}, {"description", c.description}, {"eigen_index", c.eigen_index},
              {"applicable", c.applicable}, {"satisfied", c.satisfied}, {"note", c.note}};
    if (c.bound) j["bound"] = *c.bound;
    if (c.actual) j["actual"] = *c.actual;
    checks.push_back(j);
    descriptions[c.id] = c.description;
    auto& t = tally[c.id];
    if (!c.applicable) {
      if (!skip_note.count(c.id)) skip_note[c.id] = c.note;
      continue;
    }
    if (c.satisfied) ++t.first;
    else {
      ++t.second;
      if (!first_failure.count(c.id)) first_failure[c.id] = c.note;
    }
    doc.rows.push_back({c.id, std::to_string(c.eigen_index), c.bound ? fmt_double(*c.bound) : "",
                        c.actual ? fmt_double(*c.actual) : "", c.satisfied ? "pass" : "fail"});
  }
  for (const auto& [id, t] : tally) {
    if (t.second > 0)
      add_verdict(doc, id, descriptions[id], "fail",
                  std::to_string(t.second) + " violated; " + first_failure[id]);
    else if (t.first > 0)
      add_verdict(doc, id, descriptions[id], "pass", std::to_string(t.first) + " checked");
    else
      add_verdict(doc, id, descriptions[id], "skipped", skip_note[id]);
  }
  json s = {{"checks", checks}, {"all_satisfied", rep.all_satisfied}, {"envelope", rep.envelope_summary}};
  if (rep.B) s["B"] = to_string(*rep.B);
  if (rep.lambda2_bound) s["lambda2_bound"] = *rep.lambda2_bound;
  if (rep.R) s["R"] = *rep.R;
  json rho = json::object();
  for (const auto& [kl, v] : rep.rho_bounds) rho[std::to_string(kl.first) + "," + std::to_string(kl.second)] = v;
  s["rho_bounds"] = rho;
  s["buser_constants"] = rep.buser_constants;
  return s;
}

// isoperimetry -> cut -> envelope -> bounds; shared by bound and verify.
void run_bound_chain(ReportDocument& doc, const RunConfig& config, const Graph& g,
                     const Rational& k_curv, const Spectrum& spectrum) {
  doc.columns = {"check", "eigen_index", "bound", "actual", "status"};
  std::optional<IsoStage> iso;
  try {
    iso = run_isoperimetry(g);
    doc.sections["isoperimetry"] = iso_json(iso->result);
    doc.sections["isoperimetry"]["certified"] = iso->certified;
  } catch (const Error& e) {
    if (config.sigma == "auto") throw;
    doc.sections["isoperimetry"] = {{"skipped", e.what()}};
  }
  std::optional<Rational> h;
  if (iso) h = iso->result.value;

  CutChoice cut = choose_cut(g, config, iso);
  ShellProfile profile = shell_profile(g, cut.sigma, cut.sides);
  doc.sections["cut"] = profile_json(profile);
  doc.sections["cut"]["how"] = cut.how;

  EnvelopeChoice env = choose_envelope(g, config, profile, h, k_curv);
  doc.sections["envelope"] = envelope_json(env.envelope);
  doc.sections["envelope"]["how"] = env.how;
  if (env.hout_envelope) doc.sections["hout_envelope"] = envelope_json(*env.hout_envelope);

  const bool certified_cut = iso && iso->certified && config.sigma == "auto";
  const char* validity_desc = "|Sigma| mu(k) <= |Sigma_k| <= |Sigma| nu(k)";
  bool valid = true;
  for (const GrowthEnvelope* candidate : {&env.envelope, env.hout_envelope ? &*env.hout_envelope : nullptr}) {
    if (!candidate) continue;
    auto violations = check_envelope(profile, *candidate);
    if (!violations.empty()) {
      valid = false;
      std::string detail = std::to_string(violations.size()) + " shells outside the envelope, first k=" +
                           std::to_string(violations[0].k);
      // mu from h_out is only guaranteed for an exhaustively optimal cut.
      bool guaranteed = certified_cut && candidate == &*env.hout_envelope &&
                     config.envelope != "file" && config.envelope.rfind("file:", 0) != 0;
      add_verdict(doc, "envelope-validity", validity_desc, guaranteed ? "fail" : "skipped",
                  detail + (guaranteed ? "" : "; envelope does not fit this cut, bounds skipped"));
      break;
    }
  }
  if (valid) add_verdict(doc, "envelope-validity", validity_desc, "pass");

  const char* lower_desc = "|Sigma_k| >= |Sigma| (1 - h_out sum_{i<=k} nu(i)), both orientations";
  if (!iso || config.sigma != "auto") {
    add_verdict(doc, "shell-lower-bound", lower_desc, "skipped", "cut set is not the h_out optimizer boundary");
  } else if (!iso->certified) {
    add_verdict(doc, "shell-lower-bound", lower_desc, "skipped",
                "family witness is not certified optimal; envelope validity checked instead");
  } else {
    auto v = verify_shell_lower_bound(g, cut.a, env.nu, *h);
    add_verdict(doc, "shell-lower-bound", lower_desc, v.empty() ? "pass" : "fail",
                v.empty() ? "" : std::to_string(v.size()) + " violations, first k=" + std::to_string(v[0].k));
  }

  if (!valid) {
    doc.sections["bounds"] = {{"skipped", "envelope does not fit the cut set"}};
    return;
  }
  SpectralBoundReport rep = bound_lambda2(bound_inputs(g, config.source, env, profile, h, spectrum));
  doc.sections["bounds"] = record_bounds(doc, rep);
}

Graph load(const RunConfig& config) { return load_graph(config.source); }

}  // namespace

ReportDocument cmd_curvature(const RunConfig& config) {
  ReportDocument doc = start(config);
  Graph g = load(config);
  CurvatureReport r = global_lower_bound(g, config.laziness);
  doc.columns = {"u", "v", "kappa", "contaminated"};
  json edges = json::array();
  std::optional<Rational> shown_min;
  for (const auto& [e, k] : r.edge_kappa) {
    bool contaminated = r.boundary_contaminated.count(e) > 0;
    if (config.interior_only && contaminated) continue;
    edges.push_back({{"edge", edge_json(e)}, {"kappa", to_string(k)}, {"contaminated", contaminated}});
    doc.rows.push_back({std::to_string(e.u), std::to_string(e.v), to_string(k), contaminated ? "1" : "0"});
    if (!shown_min || k < *shown_min) shown_min = k;
  }
  doc.sections["curvature"] = {{"edges", edges},
                               {"global_lower_bound", to_string(r.global_lower_bound)},
                               {"laziness", to_string(r.laziness)},
                               {"contaminated_count", r.boundary_contaminated.size()}};
  if (r.interior_lower_bound)
    doc.sections["curvature"]["interior_lower_bound"] = to_string(*r.interior_lower_bound);
  if (shown_min) doc.sections["curvature"]["listed_minimum"] = to_string(*shown_min);
  return doc;
}

ReportDocument cmd_cheeger(const RunConfig& config) {
  ReportDocument doc = start(config);
  Graph g = load(config);
  IsoperimetryResult r;
  if (config.order > 1) {
    if (config.kind != "outer") throw Error(Errc::ParameterOutOfRange, "higher order needs --kind outer");
    r = higher_cheeger_brute(g, config.order);
  } else {
    CheegerKind kind = parse_cheeger_kind(config.kind);
    const int n = g.vertex_count();
    if (n <= 62 && (1LL << n) <= brute_force_limit()) r = cheeger_brute(g, kind);
    else if (kind == CheegerKind::Outer && g.family()) r = cheeger_family(*g.family());
    else throw Error(Errc::TooLarge, "2^" + std::to_string(n) + " subsets exceed the brute-force guard");
  }
  doc.sections["isoperimetry"] = iso_json(r);
  doc.columns = {"cell", "size", "ratio", "vertices"};
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    std::string verts;
    for (Vertex v : r.witness[i]) verts += (verts.empty() ? "" : " ") + std::to_string(v);
    CheegerKind kind = config.order > 1 ? CheegerKind::Outer : parse_cheeger_kind(config.kind);
    doc.rows.push_back({std::to_string(i), std::to_string(r.witness[i].size()),
                        to_string(boundary_ratio(g, r.witness[i], kind)), verts});
  }
  return doc;
}

ReportDocument cmd_shells(const RunConfig& config) {
  ReportDocument doc = start(config);
  Graph g = load(config);
  std::optional<IsoStage> iso;
  if (config.sigma == "auto") iso = run_isoperimetry(g);
  CutChoice cut = choose_cut(g, config, iso);
  ShellProfile p = shell_profile(g, cut.sigma, cut.sides);
  doc.sections["cut"] = profile_json(p);
  doc.sections["cut"]["how"] = cut.how;
  std::optional<Rational> h;
  if (iso) h = iso->result.value;
  Rational k = 0;
  if (config.envelope == "curvature") k = global_lower_bound(g, config.laziness).global_lower_bound;
  EnvelopeChoice env = choose_envelope(g, config, p, h, k);
  doc.sections["envelope"] = envelope_json(env.envelope);
  doc.columns = {"k", "shell", "nu", "mu"};
  for (int i = p.t_minus; i <= p.t_plus; ++i)
    doc.rows.push_back({std::to_string(i), std::to_string(p.shell(i)), to_string(env.envelope.nu_at(i)),
                        to_string(env.envelope.mu_at(i))});
  auto violations = check_envelope(p, env.envelope);
  add_verdict(doc, "envelope-validity", "|Sigma| mu(k) <= |Sigma_k| <= |Sigma| nu(k)",
              violations.empty() ? "pass" : "skipped",
              violations.empty() ? "" : "envelope does not fit this cut");
  return doc;
}

ReportDocument cmd_spectrum(const RunConfig& config) {
  ReportDocument doc = start(config);
  Graph g = load(config);
  Spectrum s = laplacian_spectrum(g, config.max_dense);
  doc.sections["spectrum"] = spectrum_json(s);
  doc.columns = {"index", "eigenvalue"};
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    doc.rows.push_back({std::to_string(i + 1), fmt_double(s.eigenvalues[i])});
  return doc;
}

ReportDocument cmd_bound(const RunConfig& config) {
  ReportDocument doc = start(config);
  Graph g = load(config);
  Spectrum s = laplacian_spectrum(g, config.max_dense);
  doc.sections["spectrum"] = spectrum_json(s);
  Rational k = 0;
  if (config.envelope == "curvature") k = global_lower_bound(g, config.laziness).global_lower_bound;
  run_bound_chain(doc, config, g, k, s);
  return doc;
}

ReportDocument cmd_verify(const RunConfig& config) {
  ReportDocument doc = start(config);
  Graph g = load(config);
  doc.sections["graph"] = {{"vertices", g.vertex_count()},
                           {"edges", g.edge_count()},
                           {"max_degree", g.max_degree()},
                           {"regular", g.is_regular()},
                           {"bipartite", g.is_bipartite()}};
  std::string stage = "curvature";
  try {
    CurvatureReport curv = global_lower_bound(g, config.laziness);
    Rational k = curv.global_lower_bound;
    doc.sections["curvature"] = {{"global_lower_bound", to_string(k)},
                                 {"laziness", to_string(curv.laziness)},
                                 {"contaminated_count", curv.boundary_contaminated.size()}};
    if (curv.interior_lower_bound)
      doc.sections["curvature"]["interior_lower_bound"] = to_string(*curv.interior_lower_bound);

    // non-adjacent pairs, sampled when there are many
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (auto [x, y] : all_vertex_pairs(g))
      if (!g.adjacent(x, y)) pairs.emplace_back(x, y);
    const std::size_t cap = 2000;
    if (pairs.size() > cap) {
      std::mt19937_64 rng(config.seed);
      std::shuffle(pairs.begin(), pairs.end(), rng);
      pairs.resize(cap);
      std::sort(pairs.begin(), pairs.end());
    }
    auto nm = check_neighbor_minimization(g, pairs, config.laziness);
    add_verdict(doc, "neighbor-minimization", "kappa(x,y) >= min edge curvature for non-adjacent pairs",
                nm.empty() ? "pass" : "fail",
                std::to_string(pairs.size()) + " pairs" +
                    (nm.empty() ? "" : ", first violation " + std::to_string(nm[0].x) + "-" +
                                           std::to_string(nm[0].y)));

    const long long n = g.vertex_count();
    if (!g.is_regular()) {
      // the product walk weights coordinates by degree, so k/r needs regularity
      add_verdict(doc, "tensorization", "edge curvature of G^r is at least k/r", "skipped",
                  "graph is not regular");
    } else if (n * n <= 10000) {
      TensorizationCheck t = check_tensorization(g, 2, config.laziness);
      add_verdict(doc, "tensorization", "edge curvature of G^r is at least k/r", t.holds ? "pass" : "fail",
                  "r=2 k=" + to_string(t.k_base) + " k_power=" + to_string(t.k_power));
    } else {
      add_verdict(doc, "tensorization", "edge curvature of G^r is at least k/r", "skipped",
                  "|V|^2 exceeds 10^4");
    }

    stage = "shell growth";
    // the growth inequalities are stated for regular graphs; a truncated
    // tree is checked as a piece of the p-regular tree, curvature (2-p)/p
    std::optional<Rational> shell_k;
    std::string shell_note;
    if (g.is_regular()) {
      shell_k = k;
    } else if (g.family() && g.family()->kind == FamilySpec::Kind::Tree) {
      const int p = g.family()->params[0];
      shell_k = make_rational(2 - p, p);
      shell_note = ", regular tree curvature " + to_string(*shell_k);
    }
    if (!shell_k) {
      for (const char* id : {"shell-growth", "shell-growth-bipartite"})
        add_verdict(doc, id,
                    std::string(id) == "shell-growth" ? "|S_{i+1}| <= ((d+1-2dk)/2) |S_i|"
                                                      : "|S_{i+1}| <= (d(1-k)/2) |S_i| on bipartite graphs",
                    "skipped", "graph is not regular");
    } else {
      ShellGrowthCheck sg = check_shell_growth(g, *shell_k);
      long long general = 0, bip = 0;
      for (const auto& v : sg.violations) (v.bipartite_rule ? bip : general) += 1;
      add_verdict(doc, "shell-growth", "|S_{i+1}| <= ((d+1-2dk)/2) |S_i|", general ? "fail" : "pass",
                  std::to_string(sg.comparisons) + " comparisons, max ratio " + to_string(sg.max_ratio) +
                      shell_note);
      if (g.is_bipartite())
        add_verdict(doc, "shell-growth-bipartite", "|S_{i+1}| <= (d(1-k)/2) |S_i| on bipartite graphs",
                    bip ? "fail" : "pass", std::to_string(sg.comparisons) + " comparisons" + shell_note);
      else
        add_verdict(doc, "shell-growth-bipartite", "|S_{i+1}| <= (d(1-k)/2) |S_i| on bipartite graphs",
                    "skipped", "graph is not bipartite");
    }

    stage = "spectrum";
    Spectrum s = laplacian_spectrum(g, config.max_dense);
    doc.sections["spectrum"] = spectrum_json(s);

    stage = "bounds";
    run_bound_chain(doc, config, g, k, s);

    stage = "higher isoperimetry";
    const char* mono_desc = "h_out(n-1) <= h_out(n)";
    if (g.vertex_count() >= 3 && g.vertex_count() <= 12) {
      auto v = verify_h_monotonicity(g, 3);
      add_verdict(doc, "higher-cheeger-monotone", mono_desc, v.empty() ? "pass" : "fail", "n <= 3");
    } else {
      add_verdict(doc, "higher-cheeger-monotone", mono_desc, "skipped",
                  "partition enumeration needs 3..12 vertices");
    }
  } catch (const Error& e) {
    add_verdict(doc, "stage-" + stage, "pipeline stage", "error", e.what());
  }
  TransportStats ts = transport_stats();
  doc.sections["transport"] = {{"certificate_failures", ts.certificate_failures}};
  return doc;
}

ReportDocument run_command(const RunConfig& config) {
  try {
    if (config.command == "curvature") return cmd_curvature(config);
    if (config.command == "cheeger") return cmd_cheeger(config);
    if (config.command == "shells") return cmd_shells(config);
    if (config.command == "bound") return cmd_bound(config);
    if (config.command == "spectrum") return cmd_spectrum(config);
    if (config.command == "verify") return cmd_verify(config);
    throw Error(Errc::ParseError, "unknown command '" + config.command + "'");
  } catch (const Error& e) {
    ReportDocument doc = start(config);
    doc.sections["error"] = {{"code", std::string(errc_name(e.code()))}, {"message", e.what()}};
    doc.exit_code = 2;
    return doc;
  }
}

std::string render(const ReportDocument& doc, const std::string& format) {
  if (format == "json") return doc.to_json().dump(2) + "\n";
  if (format == "csv") {
    std::ostringstream out;
    auto row = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        const std::string& c = cells[i];
        if (c.find_first_of(",\"\n") != std::string::npos) {
          out << '"';
          for (char ch : c) out << (ch == '"' ? "\"\"" : std::string(1, ch));
          out << '"';
        } else {
          out << c;
        }
      }
      out << '\n';
    };
    row(doc.columns);
    for (const auto& r : doc.rows) row(r);
    return out.str();
  }
  if (format == "human") {
    std::ostringstream out;
    out << "curvebound " << doc.tool_version << "  " << doc.command << " "
        << doc.config.value("source", std::string()) << "\n";
    if (doc.sections.contains("error"))
      out << "error: " << doc.sections["error"]["message"].get<std::string>() << "\n";
    if (!doc.columns.empty()) {
      std::vector<std::size_t> width(doc.columns.size(), 0);
      for (std::size_t i = 0; i < doc.columns.size(); ++i) width[i] = doc.columns[i].size();
      for (const auto& r : doc.rows)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          out << cells[i];
          if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size() + 2, ' ');
        }
        out << '\n';
      };
      line(doc.columns);
      for (const auto& r : doc.rows) line(r);
    }
    for (const auto& v : doc.verdicts) {
      out << "[" << v.status << "] " << v.id << ": " << v.description;
      if (!v.detail.empty()) out << " (" << v.detail << ")";
      out << '\n';
    }
    return out.str();
  }
  throw Error(Errc::ParseError, "unknown format '" + format + "'");
}

}  // namespace curvebound
