#include "commands.hpp"

#include <CLI11.hpp>

#include <sstream>

#include "halfgasket/bvp.hpp"
#include "halfgasket/errors.hpp"
#include "halfgasket/flux.hpp"
#include "halfgasket/gasket.hpp"
#include "halfgasket/green.hpp"
#include "halfgasket/spectra.hpp"
#include "halfgasket/trace.hpp"
#include "input.hpp"

namespace halfgasket::cli {

namespace {

constexpr int kMaxTrunc = 1000;
constexpr int kMaxDtnTrunc = 400;
constexpr int kMaxExtendTrunc = 200;

struct Options {
  std::string backend = "auto";
  std::string format;
  std::string data;
  int level = -1;
  int trunc = -1;
  std::string lambda;
  std::string action;
  std::string x, y;
  std::string mode;
  std::string domain = "sg";
  std::string source = "const:1";
  std::string bc = "dirichlet";
  bool census = false;
  bool oracle = false;
  double tol = 1e-8;
};

// ---- output ---------------------------------------------------------------

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number_float()) return format(v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  void csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i]);
      out << "\n";
    }
  }
  json records() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json o = json::object();
      for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
      arr.push_back(std::move(o));
    }
    return arr;
  }
};

void emit(const json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

template <Scalar S>
json series_json(const SeriesValue<S>& v) {
  json o = json::object();
  o["finite"] = v.finite;
  o["value"] = v.finite ? to_json(v.value) : json(nullptr);
  o["exact"] = v.exact;
  o["error_bound"] = std::isfinite(v.error_bound) ? json(v.error_bound) : json("inf");
  return o;
}

template <Scalar S>
json series_cell(const SeriesValue<S>& v) {
  if (!v.finite) return "inf";
  return to_json(v.value);
}

template <Scalar S>
json opt_json(const std::optional<S>& v) {
  return v ? to_json(*v) : json(nullptr);
}

template <Scalar S>
json decomposition_json(const Decomposition<S>& d) {
  json o = json::object();
  o["statement"] = d.statement;
  o["ok"] = d.ok;
  o["A1"] = opt_json(d.A1);
  o["A2"] = opt_json(d.A2);
  o["residual_norm"] = series_json(d.residual_norm);
  o["combination_norm"] = series_json(d.combination_norm);
  o["lhs"] = d.lhs;
  o["rhs"] = d.rhs;
  o["holds"] = d.holds;
  if (!d.note.empty()) o["note"] = d.note;
  return o;
}

std::string side_name(Side s) {
  switch (s) {
    case Side::omega:
      return "omega";
    case Side::mirror:
      return "mirror";
    case Side::axis:
      return "axis";
  }
  return "?";
}

// ---- argument checks ------------------------------------------------------

int need_range(int v, int lo, int hi, const char* what) {
  if (v < lo || v > hi)
    throw validation_error(std::string(what) + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

int trunc_or(const Options& o, int def, int hi) {
  return need_range(o.trunc < 0 ? def : o.trunc, 1, hi, "--trunc");
}

Domain parse_domain(const std::string& s) {
  if (s == "sg") return Domain::sg;
  if (s == "omega") return Domain::omega;
  throw validation_error("--domain must be sg or omega");
}

bool want_json(const Options& o, const char* def) {
  const std::string f = o.format.empty() ? def : o.format;
  if (f == "json") return true;
  if (f == "csv") return false;
  throw validation_error("format must be json or csv");
}

// ---- commands -------------------------------------------------------------

void cmd_graph(const Options& o, std::ostream& out) {
  if (o.level < 0) throw validation_error("--level is required");
  const auto g = graph_at(o.level);
  if (!want_json(o, "csv")) {
    Table t{{"u", "v"}, {}};
    for (auto [a, b] : g->edges)
      t.rows.push_back({g->vertices[static_cast<std::size_t>(a)].str(), g->vertices[static_cast<std::size_t>(b)].str()});
    t.csv(out);
    return;
  }
  json j = json::object();
  j["level"] = o.level;
  json vs = json::array();
  for (std::size_t i = 0; i < g->vertices.size(); ++i) {
    const auto& v = g->vertices[i];
    const auto c = coordinates(v);
    vs.push_back({{"index", i},
                  {"label", v.str()},
                  {"x", c[0]},
                  {"y", c[1]},
                  {"boundary", g->is_boundary(static_cast<int>(i))},
                  {"side", side_name(g->sides[i])},
                  {"mirror", g->reflection[i]}});
  }
  j["vertices"] = std::move(vs);
  json es = json::array();
  for (auto [a, b] : g->edges) es.push_back({a, b});
  j["edges"] = std::move(es);
  emit(j, out);
}

template <Scalar S>
void cmd_solve(const Options& o, std::ostream& out) {
  const auto data = boundary_from<S>(read_json_file(o.data));
  const int M = trunc_or(o, 8, kMaxTrunc);
  const auto sol = o.lambda.empty() ? solve_continuous(data, M) : solve_parametric(data, parse_scalar<S>(o.lambda), M);
  Table t{{"m", "point", "value"}, {}};
  t.rows.push_back({0, "y_0", to_json(sol.y[0])});
  for (int m = 1; m <= M; ++m) {
    t.rows.push_back({m, "x_" + std::to_string(m), to_json(data.a.at(m))});
    t.rows.push_back({m, "y_" + std::to_string(m), to_json(sol.y[static_cast<std::size_t>(m)])});
  }
  if (!want_json(o, "csv")) return t.csv(out);
  json j = json::object();
  j["backend"] = scalar_traits<S>::name;
  j["truncation"] = M;
  j["continuous"] = sol.continuous;
  j["error_bound"] = sol.error_bound;
  j["rows"] = t.records();
  emit(j, out);
}

template <Scalar S>
void cmd_energy(const Options& o, std::ostream& out) {
  const auto data = boundary_from<S>(read_json_file(o.data));
  const int M = trunc_or(o, 8, kMaxTrunc);
  const auto rep = energy_report(solve_continuous(data, M));
  if (!want_json(o, "csv")) {
    Table t{{"quantity", "value"}, {}};
    t.rows.push_back({"total", series_cell(rep.total)});
    t.rows.push_back({"partial", to_json(rep.partial)});
    t.rows.push_back({"lower", series_cell(rep.lower)});
    t.rows.push_back({"upper", series_cell(rep.upper)});
    t.rows.push_back({"weighted_norm_sq", series_cell(rep.weighted_norm_sq)});
    t.rows.push_back({"finite", rep.finite});
    return t.csv(out);
  }
  json j = json::object();
  j["backend"] = scalar_traits<S>::name;
  j["truncation"] = M;
  j["total"] = series_json(rep.total);
  j["partial"] = to_json(rep.partial);
  j["lower"] = series_json(rep.lower);
  j["upper"] = series_json(rep.upper);
  j["weighted_norm_sq"] = series_json(rep.weighted_norm_sq);
  j["finite"] = rep.finite;
  emit(j, out);
}

template <Scalar S>
void cmd_flux(const Options& o, std::ostream& out) {
  const auto data = boundary_from<S>(read_json_file(o.data));
  const int M = trunc_or(o, 8, kMaxTrunc);
  Table t{{"m", "eta_closed", "eta_via_solution"}, {}};
  double bound = 0;
  for (int m = 1; m <= M; ++m) {
    const auto e = eta_from_data(data, m);
    bound = std::max(bound, e.error_bound);
    t.rows.push_back({m, to_json(e.closed), to_json(e.via_solution)});
  }
  if (!want_json(o, "csv")) return t.csv(out);
  const auto apex = apex_flux(data);
  json j = json::object();
  j["backend"] = scalar_traits<S>::name;
  j["truncation"] = M;
  j["error_bound"] = bound;
  j["eta"] = t.records();
  j["apex"] = {{"exists", apex.exists},
               {"value", opt_json(apex.value)},
               {"route", apex.route},
               {"max_ratio", apex.max_ratio},
               {"diagnostics", apex.diagnostics}};
  emit(j, out);
}

template <Scalar S>
void cmd_dtn(const Options& o, std::ostream& out) {
  const int N = trunc_or(o, 20, kMaxDtnTrunc);
  const auto doc = read_json_file(o.data);
  Table t;
  if (o.action == "apply") {
    const auto f = dtn_apply(boundary_from<S>(doc), N);
    t.columns = {"m", "eta"};
    for (int m = 1; m <= N; ++m) t.rows.push_back({m, to_json(f.eta.at(m))});
  } else {
    const auto a = dtn_invert(flux_from<S>(doc), N);
    t.columns = {"m", "a"};
    for (int m = 1; m <= N; ++m) t.rows.push_back({m, to_json(a.a.at(m))});
  }
  if (!want_json(o, "json")) return t.csv(out);
  json arr = json::array();
  for (const auto& r : t.rows) arr.push_back(json::array({r[0], r[1]}));
  emit(arr, out);
}

template <Scalar S>
void cmd_green(const Options& o, std::ostream& out) {
  if (o.x.empty() || o.y.empty()) throw validation_error("--x and --y are required");
  const Vertex x = point_from(o.x), y = point_from(o.y);
  const Domain d = parse_domain(o.domain);
  const std::string mode = o.mode.empty() ? "series" : o.mode;
  const int M = o.level >= 0 ? o.level : std::max(1, std::min(x.level(), y.level()));
  S value{};
  if (mode == "series") {
    value = d == Domain::omega ? green_omega<S>(x, y, M) : green_eval<S>(x, y, GreenMode::series, M);
  } else if (mode == "closed") {
    if (d == Domain::omega) throw validation_error("closed mode is available on sg only");
    bool is_x = false;
    for (int m = 1; m <= 30; ++m) is_x = is_x || x == x_point(m);
    value = green_eval<S>(x, y, is_x ? GreenMode::closed_x : GreenMode::closed_z);
  } else {
    throw validation_error("--mode must be series or closed");
  }
  Table t{{"x", "y", "value"}, {{x.str(), y.str(), to_json(value)}}};
  if (!want_json(o, "json")) return t.csv(out);
  json j = json::object();
  j["backend"] = scalar_traits<S>::name;
  j["domain"] = o.domain;
  j["mode"] = mode;
  if (mode == "series") j["level"] = M;
  j["x"] = x.str();
  j["y"] = y.str();
  j["value"] = to_json(value);
  emit(j, out);
}

template <Scalar S>
void cmd_poisson(const Options& o, std::ostream& out) {
  const Domain d = parse_domain(o.domain);
  const int M = o.level < 0 ? 5 : o.level;
  check_level(M, "poisson");
  const auto f = field_from<S>(o.source);
  const auto u = solve_poisson(f, M, d);
  std::optional<VertexFn<S>> ref;
  if (o.oracle) ref = poisson_graph_oracle(f, M, d);
  Table t{{"vertex", "x", "y", "value"}, {}};
  if (ref) t.columns.push_back("oracle");
  const auto& g = *u.graph;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (d == Domain::omega && g.sides[i] == Side::mirror) continue;
    const auto c = coordinates(g.vertices[i]);
    std::vector<json> row{g.vertices[i].str(), c[0], c[1], to_json(u.values[i])};
    if (ref) row.push_back(to_json(ref->values[i]));
    t.rows.push_back(std::move(row));
  }
  if (!want_json(o, "csv")) return t.csv(out);
  json j = json::object();
  j["backend"] = scalar_traits<S>::name;
  j["domain"] = o.domain;
  j["level"] = M;
  j["source"] = o.source;
  j["values"] = t.records();
  emit(j, out);
}

template <Scalar S>
void cmd_trace(const Options& o, std::ostream& out) {
  const auto t = trace_from<S>(read_json_file(o.data));
  const auto n = trace_membership(t);
  json growth;
  try {
    growth = decomposition_json(decompose_growth(t.eta));
  } catch (const truncation_error& e) {
    growth = {{"error", e.what()}};
  }
  if (!want_json(o, "json")) {
    Table tb{{"quantity", "value"}, {}};
    tb.rows.push_back({"affine_A1", opt_json(n.affine.A1)});
    tb.rows.push_back({"affine_A2", opt_json(n.affine.A2)});
    tb.rows.push_back({"a_sup", series_cell(n.a_sup)});
    tb.rows.push_back({"a_l2_sq", series_cell(n.a_l2_sq)});
    tb.rows.push_back({"eta_lip", series_cell(n.eta_lip)});
    tb.rows.push_back({"eta_l2_sq", series_cell(n.eta_l2_sq)});
    tb.rows.push_back({"in_T_inf", n.in_T_inf});
    tb.rows.push_back({"in_T2", n.in_T2});
    tb.rows.push_back({"T_inf", n.in_T_inf ? to_json(n.T_inf) : json(nullptr)});
    tb.rows.push_back({"T2_sq", n.in_T2 ? to_json(n.T2_sq) : json(nullptr)});
    tb.rows.push_back({"T_inf_closed", opt_json(n.T_inf_closed)});
    tb.rows.push_back({"T2_sq_closed", opt_json(n.T2_sq_closed)});
    return tb.csv(out);
  }
  json j = json::object();
  j["backend"] = scalar_traits<S>::name;
  j["affine"] = decomposition_json(n.affine);
  j["growth"] = growth;
  j["a_sup"] = series_json(n.a_sup);
  j["a_l2_sq"] = series_json(n.a_l2_sq);
  j["eta_lip"] = series_json(n.eta_lip);
  j["eta_l2_sq"] = series_json(n.eta_l2_sq);
  j["in_T_inf"] = n.in_T_inf;
  j["in_T2"] = n.in_T2;
  j["T_inf"] = n.in_T_inf ? to_json(n.T_inf) : json(nullptr);
  j["T2_sq"] = n.in_T2 ? to_json(n.T2_sq) : json(nullptr);
  j["T_inf_closed"] = opt_json(n.T_inf_closed);
  j["T2_sq_closed"] = opt_json(n.T2_sq_closed);
  emit(j, out);
}

template <Scalar S>
bool same_trace(const TracePair<S>& a, const TracePair<S>& b, int M) {
  for (int m = 1; m <= M; ++m)
    if (!same_value(a.a.at(m), b.a.at(m)) || !same_value(a.eta.at(m), b.eta.at(m))) return false;
  return true;
}

template <Scalar S>
json gluing_json(const GluingReport<S>& g) {
  json es = json::array();
  for (const auto& e : g.entries)
    es.push_back({{"vertex", e.v.str()}, {"continuity", to_json(e.continuity)}, {"matching", to_json(e.matching)}});
  return {{"glued", g.glued()},
          {"max_continuity", to_json(g.max_continuity)},
          {"max_matching", to_json(g.max_matching)},
          {"entries", es}};
}

template <Scalar S>
void cmd_extend(const Options& o, std::ostream& out) {
  const std::string mode = o.mode.empty() ? "E" : o.mode;
  const int M = trunc_or(o, 8, kMaxExtendTrunc);
  const auto doc = read_json_file(o.data);
  const bool as_json = want_json(o, "json");
  if (mode == "even") {
    const auto sol = solve_continuous(boundary_from<S>(doc), M + 1);
    const auto g = verify_gluing(even_reflection(sol, M));
    if (!as_json) {
      Table t{{"vertex", "continuity", "matching"}, {}};
      for (const auto& e : g.entries) t.rows.push_back({e.v.str(), to_json(e.continuity), to_json(e.matching)});
      return t.csv(out);
    }
    emit({{"mode", mode}, {"truncation", M}, {"gluing", gluing_json(g)}}, out);
    return;
  }
  Extension<S> ext;
  bool roundtrip = false;
  json bound;
  if (mode == "E") {
    const auto t = trace_from<S>(doc);
    ext = extend_E(t, M);
    const auto n = trace_membership(t);
    if (n.in_T_inf) {
      const double a = to_double(n.a_sup.value), e = to_double(n.eta_lip.value);
      bound = {{"a_sup", to_json(n.a_sup.value)}, {"eta_lip", to_json(n.eta_lip.value)}, {"M1", 9}, {"M2", 2},
               {"holds", to_double(ext.lap_sup) <= 9 * a + 2 * e + 1e-12}};
    }
    roundtrip = same_trace(restrict_trace(ext.u, M), t, M);
  } else if (mode == "Eomega") {
    const auto sol = solve_continuous(boundary_from<S>(doc), M + 1);
    ext = extend_E_omega(sol, M);
    roundtrip = same_trace(restrict_trace(ext.u, M), restrict_trace(sol, M), M);
  } else {
    throw validation_error("--mode must be E, Eomega or even");
  }
  const auto g = verify_gluing(ext.u);
  Table t{{"m", "C_Y", "C_Z"}, {}};
  for (int m = 1; m <= M; ++m)
    t.rows.push_back({m, to_json(ext.C_Y[static_cast<std::size_t>(m - 1)]), to_json(ext.C_Z[static_cast<std::size_t>(m - 1)])});
  if (!as_json) return t.csv(out);
  json j = json::object();
  j["backend"] = scalar_traits<S>::name;
  j["mode"] = mode;
  j["truncation"] = M;
  j["laplacian"] = t.records();
  j["lap_sup"] = to_json(ext.lap_sup);
  j["lap_l2_sq"] = to_json(ext.lap_l2_sq);
  j["lap_l2_sq_omega"] = to_json(ext.lap_l2_sq_omega);
  if (!bound.is_null()) j["bound"] = bound;
  j["lap_l2_sq_mirror"] = to_json(ext.lap_l2_sq_mirror);
  j["in_domain"] = ext.in_domain;
  j["restriction_roundtrip"] = roundtrip;
  j["gluing"] = gluing_json(g);
  emit(j, out);
}

json eigen_cell(const EigenGroup& g, double v) {
  if (g.exact_value) return *g.exact_value;
  return v;
}

void cmd_spectra(const Options& o, std::ostream& out) {
  if (o.backend == "rational")
    throw validation_error("spectra uses a floating-point eigensolver; use --backend float (or leave the default)");
  if (o.level < 0) throw validation_error("--level is required");
  const bool as_json = want_json(o, "csv");
  if (o.census) {
    const auto rows = series_census(o.level);
    Table t{{"series", "k", "N_formula", "N_graph", "D_formula", "D_graph", "match"}, {}};
    for (const auto& r : rows) t.rows.push_back({r.series, r.k, r.N_formula, r.N_graph, r.D_formula, r.D_graph, r.match});
    if (!as_json) return t.csv(out);
    emit({{"census", t.records()}}, out);
    return;
  }
  const auto rep = symmetry_counts(o.level, parse_bc(o.bc), o.tol);
  const auto& sp = rep.spectrum;
  Table t{{"k", "eigenvalue"}, {}};
  int k = 0;
  for (const auto& g : sp.groups)
    for (int i = 0; i < g.multiplicity; ++i, ++k) t.rows.push_back({k + 1, eigen_cell(g, sp.values[static_cast<std::size_t>(k)])});
  if (!as_json) return t.csv(out);
  json groups = json::array();
  for (const auto& g : sp.groups)
    groups.push_back({{"value", eigen_cell(g, g.value)},
                      {"multiplicity", g.multiplicity},
                      {"even", g.even},
                      {"odd", g.odd},
                      {"exact", g.exact_value.has_value()}});
  json ev = json::array();
  for (const auto& r : t.rows) ev.push_back(r[1]);
  json j = json::object();
  j["level"] = o.level;
  j["bc"] = to_string(sp.bc);
  j["eigenvalues"] = ev;
  j["groups"] = groups;
  j["max_residual"] = sp.max_residual;
  j["trace_error"] = sp.trace_error;
  j["even_total"] = rep.even_total;
  j["odd_total"] = rep.odd_total;
  j["even_expected"] = rep.even_expected;
  j["odd_expected"] = rep.odd_expected;
  j["totals_match"] = rep.totals_match;
  emit(j, out);
}

template <class F>
void with_backend(const Options& o, F&& f) {
  if (o.backend == "auto" || o.backend == "rational") return f(Rational{});
  if (o.backend == "float" || o.backend == "float64") return f(double{});
  throw validation_error("--backend must be rational or float");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic calculus on the Sierpinski gasket and its left half"};
  app.name("halfgasket");
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--backend", o.backend, "auto (default), rational or float; auto picks float only for power-term data");
  app.add_option("--tol", o.tol, "relative tolerance for grouping numeric eigenvalues (default 1e-8)");

  auto add_format = [&](CLI::App* s) { s->add_option("--format,--out,--report", o.format, "json or csv"); };
  auto add_data = [&](CLI::App* s) { s->add_option("--data", o.data, "input JSON file")->required(); };
  auto add_backend = [&](CLI::App* s) { s->add_option("--backend", o.backend, "auto, rational or float"); };

  auto* graph = app.add_subcommand("graph", "export the level-m graph");
  graph->add_option("--level,-m", o.level)->required();
  add_format(graph);

  auto* solve = app.add_subcommand("solve", "harmonic solution on the half gasket, CSV m,point,value");
  add_data(solve);
  solve->add_option("--trunc,-M", o.trunc, "levels to report (default 8)");
  solve->add_option("--lambda", o.lambda, "u(y_1) for a parametric member");

  auto* energy = app.add_subcommand("energy", "energy of the continuous solution");
  add_data(energy);
  energy->add_option("--trunc,-M", o.trunc, "levels in the partial sums (default 8)");

  auto* flux = app.add_subcommand("flux", "normal derivatives at x_m and the apex");
  add_data(flux);
  flux->add_option("--trunc,-M", o.trunc, "fluxes to report (default 8)");

  auto* dtn = app.add_subcommand("dtn", "Dirichlet-to-Neumann map");
  dtn->add_option("action", o.action, "apply or invert")->required()->check(CLI::IsMember({"apply", "invert"}));
  add_data(dtn);
  dtn->add_option("--trunc,-N", o.trunc, "matrix size (default 20)");

  auto* green = app.add_subcommand("green", "Green's function G(x, y)");
  green->add_option("--x", o.x, "x:m, y:m, z:m, q:j or w:<word>:<corner>")->required();
  green->add_option("--y", o.y)->required();
  green->add_option("--mode", o.mode, "series (default) or closed");
  green->add_option("--level,-M", o.level, "series level (default: exact level for the pair)");
  green->add_option("--domain", o.domain, "sg or omega");

  auto* poisson = app.add_subcommand("poisson", "solve -Delta u = f with zero boundary values");
  poisson->add_option("--f", o.source, "const:<c> or cell:<word>:<c>");
  poisson->add_option("--level,-M", o.level, "graph level (default 5)");
  poisson->add_option("--domain", o.domain, "sg or omega");
  poisson->add_flag("--oracle", o.oracle, "add the graph-oracle column");

  auto* trace = app.add_subcommand("trace", "trace decomposition and norms");
  add_data(trace);

  auto* extend = app.add_subcommand("extend", "extension operators and gluing report");
  extend->add_option("--mode", o.mode, "E, Eomega or even")->check(CLI::IsMember({"E", "Eomega", "even"}));
  add_data(extend);
  extend->add_option("--trunc,-M", o.trunc, "levels to build (default 8)");

  auto* spectra = app.add_subcommand("spectra", "graph Laplacian spectra and symmetry counts");
  spectra->add_option("--level,-m", o.level)->required();
  spectra->add_option("--bc", o.bc, "dirichlet, neumann or neumann-scaled");
  spectra->add_flag("--census", o.census, "series multiplicity census up to --level");

  for (auto* s : {graph, solve, energy, flux, dtn, green, poisson, trace, extend, spectra}) {
    if (s != graph && s != dtn && s != spectra) add_format(s);
    if (s != graph) add_backend(s);
  }
  add_format(dtn);
  add_format(spectra);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "halfgasket: " << e.what() << "\n";
    return kInvalid;
  }

  std::ostringstream buf;
  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "graph") cmd_graph(o, buf);
    else if (name == "spectra") cmd_spectra(o, buf);
    else
      with_backend(o, [&](auto tag) {
        using S = decltype(tag);
        if (name == "solve") cmd_solve<S>(o, buf);
        else if (name == "energy") cmd_energy<S>(o, buf);
        else if (name == "flux") cmd_flux<S>(o, buf);
        else if (name == "dtn") cmd_dtn<S>(o, buf);
        else if (name == "green") cmd_green<S>(o, buf);
        else if (name == "poisson") cmd_poisson<S>(o, buf);
        else if (name == "trace") cmd_trace<S>(o, buf);
        else if (name == "extend") cmd_extend<S>(o, buf);
      });
  } catch (const validation_error& e) {
    err << "halfgasket: validation error: " << e.what() << "\n";
    return kInvalid;
  } catch (const domain_error& e) {
    err << "halfgasket: domain error: " << e.what() << "\n";
    return kInvalid;
  } catch (const resource_limit_error& e) {
    err << "halfgasket: resource limit: " << e.what() << "\n";
    return kInvalid;
  } catch (const convergence_error& e) {
    err << "halfgasket: convergence error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const truncation_error& e) {
    err << "halfgasket: truncation error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const internal_error& e) {
    err << "halfgasket: internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const nlohmann::json::exception& e) {
    err << "halfgasket: validation error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::bad_alloc&) {
    err << "halfgasket: resource limit: out of memory\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "halfgasket: internal error: " << e.what() << "\n";
    return kInternal;
  }
  out << buf.str();
  return kOk;
}

}  // namespace halfgasket::cli
