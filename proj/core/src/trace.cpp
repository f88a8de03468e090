#include "halfgasket/trace.hpp"

#include <cmath>
#include <map>

#include "halfgasket/errors.hpp"

namespace halfgasket {

namespace {

template <Scalar S>
Sequence<S> geometric_seq(const S& c, const S& r) {
  return Sequence<S>::geometric(c, r);
}

// 1 / (1 - r^{-1/2})
double c_of(double r) { return 1.0 / (1.0 - 1.0 / std::sqrt(r)); }

template <Scalar S>
double norm_of(const SeriesValue<S>& v, bool squared) {
  if (!v.finite) return std::numeric_limits<double>::infinity();
  const double x = to_double(v.value);
  return squared ? std::sqrt(std::max(0.0, x)) : x;
}

template <Scalar S>
void settle(Decomposition<S>& d, double rhs, bool squared) {
  d.lhs = norm_of(d.residual_norm, squared);
  d.rhs = rhs;
  d.holds = d.ok && d.lhs <= rhs * (1 + 1e-12) + 1e-300;
}

template <Scalar S>
void require_tail(const Sequence<S>& a, const char* what) {
  if (!a.has_tail()) throw truncation_error(std::string(what) + " needs a sequence with a tail");
}

}  // namespace

template <Scalar S>
S TracePair<S>::a_at(long m) const {
  if (m > 0) return a.at(m);
  if (a0) return *a0;
  return (S(8) * a.at(1) - S(5) * a.at(2)) / S(3);
}

template <Scalar S>
S TracePair<S>::eta_at(long m) const {
  if (m > 0) return eta.at(m);
  if (eta0) return *eta0;
  return (S(16) * eta.at(1) - S(3) * eta.at(2)) / S(5);
}

template <Scalar S>
TracePair<S> TracePair<S>::of_harmonic(const S& u0, const S& u1, const S& u2) {
  TracePair<S> t;
  const S A2 = (u1 + u2 - S(2) * u0) / S(2);
  const S A3 = (u1 - u2) / S(2);
  t.a = Sequence<S>::generator(QuasiPoly<S>::constant(u0) + QuasiPoly<S>::geometric(frac<S>(4, 3) * A2, frac<S>(3, 5)));
  t.eta = Sequence<S>::geometric(S(-6) * A3, frac<S>(1, 3));
  t.harmonic = std::array<S, 3>{u0, u1, u2};
  return t;
}

template <Scalar S>
Decomposition<S> decompose_geometric(const Sequence<S>& a) {
  require_tail(a, "decompose_geometric");
  Decomposition<S> d;
  d.statement = "a_m = A (3/5)^m + a'_m";
  const auto D = a.times_geometric(frac<S>(5, 3)).limit();
  d.combination_norm = ((a.shifted(1) * S(5) - a * S(3)).times_geometric(S(5))).sup_abs();
  if (!D) {
    d.note = "(5/3)^m a_m does not converge";
    d.residual = a;
    d.residual_norm.finite = false;
    return d;
  }
  d.A1 = *D;
  d.residual = a - geometric_seq(*D, frac<S>(3, 5));
  d.residual_norm = d.residual.times_geometric(S(5)).sup_abs();
  d.ok = d.residual_norm.finite;
  settle(d, norm_of(d.combination_norm, false), false);
  if (d.ok && is_exact_v<S> && d.residual_norm.exact && d.combination_norm.exact)
    d.holds = d.residual_norm.value <= d.combination_norm.value;
  return d;
}

template <Scalar S>
Decomposition<S> decompose_series(const Sequence<S>& a, const S& r) {
  require_tail(a, "decompose_series");
  if (!(r > S(0)) || r == S(1)) throw validation_error("ratio must be positive and different from 1");
  Decomposition<S> d;
  const auto diff = a.shifted(1) - a;
  d.combination_norm = diff.weighted_l2_squared(r);
  if (r < S(1)) {
    d.statement = "||r^{m/2} a|| <= |a_1| sqrt(r/(1-r)) + sqrt(r)/(1-sqrt(r)) ||r^{m/2} (a_{m+1}-a_m)||";
    d.residual = a;
    d.residual_norm = a.weighted_l2_squared(r);
    d.ok = d.residual_norm.finite;
    const double rd = to_double(r), sr = std::sqrt(rd);
    settle(d, std::abs(to_double(a.at(1))) * std::sqrt(rd / (1 - rd)) + sr / (1 - sr) * norm_of(d.combination_norm, true),
           true);
    return d;
  }
  d.statement = "a = A + a', ||r^{m/2} a'|| <= ||r^{m/2} (a_{m+1}-a_m)|| / (1 - r^{-1/2})";
  const auto A = a.limit();
  if (!A) {
    d.note = "sequence does not converge";
    d.residual = a;
    d.residual_norm.finite = false;
    return d;
  }
  d.A1 = *A;
  d.residual = a - Sequence<S>::constant(*A);
  d.residual_norm = d.residual.weighted_l2_squared(r);
  d.ok = d.residual_norm.finite;
  settle(d, c_of(to_double(r)) * norm_of(d.combination_norm, true), true);
  return d;
}

template <Scalar S>
Decomposition<S> decompose_affine(const Sequence<S>& a) {
  require_tail(a, "decompose_affine");
  Decomposition<S> out;
  out.statement = "a_m = A1 + A2 (3/5)^m + a'_m";
  const auto s = a.shifted(2) * S(5) - a.shifted(1) * S(8) + a * S(3);
  out.combination_norm = s.weighted_l2_squared(frac<S>(25, 3));
  const auto dseq = (a.shifted(1) - a).times_geometric(frac<S>(5, 3));
  const auto D = dseq.limit();
  if (!D) {
    out.note = "(5/3)^m (a_{m+1} - a_m) does not converge";
    out.residual = a;
    out.residual_norm.finite = false;
    return out;
  }
  const auto e = a + geometric_seq(frac<S>(5, 2) * *D, frac<S>(3, 5));
  const auto E = e.limit();
  if (!E) {
    out.note = "a_m + (5/2)(3/5)^m D does not converge";
    out.residual = a;
    out.residual_norm.finite = false;
    return out;
  }
  out.A1 = *E;
  out.A2 = -frac<S>(5, 2) * *D;
  out.residual = e - Sequence<S>::constant(*E);
  out.residual_norm = out.residual.weighted_l2_squared(frac<S>(25, 3));
  out.ok = out.residual_norm.finite;
  settle(out, c_of(3.0) * c_of(25.0 / 3.0) / 3.0 * norm_of(out.combination_norm, true), true);
  return out;
}

template <Scalar S>
Decomposition<S> decompose_growth(const Sequence<S>& eta) {
  require_tail(eta, "decompose_growth");
  Decomposition<S> out;
  out.statement = "eta_m = 5^m A + eta'_m";
  const auto s = eta.shifted(2) * S(3) - eta.shifted(1) * S(16) + eta * S(5);
  out.combination_norm = s.weighted_l2_squared(S(3));
  const auto A = eta.times_geometric(frac<S>(1, 5)).limit();
  if (!A) {
    out.note = "5^{-m} eta_m does not converge";
    out.residual = eta;
    out.residual_norm.finite = false;
    return out;
  }
  out.A1 = *A;
  out.residual = eta - geometric_seq(*A, S(5));
  out.residual_norm = out.residual.weighted_l2_squared(S(3));
  out.ok = out.residual_norm.finite;
  const double e1 = 3 * std::abs(to_double(eta.at(2) - S(5) * eta.at(1)));
  const double c = (1 / std::sqrt(3.0)) / (1 - 1 / std::sqrt(3.0));
  settle(out, c_of(75.0) / 5 * (e1 / std::sqrt(2.0) + c * norm_of(out.combination_norm, true)), true);
  return out;
}

template <Scalar S>
SeriesValue<S> lip_norm_3m(const Sequence<S>& eta) {
  const auto c = eta.times_geometric(S(3));
  return (c.shifted(1) - c).sup_abs();
}

template <Scalar S>
TraceNorms<S> trace_membership(const TracePair<S>& t) {
  TraceNorms<S> n;
  n.affine = decompose_affine(t.a);
  n.eta_lip = lip_norm_3m(t.eta);
  n.eta_l2_sq = t.eta.weighted_l2_squared(S(3));
  if (n.affine.A1) {
    n.a_sup = n.affine.residual.times_geometric(S(5)).sup_abs();
    n.a_l2_sq = n.affine.residual_norm;
  } else {
    n.a_sup.finite = false;
    n.a_l2_sq.finite = false;
  }
  n.in_T_inf = n.affine.A1 && n.a_sup.finite && n.eta_lip.finite;
  n.in_T2 = n.affine.A1 && n.a_l2_sq.finite && n.eta_l2_sq.finite;
  if (n.in_T_inf) n.T_inf = abs(*n.affine.A1) + abs(*n.affine.A2) + n.a_sup.value + n.eta_lip.value;
  if (n.in_T2)
    n.T2_sq = *n.affine.A1 * *n.affine.A1 + *n.affine.A2 * *n.affine.A2 + n.a_l2_sq.value + n.eta_l2_sq.value;
  if (t.harmonic) {
    const auto& [u0, u1, u2] = *t.harmonic;
    const S sym = u1 + u2 - S(2) * u0;
    const S skew = u1 - u2;
    n.T_inf_closed = abs(u0) + abs(sym) / S(2);
    n.T2_sq_closed = u0 * u0 + sym * sym / S(4) + skew * skew / S(8);
  }
  return n;
}

template <Scalar S>
TracePair<S> restrict_trace(const PiecewiseFunction<S>& u, int M) {
  if (M < 1) throw validation_error("restriction window must be >= 1");
  std::vector<S> a, eta;
  for (int m = 1; m <= M; ++m) {
    const Word Y = Word::zeros(m - 1, {1});
    const int c = u.find_cell(Y);
    if (c < 0) throw truncation_error("cell Y_" + std::to_string(m) + " is not represented");
    a.push_back(u.cells()[static_cast<std::size_t>(c)].values[2]);
    eta.push_back(u.normal_derivative(static_cast<std::size_t>(c), 2));
  }
  TracePair<S> t;
  t.a = Sequence<S>::finite(std::move(a));
  t.eta = Sequence<S>::finite(std::move(eta));
  return t;
}

template <Scalar S>
TracePair<S> restrict_trace(const BVPSolution<S>& u, int M) {
  if (M < 1) throw validation_error("restriction window must be >= 1");
  std::vector<S> a, eta;
  for (int m = 1; m <= M; ++m) {
    const S am = u.data.at(m);
    a.push_back(am);
    eta.push_back(ipow(frac<S>(5, 3), m) * (S(2) * am - u.y_at(m) - u.y_at(m - 1)));
  }
  TracePair<S> t;
  t.a = Sequence<S>::finite(std::move(a));
  t.eta = Sequence<S>::finite(std::move(eta));
  return t;
}

namespace {

template <Scalar S>
void finish(Extension<S>& e) {
  e.lap_sup = S(0);
  for (int m = 1; m <= e.M; ++m) {
    const S w = ipow(S(3), -m);
    const S cy = e.C_Y[static_cast<std::size_t>(m - 1)], cz = e.C_Z[static_cast<std::size_t>(m - 1)];
    e.lap_sup = std::max({e.lap_sup, abs(cy), abs(cz)});
    e.lap_l2_sq_omega += cy * cy * w;
    e.lap_l2_sq_mirror += cz * cz * w;
  }
  e.lap_l2_sq = e.lap_l2_sq_omega + e.lap_l2_sq_mirror;
}

// Mirror-side values u(z_m), m = 0..M, and Laplacians C_m, m = 1..M, with
// the sign s of the eta terms (+1 for the mirror of a Y-side trace).
template <Scalar S>
void mirror_side(const TracePair<S>& t, int M, int s, std::vector<S>& uz, std::vector<S>& C) {
  const S sign(s);
  for (int m = 0; m <= M; ++m)
    uz.push_back((S(5) * t.a_at(m + 1) + S(3) * t.a_at(m)) / S(8) +
                 sign * ipow(frac<S>(3, 5), m) * (t.eta_at(m + 1) + t.eta_at(m)) / S(8));
  for (int m = 1; m <= M; ++m)
    C.push_back(ipow(S(5), m) * frac<S>(3, 8) * (S(5) * t.a_at(m + 1) - S(8) * t.a_at(m) + S(3) * t.a_at(m - 1)) +
                sign * ipow(S(3), m) / S(8) *
                    (S(3) * t.eta_at(m + 1) - S(16) * t.eta_at(m) + S(5) * t.eta_at(m - 1)));
}

}  // namespace

template <Scalar S>
Extension<S> extend_E(const TracePair<S>& t, int M) {
  if (M < 1) throw validation_error("extension window must be >= 1");
  check_level(M, "extend_E");
  if (t.a.available() < M + 1 || t.eta.available() < M + 1)
    throw truncation_error("extend_E to level " + std::to_string(M) + " needs a_m, eta_m up to m = " +
                           std::to_string(M + 1));
  Extension<S> e;
  e.M = M;
  std::vector<S> uy, uz;
  mirror_side(t, M, -1, uy, e.C_Y);
  mirror_side(t, M, +1, uz, e.C_Z);
  for (int m = 1; m <= M; ++m) {
    const auto i = static_cast<std::size_t>(m);
    e.u.add(Cell<S>{Word::zeros(m - 1, {1}), {uy[i], uy[i - 1], t.a_at(m)}, e.C_Y[i - 1]});
    e.u.add(Cell<S>{Word::zeros(m - 1, {2}), {uz[i], t.a_at(m), uz[i - 1]}, e.C_Z[i - 1]});
  }
  finish(e);
  if (t.a.has_tail() && t.eta.has_tail()) e.in_domain = trace_membership(t).in_T_inf;
  return e;
}

template <Scalar S>
Extension<S> extend_E_omega(const PiecewiseFunction<S>& u, int M, std::optional<S> a0, std::optional<S> eta0) {
  if (M < 1) throw validation_error("extension window must be >= 1");
  check_level(M, "extend_E_omega");
  auto t = restrict_trace(u, M + 1);
  t.a0 = a0;
  t.eta0 = eta0;
  Extension<S> e;
  e.M = M;
  std::vector<S> uz;
  mirror_side(t, M, +1, uz, e.C_Z);
  for (int m = 1; m <= M; ++m) {
    const auto i = static_cast<std::size_t>(m);
    const auto& Y = u.cells()[static_cast<std::size_t>(u.find_cell(Word::zeros(m - 1, {1})))];
    e.u.add(Y);
    e.C_Y.push_back(Y.laplacian);
    e.u.add(Cell<S>{Word::zeros(m - 1, {2}), {uz[i], t.a_at(m), uz[i - 1]}, e.C_Z[i - 1]});
  }
  finish(e);
  return e;
}

template <Scalar S>
Extension<S> extend_E_omega(const BVPSolution<S>& u, int M, std::optional<S> a0, std::optional<S> eta0) {
  if (u.truncation() < M + 1) throw truncation_error("solution window must reach M + 1");
  auto e = extend_E_omega(u.cells(), M, a0, eta0);
  if (u.data.a.has_tail()) {
    if (u.y_exact) {
      // eta_m = (5/3)^m [2a_m - u(y_m) - u(y_{m-1})] with exact tails
      const auto& Y = *u.y_exact;
      std::vector<S> pre{u.data.a0};
      for (long m = 1; m <= Y.prefix_length(); ++m) pre.push_back(Y.at(m));
      const Sequence<S> yprev(std::move(pre), Y.tail().shifted(-1));
      TracePair<S> full;
      full.a = u.data.a;
      full.eta = (u.data.a * S(2) - Y - yprev).times_geometric(frac<S>(5, 3));
      e.in_domain = trace_membership(full).in_T_inf;
    }
  }
  return e;
}

template <Scalar S>
PiecewiseFunction<S> even_reflection(const BVPSolution<S>& u, int M) {
  if (M < 1 || u.truncation() < M) throw truncation_error("solution window shorter than M");
  PiecewiseFunction<S> f;
  for (int m = 1; m <= M; ++m) {
    const auto t = u.cell_triple(m);
    f.add(Cell<S>{Word::zeros(m - 1, {1}), t, S(0)});
    f.add(Cell<S>{Word::zeros(m - 1, {2}), {t[0], t[2], t[1]}, S(0)});
  }
  return f;
}

template <Scalar S>
GluingReport<S> verify_gluing(const PiecewiseFunction<S>& u) {
  std::map<Vertex, std::vector<std::pair<std::size_t, int>>> at;
  const auto& cells = u.cells();
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (int j = 0; j < 3; ++j) at[Vertex(cells[c].word, j)].push_back({c, j});
  GluingReport<S> r;
  for (const auto& [v, list] : at) {
    if (list.size() != 2) continue;
    const auto [c1, j1] = list[0];
    const auto [c2, j2] = list[1];
    GluingEntry<S> e{v, cells[c1].values[static_cast<std::size_t>(j1)] - cells[c2].values[static_cast<std::size_t>(j2)],
                     u.normal_derivative(c1, j1) + u.normal_derivative(c2, j2)};
    r.max_continuity = std::max(r.max_continuity, abs(e.continuity));
    r.max_matching = std::max(r.max_matching, abs(e.matching));
    r.entries.push_back(std::move(e));
  }
  return r;
}

#define HG_INSTANTIATE(S)                                                                               \
  template struct TracePair<S>;                                                                         \
  template Decomposition<S> decompose_geometric<S>(const Sequence<S>&);                                 \
  template Decomposition<S> decompose_series<S>(const Sequence<S>&, const S&);                          \
  template Decomposition<S> decompose_affine<S>(const Sequence<S>&);                                    \
  template Decomposition<S> decompose_growth<S>(const Sequence<S>&);                                    \
  template SeriesValue<S> lip_norm_3m<S>(const Sequence<S>&);                                           \
  template TraceNorms<S> trace_membership<S>(const TracePair<S>&);                                      \
  template TracePair<S> restrict_trace<S>(const PiecewiseFunction<S>&, int);                            \
  template TracePair<S> restrict_trace<S>(const BVPSolution<S>&, int);                                  \
  template Extension<S> extend_E<S>(const TracePair<S>&, int);                                          \
  template Extension<S> extend_E_omega<S>(const PiecewiseFunction<S>&, int, std::optional<S>, std::optional<S>); \
  template Extension<S> extend_E_omega<S>(const BVPSolution<S>&, int, std::optional<S>, std::optional<S>); \
  template PiecewiseFunction<S> even_reflection<S>(const BVPSolution<S>&, int);                         \
  template GluingReport<S> verify_gluing<S>(const PiecewiseFunction<S>&);

HG_INSTANTIATE(Rational)
HG_INSTANTIATE(double)

}  // namespace halfgasket
