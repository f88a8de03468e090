#include "halfgasket/bvp.hpp"

#include <cmath>
#include <limits>

#include "halfgasket/errors.hpp"
#include "halfgasket/sparse_solve.hpp"

namespace halfgasket {

namespace {

constexpr int kMaxTruncation = 4000;

void check_truncation(int M) {
  if (M < 0) throw validation_error("truncation level must be >= 0");
  if (M > kMaxTruncation) throw resource_limit_error("truncation level above " + std::to_string(kMaxTruncation));
}

}  // namespace

template <Scalar S>
std::optional<DataSums<S>> data_sums(const Sequence<S>& a) {
  if (!a.exact_tail()) return std::nullopt;
  DataSums<S> out;
  const long P = a.prefix_length();
  out.start = P;
  out.five = QuasiPoly<S>::constant(five_sum(a, P)) + a.tail().times_geometric(S(5)).partial_sums(P + 1);
  auto tails = a.tail().times_geometric(frac<S>(1, 3)).tail_sums();
  if (!tails) return std::nullopt;
  out.three = tails->times_geometric(S(3));
  return out;
}

template <Scalar S>
S five_sum(const Sequence<S>& a, long m) {
  S acc(0), p(1);
  for (long k = 1; k <= m; ++k) {
    p *= S(5);
    acc += p * a.at(k);
  }
  return acc;
}

template <Scalar S>
SeriesValue<S> three_tail(const Sequence<S>& a, long m) {
  return a.weighted_tail(frac<S>(1, 3), m);
}

template <Scalar S>
S BVPSolution<S>::y_at(long m) const {
  if (m < 0) throw validation_error("negative index");
  if (m < static_cast<long>(y.size())) return y[static_cast<std::size_t>(m)];
  if (y_exact) return y_exact->at(m);
  throw truncation_error("u(y_" + std::to_string(m) + ") lies beyond the truncation level " +
                         std::to_string(truncation()));
}

template <Scalar S>
Triple<S> BVPSolution<S>::cell_triple(int m) const {
  if (m < 1) throw validation_error("Y_m needs m >= 1");
  return Triple<S>{y_at(m), y_at(m - 1), data.at(m)};
}

template <Scalar S>
PiecewiseFunction<S> BVPSolution<S>::cells() const {
  PiecewiseFunction<S> f;
  for (int m = 1; m <= truncation(); ++m) f.add(Cell<S>{Word::zeros(m - 1, {1}), cell_triple(m), S(0)});
  return f;
}

template <Scalar S>
S BVPSolution<S>::value_at(const Vertex& v) const {
  const Side side = side_of(v);
  if (side == Side::mirror) throw domain_error("vertex " + v.str() + " is on the mirror side");
  if (v.word.empty() && v.corner == 0) {
    auto A = data.a.limit();
    if (!continuous || !A) throw domain_error("u(q_0) is undefined for this solution");
    return *A;
  }
  const auto f = cells();
  if (auto x = f.try_value(v)) return *x;
  throw truncation_error("vertex " + v.str() + " lies beyond Y_" + std::to_string(truncation()));
}

template <Scalar S>
S blowup_mode(long m) {
  return frac<S>(5, 14) * (ipow(S(3), m) - ipow(S(5), -m));
}

template <Scalar S>
BVPSolution<S> solve_parametric(const BoundarySeq<S>& a, const S& lambda, int M) {
  check_truncation(M);
  BVPSolution<S> sol;
  sol.data = a;
  sol.continuous = false;
  sol.y.push_back(a.a0);
  if (M == 0) return sol;
  const S a1 = a.at(1);
  S sum3(0), sum5(0);
  for (int m = 1; m <= M; ++m) {
    if (m >= 2) {
      const S am = a.at(m);
      sum3 += am / ipow(S(3), m);
      sum5 += am * ipow(S(5), m);
    }
    const S F = (S(5) * lambda - a.a0 - a1 - S(18) * sum3) / S(14);
    const S G = (S(-5) * lambda + S(15) * a.a0 + S(15) * a1 + S(4) * sum5) / S(14);
    sol.y.push_back(ipow(S(3), m) * F + G / ipow(S(5), m));
  }
  return sol;
}

template <Scalar S>
BVPSolution<S> solve_continuous(const BoundarySeq<S>& a, int M) {
  check_truncation(M);
  if (!a.a.has_tail()) throw truncation_error("the continuous solution needs the full boundary sequence");
  if (!a.a.limit()) throw domain_error("boundary data do not converge, so no solution is continuous at q_0");
  BVPSolution<S> sol;
  sol.data = a;
  sol.y.push_back(a.a0);
  const auto T1 = three_tail(a.a, 0);
  if (!T1.finite) throw domain_error("sum 3^-k a_k diverges");
  const S c0 = a.a0 - frac<S>(9, 7) * T1.value;
  double err = T1.exact ? 0.0 : T1.error_bound;
  S s5(0);
  for (int m = 1; m <= M; ++m) {
    s5 += ipow(S(5), m) * a.at(m);
    if (m == 1) {
      sol.y.push_back((a.a0 - S(5) * a.at(1) + S(18) * T1.value) / S(5));
      sol.error_bound = std::max(sol.error_bound, 18.0 / 5.0 * err);
      continue;
    }
    const auto Tm = three_tail(a.a, m);
    sol.y.push_back((c0 + frac<S>(2, 7) * s5) / ipow(S(5), m) + frac<S>(9, 7) * Tm.value);
    if (!Tm.exact || !T1.exact)
      sol.error_bound = std::max(sol.error_bound, 9.0 / 7.0 * (Tm.error_bound + err * std::pow(5.0, -m)));
  }
  if (auto sums = data_sums(a.a)) {
    const long P0 = std::max(sums->start, 1L);
    std::vector<S> prefix;
    for (long m = 1; m <= P0; ++m) {
      if (m <= M) {
        prefix.push_back(sol.y[static_cast<std::size_t>(m)]);
      } else if (m == 1) {
        prefix.push_back((a.a0 - S(5) * a.at(1) + S(18) * T1.value) / S(5));
      } else {
        prefix.push_back((c0 + frac<S>(2, 7) * five_sum(a.a, m)) / ipow(S(5), m) +
                         frac<S>(9, 7) * three_tail(a.a, m).value);
      }
    }
    QuasiPoly<S> tail = (QuasiPoly<S>::constant(c0) + sums->five * frac<S>(2, 7)).times_geometric(frac<S>(1, 5)) +
                        sums->three * frac<S>(9, 7);
    sol.y_exact = Sequence<S>(std::move(prefix), std::move(tail));
  }
  return sol;
}

template <Scalar S>
ParametricFamily<S> parametric_family(const BoundarySeq<S>& a, int M) {
  ParametricFamily<S> fam{solve_continuous(a, std::max(M, 1)), S(0), {}};
  fam.lambda_star = fam.particular.y[1];
  if (M == 0) fam.particular.y.resize(1);
  for (int m = 0; m <= M; ++m) fam.mode.push_back(blowup_mode<S>(m));
  return fam;
}

template <Scalar S>
OracleSolution<S> oracle_graph_solve(const BoundarySeq<S>& a, int M) {
  if (M < 1) throw validation_error("oracle needs M >= 1");
  check_level(M, "oracle_graph_solve");
  OracleSolution<S> out;
  out.graph = graph_at(M);
  const auto& g = *out.graph;
  out.region.assign(g.vertices.size(), 0);
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    const Word w = g.cell_word(c);
    int first = 0;
    for (auto d : w.digits)
      if (d != 0) {
        first = d;
        break;
      }
    if (first != 1) continue;
    for (int i : g.cells[c]) out.region[static_cast<std::size_t>(i)] = 1;
  }
  const auto cont = solve_continuous(a, M);
  std::unordered_map<int, S> pinned;
  pinned[g.index_of(corner_point(1))] = a.a0;
  for (int m = 1; m <= M; ++m) pinned[g.index_of(x_point(m))] = a.at(m);
  pinned[g.index_of(y_point(M))] = cont.y[static_cast<std::size_t>(M)];
  out.values = solve_graph_dirichlet<S>(g, out.region, pinned);
  return out;
}

template <Scalar S>
EnergyReport<S> energy_report(const BVPSolution<S>& sol) {
  EnergyReport<S> r;
  const auto& a = sol.data;
  const S w = frac<S>(5, 3);
  auto term = [&](long m, const S& um, const S& um1) {
    const S am = a.at(m);
    return ipow(w, m) * ((um - um1) * (um - um1) + (um - am) * (um - am) + (um1 - am) * (um1 - am));
  };
  for (int m = 1; m <= sol.truncation(); ++m)
    r.partial += term(m, sol.y[static_cast<std::size_t>(m)], sol.y[static_cast<std::size_t>(m - 1)]);

  const auto limit = a.a.has_tail() ? a.a.limit() : std::nullopt;
  if (limit) r.weighted_norm_sq = (a.a - Sequence<S>::constant(*limit)).weighted_l2_squared(w);
  else r.weighted_norm_sq.finite = false;
  r.finite = sol.continuous && r.weighted_norm_sq.finite;

  if (a.a.has_tail()) {
    const S first = (a.at(1) - a.a0) * (a.at(1) - a.a0);
    const auto base = (a.a.shifted(1) - a.a).weighted_l2_squared(w);
    r.lower = base;
    r.upper = base;
    r.lower.value = frac<S>(5, 8) * base.value + w * first;
    r.upper.value = frac<S>(10, 3) * base.value + frac<S>(10, 3) * first;
    r.lower.error_bound *= 5.0 / 8.0;
    r.upper.error_bound *= 10.0 / 3.0;
  } else {
    r.lower.finite = r.upper.finite = false;
  }

  if (!r.finite) {
    r.total.finite = false;
    r.total.value = r.partial;
  } else if (sol.y_exact && a.a.exact_tail()) {
    const auto& U = *sol.y_exact;
    const auto U1 = U.shifted(1), A1 = a.a.shifted(1);
    const auto d1 = U1 - U, d2 = U1 - A1, d3 = U - A1;
    const auto body = (d1.product(d1) + d2.product(d2) + d3.product(d3)).times_geometric(w) * w;
    r.total = body.sum();
    r.total.value += term(1, U.at(1), a.a0);
  } else {
    r.total.value = r.partial;
    r.total.exact = false;
    r.total.error_bound = std::numeric_limits<double>::infinity();
  }
  return r;
}

#define HG_INSTANTIATE(S)                                                           \
  template std::optional<DataSums<S>> data_sums<S>(const Sequence<S>&);             \
  template S five_sum<S>(const Sequence<S>&, long);                                 \
  template SeriesValue<S> three_tail<S>(const Sequence<S>&, long);                  \
  template struct BVPSolution<S>;                                                   \
  template S blowup_mode<S>(long);                                                  \
  template BVPSolution<S> solve_parametric<S>(const BoundarySeq<S>&, const S&, int); \
  template BVPSolution<S> solve_continuous<S>(const BoundarySeq<S>&, int);          \
  template ParametricFamily<S> parametric_family<S>(const BoundarySeq<S>&, int);    \
  template OracleSolution<S> oracle_graph_solve<S>(const BoundarySeq<S>&, int);     \
  template EnergyReport<S> energy_report<S>(const BVPSolution<S>&);

HG_INSTANTIATE(Rational)
HG_INSTANTIATE(double)

}  // namespace halfgasket
