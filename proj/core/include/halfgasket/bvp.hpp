#pragma once

#include <optional>
#include <vector>

#include "halfgasket/harmonic.hpp"
#include "halfgasket/quasipoly.hpp"
#include "halfgasket/sequence.hpp"

namespace halfgasket {

// Closed forms in m, valid for m >= start, of
//   five(m)  = sum_{k=1}^m 5^k a_k
//   three(m) = sum_{k>=1} 3^{-k} a_{m+k}
// Empty unless the data carry an exact tail.
template <Scalar S>
struct DataSums {
  long start = 0;
  QuasiPoly<S> five;
  QuasiPoly<S> three;
};

template <Scalar S>
std::optional<DataSums<S>> data_sums(const Sequence<S>& a);

// sum_{k=1}^m 5^k a_k
template <Scalar S>
S five_sum(const Sequence<S>& a, long m);

// sum_{k>=1} 3^{-k} a_{m+k}
template <Scalar S>
SeriesValue<S> three_tail(const Sequence<S>& a, long m);

// Harmonic function on the half gasket with u(q_1) = a_0, u(x_m) = a_m, known
// through its values at y_0 .. y_M (u(y_0) = a_0).
template <Scalar S>
struct BVPSolution {
  BoundarySeq<S> data;
  std::vector<S> y;                    // u(y_m), m = 0..M
  std::optional<Sequence<S>> y_exact;  // u(y_m), m >= 1, when closed form is known
  bool continuous = true;
  double error_bound = 0;              // from numeric tails, 0 when exact

  int truncation() const { return static_cast<int>(y.size()) - 1; }
  // u(y_m); beyond the window only through y_exact.
  S y_at(long m) const;
  // Corner values of Y_m: (u(y_m), u(y_{m-1}), a_m).
  Triple<S> cell_triple(int m) const;
  PiecewiseFunction<S> cells() const;
  // Value at any vertex of the closed half gasket inside Y_1..Y_M (or q_0).
  S value_at(const Vertex& v) const;
};

// Blow-up direction of the parametric family: (5/14)(3^m - 5^{-m}).
template <Scalar S>
S blowup_mode(long m);

// Member of the one-parameter family with u(y_1) = lambda.
template <Scalar S>
BVPSolution<S> solve_parametric(const BoundarySeq<S>& a, const S& lambda, int M);

// The unique solution continuous at q_0. Requires convergent data.
template <Scalar S>
BVPSolution<S> solve_continuous(const BoundarySeq<S>& a, int M);

// Continuous member expressed as particular solution plus the blow-up mode
// scaled by (lambda - lambda*).
template <Scalar S>
struct ParametricFamily {
  BVPSolution<S> particular;
  S lambda_star;
  std::vector<S> mode;  // blow-up mode at y_0..y_M
};

template <Scalar S>
ParametricFamily<S> parametric_family(const BoundarySeq<S>& a, int M);

// Independent check: harmonic solve on the level-M half graph (cells Y_1..Y_M)
// with q_1, x_1..x_M and y_M pinned.
template <Scalar S>
struct OracleSolution {
  std::shared_ptr<const LevelGraph> graph;
  std::vector<char> region;
  std::vector<S> values;
};

template <Scalar S>
OracleSolution<S> oracle_graph_solve(const BoundarySeq<S>& a, int M);

template <Scalar S>
struct EnergyReport {
  S partial{};                // terms m = 1..M
  SeriesValue<S> total;       // full series; exact for generator data
  SeriesValue<S> lower;       // (5/8) sum (5/3)^m (a_{m+1}-a_m)^2 + (5/3)(a_1-a_0)^2
  SeriesValue<S> upper;       // (10/3) sum (5/3)^m (a_{m+1}-a_m)^2 + (10/3)(a_1-a_0)^2
  SeriesValue<S> weighted_norm_sq;  // || (5/3)^{m/2} (a_m - A) ||^2
  bool finite = false;
};

template <Scalar S>
EnergyReport<S> energy_report(const BVPSolution<S>& sol);

}  // namespace halfgasket
