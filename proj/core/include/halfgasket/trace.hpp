#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "halfgasket/bvp.hpp"
#include "halfgasket/harmonic.hpp"
#include "halfgasket/sequence.hpp"

namespace halfgasket {

// Boundary trace on X: a_m = u(x_m), eta_m = flux at x_m outward from Y_m.
template <Scalar S>
struct TracePair {
  Sequence<S> a;
  Sequence<S> eta;
  // Index-0 values used by the extension formulas at m = 0, 1. Default to
  // (8a_1 - 5a_2)/3 and (16 eta_1 - 3 eta_2)/5, which make C_1 = C'_1 = 0.
  std::optional<S> a0;
  std::optional<S> eta0;
  // Set for traces of global harmonics: (u(q0), u(q1), u(q2)).
  std::optional<std::array<S, 3>> harmonic;

  S a_at(long m) const;
  S eta_at(long m) const;
  // Trace of the global harmonic with these V_0 values.
  static TracePair of_harmonic(const S& u0, const S& u1, const S& u2);
};

// ---- decompositions --------------------------------------------------------

template <Scalar S>
struct Decomposition {
  bool ok = false;          // limits exist and the residual norm is finite
  std::optional<S> A1;      // constant part (or the coefficient A)
  std::optional<S> A2;      // geometric / growth coefficient where applicable
  Sequence<S> residual;
  SeriesValue<S> residual_norm;     // sup norm, or squared l2 norm
  SeriesValue<S> combination_norm;  // same power as residual_norm
  // The inequality in non-squared form, in double.
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
  std::string statement;
  std::string note;
};

// a_m = A (3/5)^m + a'_m, ||5^m a'||_inf <= ||5^m (5a_{m+1} - 3a_m)||_inf.
template <Scalar S>
Decomposition<S> decompose_geometric(const Sequence<S>& a);

// r < 1: ||r^{m/2} a||_2 <= |a_1| sqrt(r/(1-r)) + sqrt(r)/(1-sqrt(r)) ||r^{m/2} (a_{m+1}-a_m)||_2.
// r > 1: a = A + a', ||r^{m/2} a'||_2 <= ||r^{m/2} (a_{m+1}-a_m)||_2 / (1 - r^{-1/2}).
// Only the r > 1 form splits off a constant.
template <Scalar S>
Decomposition<S> decompose_series(const Sequence<S>& a, const S& r);

// a_m = A1 + A2 (3/5)^m + a'_m with
// ||(25/3)^{m/2} a'||_2 <= C ||(25/3)^{m/2} (5a_{m+2} - 8a_{m+1} + 3a_m)||_2,
// C = C_3 C_{25/3} / 3, C_r = 1/(1 - r^{-1/2}).
template <Scalar S>
Decomposition<S> decompose_affine(const Sequence<S>& a);

// eta_m = 5^m A + eta'_m with ||3^{m/2} eta'||_2 <= (C_75/5)(|e_1|/sqrt 2 +
// c ||3^{m/2}(3eta_{m+2} - 16eta_{m+1} + 5eta_m)||_2), e_1 = 3(eta_2 - 5eta_1),
// c = (1/sqrt 3)/(1 - 1/sqrt 3).
template <Scalar S>
Decomposition<S> decompose_growth(const Sequence<S>& eta);

// sup_m |3^{m+1} eta_{m+1} - 3^m eta_m|
template <Scalar S>
SeriesValue<S> lip_norm_3m(const Sequence<S>& eta);

template <Scalar S>
struct TraceNorms {
  Decomposition<S> affine;
  SeriesValue<S> a_sup;       // ||5^m a'||_inf
  SeriesValue<S> a_l2_sq;     // ||(25/3)^{m/2} a'||^2
  SeriesValue<S> eta_lip;     // ||3^m eta||_Lip
  SeriesValue<S> eta_l2_sq;   // ||3^{m/2} eta||^2
  bool in_T_inf = false;
  bool in_T2 = false;
  S T_inf{};     // valid when in_T_inf
  S T2_sq{};     // valid when in_T2
  // Harmonic traces: the closed forms with A2 = (u1+u2-2u0)/2 (so the a_m
  // coefficient is (4/3) A2) and the skew part entering as |u1-u2|^2/8.
  std::optional<S> T_inf_closed;
  std::optional<S> T2_sq_closed;
};

template <Scalar S>
TraceNorms<S> trace_membership(const TracePair<S>& t);

// ---- restriction and extension ----------------------------------------------

// a_m = u(x_m), eta_m from the cell Y_m with its constant Laplacian.
template <Scalar S>
TracePair<S> restrict_trace(const PiecewiseFunction<S>& u, int M);

template <Scalar S>
TracePair<S> restrict_trace(const BVPSolution<S>& u, int M);

template <Scalar S>
struct Extension {
  PiecewiseFunction<S> u;  // cells Y_1..Y_M and Z_1..Z_M
  int M = 0;
  std::vector<S> C_Y;      // Laplacian on Y_m, m = 1..M
  std::vector<S> C_Z;      // Laplacian on Z_m
  S lap_sup{};             // max |C| over the window
  S lap_l2_sq{};           // sum (C_Y^2 + C_Z^2) / 3^m
  S lap_l2_sq_omega{};     // sum C_Y^2 / 3^m
  S lap_l2_sq_mirror{};    // sum C_Z^2 / 3^m
  bool in_domain = true;   // false when the trace is not in T_inf
};

// Piecewise biharmonic E t on Y_m, Z_m with R E t = t.
template <Scalar S>
Extension<S> extend_E(const TracePair<S>& t, int M);

// Keeps the cells Y_m of u and fills the mirror cells Z_m from the trace of u.
template <Scalar S>
Extension<S> extend_E_omega(const PiecewiseFunction<S>& u, int M, std::optional<S> a0 = {},
                            std::optional<S> eta0 = {});
template <Scalar S>
Extension<S> extend_E_omega(const BVPSolution<S>& u, int M, std::optional<S> a0 = {},
                            std::optional<S> eta0 = {});

// Mirror copies of the Y_m cells (the naive even extension).
template <Scalar S>
PiecewiseFunction<S> even_reflection(const BVPSolution<S>& u, int M);

template <Scalar S>
struct GluingEntry {
  Vertex v;
  S continuity;  // difference of the two cell values
  S matching;    // sum of the two outward fluxes
};

template <Scalar S>
struct GluingReport {
  std::vector<GluingEntry<S>> entries;
  S max_continuity{};
  S max_matching{};
  bool glued() const { return is_zero(max_continuity) && is_zero(max_matching); }
};

// Residuals at every vertex shared by exactly two cells.
template <Scalar S>
GluingReport<S> verify_gluing(const PiecewiseFunction<S>& u);

}  // namespace halfgasket
