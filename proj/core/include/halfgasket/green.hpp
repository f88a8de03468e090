#pragma once

#include <vector>

#include "halfgasket/harmonic.hpp"

namespace halfgasket {

enum class Domain { sg, omega };

// Piecewise-constant function, one value per level-L cell (base-3 order of
// the cell words). On Omega only cells in the closed left half are read; the
// rest is the odd reflection.
template <Scalar S>
struct CellField {
  int level = 0;
  std::vector<S> values;

  static CellField constant(const S& c) { return CellField{0, {c}}; }
  // Indicator of the cell w.
  static CellField indicator(const Word& w);
  S at(const Word& cell) const;  // cell level must be >= level
};

// psi_s^k evaluated at x; s must lie in V_k \ V_{k-1}.
template <Scalar S>
S spline_value(const Vertex& s, int k, const Vertex& x);

// a psi_{x_m} + b psi_{y_m} + c psi_{z_m}
template <Scalar S>
struct PsiCombo {
  int m = 1;
  S a{}, b{}, c{};
  S operator()(const Vertex& y) const;
  // (|a|+|b|+|c|) 2/3^{m+1}, an upper bound for the L^1 norm
  S l1_bound() const;
  S integral() const;  // (a+b+c) 2/3^{m+1}
};

enum class GreenMode { series, closed_x, closed_z };

// G_M(x, y) = sum_{k<=M} sum_{s,s'} g(s,s') psi_s^k(x) psi_{s'}^k(y). For
// vertices the series is exact once M >= min(level x, level y).
template <Scalar S>
S green_series(const Vertex& x, const Vertex& y, int M);

// Closed forms of G(x_m, .) and G(z_m, .).
template <Scalar S>
S green_closed_x(int m, const Vertex& y);
template <Scalar S>
S green_closed_z(int m, const Vertex& y);

// Closed modes take x = x_m or x = z_m and ignore M.
template <Scalar S>
S green_eval(const Vertex& x, const Vertex& y, GreenMode mode, int M = 12);

// G(x, y) - G(x, R y) for x, y in the closed left half.
template <Scalar S>
S green_omega(const Vertex& x, const Vertex& y, int M = 12);

// Truncation estimate C (3/5)^M with C fitted from the last two increments.
template <Scalar S>
struct GreenSeriesReport {
  std::vector<S> partial;  // G_1 .. G_M
  double error_bound = 0;
};
template <Scalar S>
GreenSeriesReport<S> green_series_report(const Vertex& x, const Vertex& y, int M);

// int f psi_s^k over SG (or over the odd extension of f for Omega).
template <Scalar S>
S spline_integral(const Vertex& s, int k, const CellField<S>& f, Domain d);

// u = int G f on V_M, zero on the Dirichlet boundary. On Omega the values on
// the mirror half are the odd reflection.
template <Scalar S>
VertexFn<S> solve_poisson(const CellField<S>& f, int M, Domain d);

// Independent check: sum_{y~x}(u(x)-u(y)) = (3/5)^M int f psi_x^M at free
// vertices, solved on the graph.
template <Scalar S>
VertexFn<S> poisson_graph_oracle(const CellField<S>& f, int M, Domain d);

// Flux at x_m, outward from Y_m, of the function vanishing on V_0 with
// Laplacian `lap`, through the Green's function.
template <Scalar S>
S flux_via_green(const CellField<S>& lap, int m, Domain d = Domain::sg);

// Same for a cellwise function; rejects functions not vanishing on V_0 and
// cells of unequal level.
template <Scalar S>
S flux_via_green(const PiecewiseFunction<S>& u, int m);

// Exact flux of the Poisson solution from its values on V_m.
template <Scalar S>
S poisson_flux_direct(const CellField<S>& f, int m, Domain d = Domain::sg);

}  // namespace halfgasket
