#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "halfgasket/gasket.hpp"
#include "halfgasket/scalar.hpp"

namespace halfgasket {

// Values at the three corners of a cell, in q_0, q_1, q_2 order.
template <Scalar S>
using Triple = std::array<S, 3>;

// Harmonic value at the midpoint between corners a and b:
// (2u(a) + 2u(b) + u(c)) / 5.
template <Scalar S>
S midpoint_value(const Triple<S>& t, int a, int b);

// Corner values of child F_digit of a level-`level` cell. A constant
// Laplacian C lowers each new midpoint by C / (15 * 5^level).
template <Scalar S>
Triple<S> child_triple(const Triple<S>& t, int digit, int level = 0, const S& laplacian = S(0));

template <Scalar S>
Triple<S> descend(Triple<S> t, const Word& path, int level = 0, const S& laplacian = S(0));

template <Scalar S>
struct Cell {
  Word word;
  Triple<S> values;
  S laplacian{};  // constant Delta u on the cell
};

// Finitely many cells, each harmonic or with constant Laplacian. Harmonic
// extensions, splines and glued biharmonic functions all use this form.
template <Scalar S>
class PiecewiseFunction {
 public:
  PiecewiseFunction() = default;
  explicit PiecewiseFunction(std::vector<Cell<S>> cells, bool zero_outside = false);

  void add(Cell<S> c);
  const std::vector<Cell<S>>& cells() const { return cells_; }
  bool zero_outside() const { return zero_outside_; }
  int find_cell(const Word& w) const;

  // Value through the cell holding v (any alias); empty if none does.
  std::optional<S> try_value(const Vertex& v) const;
  // domain_error outside the cells unless the function is declared zero there.
  S value_at(const Vertex& v) const;

  S integral() const;
  S laplacian_l2_squared() const;
  // Sum over cells of (5/3)^|w| times the squared corner differences; only
  // the energy when every cell is harmonic.
  S harmonic_energy() const;
  // Outward normal derivative of cell c at its corner j.
  S normal_derivative(std::size_t c, int corner) const;

 private:
  std::vector<Cell<S>> cells_;
  std::unordered_map<std::uint64_t, int> index_;
  int max_depth_ = 0;
  bool zero_outside_ = false;
};

template <Scalar S>
using HarmonicFn = PiecewiseFunction<S>;

// Harmonic extension of the V_0 values to all level-`depth` cells.
template <Scalar S>
HarmonicFn<S> harmonic_extend(const Triple<S>& boundary, int depth);

template <Scalar S>
struct VertexFn {
  std::shared_ptr<const LevelGraph> graph;
  std::vector<S> values;

  int level() const { return graph->level; }
  S at(const Vertex& v) const;
};

template <Scalar S>
VertexFn<S> sample(const std::function<S(const Vertex&)>& f, int m);

// E_m(u) = (5/3)^m sum over edges of (u(x) - u(y))^2
template <Scalar S>
S energy(const VertexFn<S>& u);

// sum_{y~x} (u(y) - u(x)) at non-boundary vertices, times (3/2) 5^m when
// renormalised. Entries at V_0 are left at zero.
template <Scalar S>
VertexFn<S> graph_laplacian(const VertexFn<S>& u, bool renormalize);

// (5/3)^m [2u(p) - u(p') - u(p'')] + C / 3^{m+1} on a level-m cell.
template <Scalar S>
S normal_derivative_cell(const Triple<S>& t, int corner, int level, const S& laplacian = S(0));

struct LimitOptions {
  int window = 8;
  double tol = 1e-9;
  int max_level = 24;
};

template <Scalar S>
struct LimitResult {
  S value{};
  bool converged = false;
  std::vector<double> sequence;
};

// Normal derivative at corner `corner` of cell `cell`, as the limit of the
// level-k difference quotients of f. Throws convergence_error when the
// window never settles.
template <Scalar S>
LimitResult<S> normal_derivative_limit(const std::function<S(const Vertex&)>& f, const Word& cell, int corner,
                                       const LimitOptions& opt = {});

// Solve sum_{y~x} (u(x) - u(y)) = load(x) at every free vertex of `region`,
// with `pinned` values held fixed. Free vertices must have all neighbours in
// the region. Returns values for every graph vertex (zero outside region).
template <Scalar S>
std::vector<S> solve_graph_dirichlet(const LevelGraph& g, const std::vector<char>& region,
                                     const std::unordered_map<int, S>& pinned, const std::vector<S>* load = nullptr);

}  // namespace halfgasket
