#include "halfgasket/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "halfgasket/errors.hpp"
#include "halfgasket/sparse_solve.hpp"

namespace halfgasket {

namespace {

std::uint64_t cell_key(std::uint64_t code, int len) { return code * 32 + static_cast<std::uint64_t>(len); }

}  // namespace

template <Scalar S>
S midpoint_value(const Triple<S>& t, int a, int b) {
  const int c = 3 - a - b;
  return (S(2) * t[a] + S(2) * t[b] + t[c]) / S(5);
}

template <Scalar S>
Triple<S> child_triple(const Triple<S>& t, int digit, int level, const S& laplacian) {
  Triple<S> out;
  S drop(0);
  if (!is_zero(laplacian)) drop = laplacian / (S(15) * ipow(S(5), level));
  for (int j = 0; j < 3; ++j) out[j] = (j == digit) ? t[j] : midpoint_value(t, digit, j) - drop;
  return out;
}

template <Scalar S>
Triple<S> descend(Triple<S> t, const Word& path, int level, const S& laplacian) {
  for (int i = 0; i < path.size(); ++i) t = child_triple(t, path[i], level + i, laplacian);
  return t;
}

template <Scalar S>
PiecewiseFunction<S>::PiecewiseFunction(std::vector<Cell<S>> cells, bool zero_outside) : zero_outside_(zero_outside) {
  for (auto& c : cells) add(std::move(c));
}

template <Scalar S>
void PiecewiseFunction<S>::add(Cell<S> c) {
  auto key = cell_key(c.word.code(), c.word.size());
  if (index_.count(key)) throw validation_error("cell " + c.word.str() + " given twice");
  max_depth_ = std::max(max_depth_, c.word.size());
  index_[key] = static_cast<int>(cells_.size());
  cells_.push_back(std::move(c));
}

template <Scalar S>
int PiecewiseFunction<S>::find_cell(const Word& w) const {
  auto it = index_.find(cell_key(w.code(), w.size()));
  return it == index_.end() ? -1 : it->second;
}

template <Scalar S>
std::optional<S> PiecewiseFunction<S>::try_value(const Vertex& v) const {
  for (const auto& [w, j] : v.aliases()) {
    std::uint64_t code = 0;
    for (int len = 0; len <= max_depth_; ++len) {
      if (len > 0) code = code * 3 + (len <= w.size() ? w[len - 1] : static_cast<std::uint8_t>(j));
      auto it = index_.find(cell_key(code, len));
      if (it == index_.end()) continue;
      const auto& cell = cells_[static_cast<std::size_t>(it->second)];
      if (len >= w.size()) return cell.values[static_cast<std::size_t>(j)];
      Word rest;
      rest.digits.assign(w.digits.begin() + len, w.digits.end());
      return descend(cell.values, rest, len, cell.laplacian)[static_cast<std::size_t>(j)];
    }
  }
  return std::nullopt;
}

template <Scalar S>
S PiecewiseFunction<S>::value_at(const Vertex& v) const {
  if (auto x = try_value(v)) return *x;
  if (zero_outside_) return S(0);
  throw domain_error("vertex " + v.str() + " lies outside the cells of this function");
}

template <Scalar S>
S PiecewiseFunction<S>::integral() const {
  S total(0);
  for (const auto& c : cells_) {
    const int L = c.word.size();
    S mean = (c.values[0] + c.values[1] + c.values[2]) / S(3);
    // The zero-boundary solution of -Delta w = 1 integrates to 1/18.
    if (!is_zero(c.laplacian)) mean -= c.laplacian / (S(18) * ipow(S(5), L));
    total += mean / ipow(S(3), L);
  }
  return total;
}

template <Scalar S>
S PiecewiseFunction<S>::laplacian_l2_squared() const {
  S total(0);
  for (const auto& c : cells_) total += c.laplacian * c.laplacian / ipow(S(3), c.word.size());
  return total;
}

template <Scalar S>
S PiecewiseFunction<S>::harmonic_energy() const {
  S total(0);
  for (const auto& c : cells_) {
    const auto& t = c.values;
    S e = (t[0] - t[1]) * (t[0] - t[1]) + (t[1] - t[2]) * (t[1] - t[2]) + (t[0] - t[2]) * (t[0] - t[2]);
    total += e * ipow(frac<S>(5, 3), c.word.size());
  }
  return total;
}

template <Scalar S>
S PiecewiseFunction<S>::normal_derivative(std::size_t c, int corner) const {
  const auto& cell = cells_.at(c);
  return normal_derivative_cell(cell.values, corner, cell.word.size(), cell.laplacian);
}

template <Scalar S>
HarmonicFn<S> harmonic_extend(const Triple<S>& boundary, int depth) {
  check_level(depth, "harmonic_extend");
  std::vector<Triple<S>> layer{boundary};
  for (int k = 0; k < depth; ++k) {
    std::vector<Triple<S>> next;
    next.reserve(layer.size() * 3);
    for (const auto& t : layer)
      for (int d = 0; d < 3; ++d) next.push_back(child_triple(t, d, k));
    layer = std::move(next);
  }
  std::vector<Cell<S>> cells;
  cells.reserve(layer.size());
  for (std::size_t c = 0; c < layer.size(); ++c) cells.push_back(Cell<S>{Word::from_code(c, depth), layer[c], S(0)});
  return HarmonicFn<S>(std::move(cells));
}

template <Scalar S>
S VertexFn<S>::at(const Vertex& v) const {
  int i = graph->index_of(v);
  if (i < 0) throw domain_error("vertex " + v.str() + " is not in V_" + std::to_string(graph->level));
  return values[static_cast<std::size_t>(i)];
}

template <Scalar S>
VertexFn<S> sample(const std::function<S(const Vertex&)>& f, int m) {
  VertexFn<S> u{graph_at(m), {}};
  u.values.reserve(u.graph->vertices.size());
  for (const auto& v : u.graph->vertices) u.values.push_back(f(v));
  return u;
}

template <Scalar S>
S energy(const VertexFn<S>& u) {
  S total(0);
  for (auto [a, b] : u.graph->edges) {
    S d = u.values[static_cast<std::size_t>(a)] - u.values[static_cast<std::size_t>(b)];
    total += d * d;
  }
  return total * ipow(frac<S>(5, 3), u.level());
}

template <Scalar S>
VertexFn<S> graph_laplacian(const VertexFn<S>& u, bool renormalize) {
  VertexFn<S> out{u.graph, std::vector<S>(u.values.size(), S(0))};
  const S scale = renormalize ? frac<S>(3, 2) * ipow(S(5), u.level()) : S(1);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    if (u.graph->is_boundary(static_cast<int>(i))) continue;
    S acc(0);
    for (int y : u.graph->neighbors[i]) acc += u.values[static_cast<std::size_t>(y)] - u.values[i];
    out.values[i] = acc * scale;
  }
  return out;
}

template <Scalar S>
S normal_derivative_cell(const Triple<S>& t, int corner, int level, const S& laplacian) {
  if (corner < 0 || corner > 2) throw validation_error("corner must be 0, 1 or 2");
  const int a = (corner + 1) % 3, b = (corner + 2) % 3;
  S d = ipow(frac<S>(5, 3), level) * (S(2) * t[corner] - t[a] - t[b]);
  if (!is_zero(laplacian)) d += laplacian / ipow(S(3), level + 1);
  return d;
}

template <Scalar S>
LimitResult<S> normal_derivative_limit(const std::function<S(const Vertex&)>& f, const Word& cell, int corner,
                                       const LimitOptions& opt) {
  if (corner < 0 || corner > 2) throw validation_error("corner must be 0, 1 or 2");
  if (opt.window < 2) throw validation_error("limit window must be at least 2");
  LimitResult<S> out;
  std::vector<S> seq;
  Word w = cell;
  const int top = std::min(opt.max_level, 30);
  for (int level = cell.size(); level <= top; ++level) {
    const Vertex p(w, corner), a(w, (corner + 1) % 3), b(w, (corner + 2) % 3);
    S d = ipow(frac<S>(5, 3), level) * (S(2) * f(p) - f(a) - f(b));
    seq.push_back(d);
    out.sequence.push_back(to_double(d));
    if (static_cast<int>(seq.size()) >= opt.window) {
      const double last = to_double(seq.back());
      bool settled = true;
      for (std::size_t i = seq.size() - static_cast<std::size_t>(opt.window); i < seq.size(); ++i)
        if (std::fabs(to_double(seq[i]) - last) > opt.tol * std::max(1.0, std::fabs(last))) settled = false;
      if (settled) {
        out.value = seq.back();
        out.converged = true;
        return out;
      }
    }
    if (level < top) w = w.child(corner);
  }
  throw convergence_error("normal derivative difference quotients did not settle", out.sequence);
}

template <Scalar S>
std::vector<S> solve_graph_dirichlet(const LevelGraph& g, const std::vector<char>& region,
                                     const std::unordered_map<int, S>& pinned, const std::vector<S>* load) {
  const std::size_t n = g.vertices.size();
  if (region.size() != n) throw validation_error("region mask has the wrong size");
  std::vector<int> local(n, -1), free;
  for (std::size_t i = 0; i < n; ++i)
    if (region[i] && !pinned.count(static_cast<int>(i))) {
      local[i] = static_cast<int>(free.size());
      free.push_back(static_cast<int>(i));
    }
  SparseSystem<S> sys(static_cast<int>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const int x = free[k];
    const auto& nb = g.neighbors[static_cast<std::size_t>(x)];
    sys.add(static_cast<int>(k), static_cast<int>(k), S(static_cast<long>(nb.size())));
    for (int y : nb) {
      if (!region[static_cast<std::size_t>(y)]) throw domain_error("free vertex has a neighbour outside the region");
      if (auto it = pinned.find(y); it != pinned.end()) sys.add_rhs(static_cast<int>(k), it->second);
      else sys.add(static_cast<int>(k), local[static_cast<std::size_t>(y)], S(-1));
    }
    if (load) sys.add_rhs(static_cast<int>(k), (*load)[static_cast<std::size_t>(x)]);
  }
  std::vector<int> order(free.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return g.vertices[static_cast<std::size_t>(free[static_cast<std::size_t>(a)])].level() >
           g.vertices[static_cast<std::size_t>(free[static_cast<std::size_t>(b)])].level();
  });
  auto x = sys.solve(order);
  std::vector<S> out(n, S(0));
  for (const auto& [i, v] : pinned) out[static_cast<std::size_t>(i)] = v;
  for (std::size_t k = 0; k < free.size(); ++k) out[static_cast<std::size_t>(free[k])] = x[k];
  return out;
}

#define HG_INSTANTIATE(S)                                                                                    \
  template S midpoint_value<S>(const Triple<S>&, int, int);                                                  \
  template Triple<S> child_triple<S>(const Triple<S>&, int, int, const S&);                                 \
  template Triple<S> descend<S>(Triple<S>, const Word&, int, const S&);                                     \
  template class PiecewiseFunction<S>;                                                                       \
  template HarmonicFn<S> harmonic_extend<S>(const Triple<S>&, int);                                         \
  template struct VertexFn<S>;                                                                               \
  template VertexFn<S> sample<S>(const std::function<S(const Vertex&)>&, int);                              \
  template S energy<S>(const VertexFn<S>&);                                                                  \
  template VertexFn<S> graph_laplacian<S>(const VertexFn<S>&, bool);                                        \
  template S normal_derivative_cell<S>(const Triple<S>&, int, int, const S&);                               \
  template LimitResult<S> normal_derivative_limit<S>(const std::function<S(const Vertex&)>&, const Word&, int, \
                                                     const LimitOptions&);                                   \
  template std::vector<S> solve_graph_dirichlet<S>(const LevelGraph&, const std::vector<char>&,             \
                                                   const std::unordered_map<int, S>&, const std::vector<S>*);

HG_INSTANTIATE(Rational)
HG_INSTANTIATE(double)

}  // namespace halfgasket
