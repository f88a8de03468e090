#include "halfgasket/green.hpp"

#include <cmath>
#include <unordered_map>

#include "halfgasket/errors.hpp"

namespace halfgasket {

namespace {

int first_nonzero(const Word& w) {
  for (auto d : w.digits)
    if (d != 0) return d;
  return 0;
}

template <Scalar S>
Triple<S> delta(int j) {
  Triple<S> t{S(0), S(0), S(0)};
  t[static_cast<std::size_t>(j)] = S(1);
  return t;
}

// New points of the level-(k-1) cell w, in the order (y-like, z-like, x-like)
// relative to the cell: midpoints q0q1, q0q2, q1q2.
std::array<Vertex, 3> new_points(const Word& w) {
  return {Vertex(w.child(1), 0), Vertex(w.child(2), 0), Vertex(w.child(2), 1)};
}

// int over the level-N cell C of f (odd-extended on Omega) times the harmonic
// function with corner values t.
template <Scalar S>
S cell_integral(const Triple<S>& t, const Word& C, const CellField<S>& f, Domain d) {
  const int N = C.size();
  const S measure = ipow(S(3), -N);
  if (d == Domain::omega) {
    switch (first_nonzero(C)) {
      case 0:
        return measure * f.at(C) / S(7) * (t[1] - t[2]);
      case 2:
        return -f.at(reflect(C)) * measure * (t[0] + t[1] + t[2]) / S(3);
      default:
        break;
    }
  }
  return f.at(C) * measure * (t[0] + t[1] + t[2]) / S(3);
}

template <Scalar S>
S integrate_down(const Triple<S>& t, const Word& w, int N, const CellField<S>& f, Domain d) {
  if (w.size() >= N) return cell_integral(t, w, f, d);
  if (is_zero(t[0]) && is_zero(t[1]) && is_zero(t[2])) return S(0);
  S acc(0);
  for (int digit = 0; digit < 3; ++digit)
    acc += integrate_down(child_triple(t, digit), w.child(digit), N, f, d);
  return acc;
}

void check_special(const Vertex& s, int k) {
  if (k < 1 || s.level() != k) throw validation_error("spline point " + s.str() + " is not in V_" + std::to_string(k) + " \\ V_" + std::to_string(k - 1));
}

template <Scalar S>
void check_field(const CellField<S>& f) {
  if (f.level < 0) throw validation_error("negative source level");
  check_level(f.level, "source field");
  const auto want = static_cast<std::size_t>(std::llround(std::pow(3.0, f.level)));
  if (f.values.size() != want)
    throw validation_error("source at level " + std::to_string(f.level) + " needs " + std::to_string(want) + " values");
}

}  // namespace

template <Scalar S>
CellField<S> CellField<S>::indicator(const Word& w) {
  CellField<S> f;
  f.level = w.size();
  f.values.assign(static_cast<std::size_t>(std::llround(std::pow(3.0, f.level))), S(0));
  f.values[static_cast<std::size_t>(w.code())] = S(1);
  return f;
}

template <Scalar S>
S CellField<S>::at(const Word& cell) const {
  if (cell.size() < level) throw validation_error("cell coarser than the source field");
  return values.at(static_cast<std::size_t>(cell.prefix(level).code()));
}

template <Scalar S>
S spline_value(const Vertex& s, int k, const Vertex& x) {
  check_special(s, k);
  if (x.level() <= k) return x == s ? S(1) : S(0);
  const Word D = x.word.prefix(k);
  Triple<S> t{S(0), S(0), S(0)};
  bool any = false;
  for (int j = 0; j < 3; ++j)
    if (Vertex(D, j) == s) {
      t[static_cast<std::size_t>(j)] = S(1);
      any = true;
    }
  if (!any) return S(0);
  std::vector<std::uint8_t> rest(x.word.digits.begin() + k, x.word.digits.end());
  return descend(t, Word(std::move(rest)))[static_cast<std::size_t>(x.corner)];
}

template <Scalar S>
S PsiCombo<S>::operator()(const Vertex& y) const {
  S v(0);
  if (!is_zero(a)) v += a * spline_value<S>(x_point(m), m, y);
  if (!is_zero(b)) v += b * spline_value<S>(y_point(m), m, y);
  if (!is_zero(c)) v += c * spline_value<S>(z_point(m), m, y);
  return v;
}

template <Scalar S>
S PsiCombo<S>::l1_bound() const {
  return (abs(a) + abs(b) + abs(c)) * S(2) / ipow(S(3), m + 1);
}

template <Scalar S>
S PsiCombo<S>::integral() const {
  return (a + b + c) * S(2) / ipow(S(3), m + 1);
}

template <Scalar S>
S green_series(const Vertex& x, const Vertex& y, int M) {
  if (M < 0) throw validation_error("series level must be >= 0");
  const int K = std::min({M, x.level(), y.level()});
  S acc(0);
  for (int k = 1; k <= K; ++k) {
    const Word w = x.word.prefix(k - 1);
    if (y.word.prefix(k - 1) != w) break;  // cells only get smaller
    const auto pts = new_points(w);
    S sx(0), sy(0), dot(0);
    for (const auto& s : pts) {
      const S px = spline_value<S>(s, k, x), py = spline_value<S>(s, k, y);
      sx += px;
      sy += py;
      dot += px * py;
    }
    acc += ipow(frac<S>(3, 5), k) / S(10) * (S(2) * dot + sx * sy);
  }
  return acc;
}

template <Scalar S>
S green_closed_x(int m, const Vertex& y) {
  if (m < 1) throw validation_error("x_m needs m >= 1");
  S sum(0);
  for (int k = 1; k <= m; ++k) sum += PsiCombo<S>{k, S(1), S(2), S(2)}(y);
  const S w = ipow(frac<S>(3, 5), m);
  return frac<S>(2, 15) * w * sum + w / S(6) * PsiCombo<S>{m, S(1), S(-1), S(-1)}(y);
}

template <Scalar S>
S green_closed_z(int m, const Vertex& y) {
  if (m < 1) throw validation_error("z_m needs m >= 1");
  S sum(0), skew(0);
  for (int k = 1; k <= m; ++k) {
    sum += PsiCombo<S>{k, S(1), S(2), S(2)}(y);
    skew += ipow(S(3), k) * PsiCombo<S>{k, S(0), S(-1), S(1)}(y);
  }
  return ipow(frac<S>(3, 5), m) / S(10) * sum + skew / (S(10) * ipow(S(5), m));
}

template <Scalar S>
S green_eval(const Vertex& x, const Vertex& y, GreenMode mode, int M) {
  switch (mode) {
    case GreenMode::series:
      check_level(M, "green series");
      return green_series<S>(x, y, M);
    case GreenMode::closed_x:
      for (int m = 1; m <= max_level() && m <= 30; ++m)
        if (x == x_point(m)) return green_closed_x<S>(m, y);
      throw domain_error("closed-x mode needs x = x_m, got " + x.str());
    case GreenMode::closed_z:
      for (int m = 1; m <= max_level() && m <= 30; ++m)
        if (x == z_point(m)) return green_closed_z<S>(m, y);
      throw domain_error("closed-z mode needs x = z_m, got " + x.str());
  }
  throw internal_error("unknown green mode");
}

template <Scalar S>
S green_omega(const Vertex& x, const Vertex& y, int M) {
  if (side_of(x) == Side::mirror || side_of(y) == Side::mirror)
    throw domain_error("green_omega arguments must lie in the closed left half");
  return green_series<S>(x, y, M) - green_series<S>(x, reflect(y), M);
}

template <Scalar S>
GreenSeriesReport<S> green_series_report(const Vertex& x, const Vertex& y, int M) {
  if (M < 1) throw validation_error("series level must be >= 1");
  check_level(M, "green series");
  GreenSeriesReport<S> r;
  for (int k = 1; k <= M; ++k) r.partial.push_back(green_series<S>(x, y, k));
  if (M >= 2) {
    const double q = 0.6;
    const double d1 = std::abs(to_double(r.partial[M - 1] - r.partial[M - 2]));
    const double d0 = M >= 3 ? std::abs(to_double(r.partial[M - 2] - r.partial[M - 3])) : d1 / q;
    const double C = std::max(d1 / std::pow(q, M), d0 / std::pow(q, M - 1));
    r.error_bound = C * std::pow(q, M);
  }
  return r;
}

template <Scalar S>
S spline_integral(const Vertex& s, int k, const CellField<S>& f, Domain d) {
  check_special(s, k);
  const int N = std::max(f.level, k);
  S acc(0);
  for (const auto& [w, j] : s.aliases()) {
    if (w.size() != k) continue;
    acc += integrate_down(delta<S>(j), w, N, f, d);
  }
  return acc;
}

template <Scalar S>
VertexFn<S> solve_poisson(const CellField<S>& f, int M, Domain d) {
  check_field(f);
  check_level(M, "solve_poisson");
  VertexFn<S> u{graph_at(M), {}};
  const auto& g = *u.graph;
  u.values.assign(g.vertices.size(), S(0));
  std::unordered_map<std::uint64_t, S> cache;
  auto I = [&](const Vertex& s, int k) -> const S& {
    auto [it, fresh] = cache.try_emplace(s.key());
    if (fresh) it->second = spline_integral(s, k, f, d);
    return it->second;
  };
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const Vertex& x = g.vertices[i];
    if (d == Domain::omega && g.sides[i] == Side::mirror) continue;
    S acc(0);
    for (int k = 1; k <= x.level(); ++k) {
      const auto pts = new_points(x.word.prefix(k - 1));
      std::array<S, 3> phi;
      S total(0);
      for (std::size_t p = 0; p < 3; ++p) {
        phi[p] = spline_value<S>(pts[p], k, x);
        total += phi[p];
      }
      const S scale = ipow(frac<S>(3, 5), k) / S(10);
      for (std::size_t p = 0; p < 3; ++p) {
        const S coef = scale * (S(2) * phi[p] + total);
        if (!is_zero(coef)) acc += coef * I(pts[p], k);
      }
    }
    u.values[i] = acc;
  }
  if (d == Domain::omega)
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (g.sides[i] == Side::mirror) u.values[i] = -u.values[static_cast<std::size_t>(g.reflection[i])];
  return u;
}

template <Scalar S>
VertexFn<S> poisson_graph_oracle(const CellField<S>& f, int M, Domain d) {
  check_field(f);
  if (M < 1) throw validation_error("oracle needs M >= 1");
  check_level(M, "poisson oracle");
  VertexFn<S> u{graph_at(M), {}};
  const auto& g = *u.graph;
  const int N = std::max(M, f.level);
  std::vector<S> load(g.vertices.size(), S(0));
  const S w = ipow(frac<S>(3, 5), M);
  for (std::size_t c = 0; c < g.cells.size(); ++c) {
    const Word C = g.cell_word(c);
    for (int j = 0; j < 3; ++j)
      load[static_cast<std::size_t>(g.cells[c][static_cast<std::size_t>(j)])] += w * integrate_down(delta<S>(j), C, N, f, d);
  }
  // On Omega the load is odd, so a solve on all of SG is the odd solution;
  // the top cell straddles the axis and rules out a half-graph solve.
  std::vector<char> region(g.vertices.size(), 1);
  std::unordered_map<int, S> pinned;
  for (int j = 0; j < 3; ++j) pinned[g.index_of(corner_point(j))] = S(0);
  u.values = solve_graph_dirichlet<S>(g, region, pinned, &load);
  return u;
}

template <Scalar S>
S flux_via_green(const CellField<S>& lap, int m, Domain d) {
  check_field(lap);
  if (m < 1) throw validation_error("x_m needs m >= 1");
  check_level(std::max(m, lap.level), "flux_via_green");
  auto psi_int = [&](int k, const S& a, const S& b, const S& c) {
    S v(0);
    if (!is_zero(a)) v += a * spline_integral(x_point(k), k, lap, d);
    if (!is_zero(b)) v += b * spline_integral(y_point(k), k, lap, d);
    if (!is_zero(c)) v += c * spline_integral(z_point(k), k, lap, d);
    return v;
  };
  S sum(0);
  for (int k = 1; k <= m; ++k) sum += ipow(S(3), k) * psi_int(k, S(0), S(-1), S(1));
  const Word Z = Word::zeros(m - 1, {2});
  const S phi = integrate_down(delta<S>(1), Z, std::max(m, lap.level), lap, d);
  // (5/3)^m [2u(x_m) - u(z_m) - u(z_{m-1})] through the closed forms of
  // G(x_m,.) and G(z_m,.); the Z_m side flux adds phi, and matching flips it.
  const S bracket = frac<S>(3, 5) * sum / ipow(S(3), m) - psi_int(m, S(1), S(-1), S(1)) / S(2);
  return -bracket - phi;
}

template <Scalar S>
S flux_via_green(const PiecewiseFunction<S>& u, int m) {
  for (int j = 0; j < 3; ++j)
    if (!is_zero(u.value_at(corner_point(j))))
      throw validation_error("flux_via_green needs a function vanishing on V_0");
  const auto& cells = u.cells();
  if (cells.empty()) throw validation_error("empty function");
  const int L = cells.front().word.size();
  CellField<S> lap;
  lap.level = L;
  lap.values.assign(static_cast<std::size_t>(std::llround(std::pow(3.0, L))), S(0));
  std::vector<char> seen(lap.values.size(), 0);
  for (const auto& c : cells) {
    if (c.word.size() != L) throw validation_error("flux_via_green needs cells of one level");
    lap.values[static_cast<std::size_t>(c.word.code())] = c.laplacian;
    seen[static_cast<std::size_t>(c.word.code())] = 1;
  }
  for (char s : seen)
    if (!s) throw validation_error("flux_via_green needs every cell of the level");
  return flux_via_green(lap, m, Domain::sg);
}

template <Scalar S>
S poisson_flux_direct(const CellField<S>& f, int m, Domain d) {
  check_field(f);
  if (m < 1) throw validation_error("x_m needs m >= 1");
  const auto u = solve_poisson(f, m, d);
  const Triple<S> t{u.at(y_point(m)), u.at(y_point(m - 1)), u.at(x_point(m))};
  const Word Y = Word::zeros(m - 1, {1});
  const S lap_part = -integrate_down(delta<S>(2), Y, std::max(m, f.level), f, d);
  return normal_derivative_cell(t, 2, m) + lap_part;
}

#define HG_INSTANTIATE(S)                                                               \
  template struct CellField<S>;                                                         \
  template struct PsiCombo<S>;                                                          \
  template S spline_value<S>(const Vertex&, int, const Vertex&);                        \
  template S green_series<S>(const Vertex&, const Vertex&, int);                        \
  template S green_closed_x<S>(int, const Vertex&);                                     \
  template S green_closed_z<S>(int, const Vertex&);                                     \
  template S green_eval<S>(const Vertex&, const Vertex&, GreenMode, int);               \
  template S green_omega<S>(const Vertex&, const Vertex&, int);                         \
  template GreenSeriesReport<S> green_series_report<S>(const Vertex&, const Vertex&, int); \
  template S spline_integral<S>(const Vertex&, int, const CellField<S>&, Domain);       \
  template VertexFn<S> solve_poisson<S>(const CellField<S>&, int, Domain);              \
  template VertexFn<S> poisson_graph_oracle<S>(const CellField<S>&, int, Domain);       \
  template S flux_via_green<S>(const CellField<S>&, int, Domain);                       \
  template S flux_via_green<S>(const PiecewiseFunction<S>&, int);                       \
  template S poisson_flux_direct<S>(const CellField<S>&, int, Domain);

HG_INSTANTIATE(Rational)
HG_INSTANTIATE(double)

}  // namespace halfgasket
