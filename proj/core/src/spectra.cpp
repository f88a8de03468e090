#include "halfgasket/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "halfgasket/errors.hpp"
#include "halfgasket/gasket.hpp"

namespace halfgasket {

namespace {

constexpr int kMaxSpectrumLevel = 4;

long pow3(int k) {
  long p = 1;
  for (int i = 0; i < k; ++i) p *= 3;
  return p;
}

}  // namespace

std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::dirichlet:
      return "dirichlet";
    case BoundaryCondition::neumann:
      return "neumann";
    case BoundaryCondition::neumann_scaled:
      return "neumann-scaled";
  }
  return "?";
}

BoundaryCondition parse_bc(const std::string& s) {
  if (s == "dirichlet") return BoundaryCondition::dirichlet;
  if (s == "neumann") return BoundaryCondition::neumann;
  if (s == "neumann-scaled") return BoundaryCondition::neumann_scaled;
  throw validation_error("unknown boundary condition '" + s + "' (dirichlet|neumann|neumann-scaled)");
}

GraphOperator graph_operator(int m, BoundaryCondition bc) {
  if (m < 0) throw validation_error("level must be >= 0");
  if (m > kMaxSpectrumLevel) throw resource_limit_error("dense spectra are limited to level 4");
  if (m == 0 && bc == BoundaryCondition::dirichlet) throw domain_error("Gamma_0 has no interior vertices");
  const auto g = graph_at(m);
  GraphOperator op;
  op.level = m;
  op.bc = bc;
  std::vector<int> row_of(g->vertices.size(), -1);
  for (std::size_t i = 0; i < g->vertices.size(); ++i) {
    if (bc == BoundaryCondition::dirichlet && g->is_boundary(static_cast<int>(i))) continue;
    row_of[i] = static_cast<int>(op.vertices.size());
    op.vertices.push_back(static_cast<int>(i));
  }
  const std::size_t n = op.vertices.size();
  op.L.assign(n, std::vector<Rational>(n, Rational(0)));
  op.scale.assign(n, 1.0);
  for (std::size_t r = 0; r < n; ++r) {
    const int v = op.vertices[r];
    const auto& nb = g->neighbors[static_cast<std::size_t>(v)];
    const long s = (bc == BoundaryCondition::neumann_scaled && g->is_boundary(v)) ? 2 : 1;
    op.scale[r] = static_cast<double>(s);
    op.L[r][r] = Rational(static_cast<long>(nb.size()) * s);
    for (int w : nb) {
      const int c = row_of[static_cast<std::size_t>(w)];
      if (c >= 0) op.L[r][static_cast<std::size_t>(c)] -= Rational(s);
    }
    op.reflection.push_back(row_of[static_cast<std::size_t>(g->reflection[static_cast<std::size_t>(v)])]);
  }
  return op;
}

Spectrum graph_spectrum(int m, BoundaryCondition bc, double group_tol) {
  if (!(group_tol > 0 && group_tol < 1)) throw validation_error("grouping tolerance must be in (0, 1)");
  const auto op = graph_operator(m, bc);
  const std::size_t n = op.vertices.size();
  // S^{-1/2} L S^{1/2} is symmetric when L = S (D - A).
  Matrix<double> sym(n, std::vector<double>(n));
  double trace = 0;
  for (std::size_t i = 0; i < n; ++i) {
    trace += op.L[i][i].to_double();
    for (std::size_t j = 0; j < n; ++j)
      sym[i][j] = op.L[i][j].to_double() * std::sqrt(op.scale[j] / op.scale[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sym[i][j] = 0.5 * (sym[i][j] + sym[j][i]);
  auto eig = jacobi_eigen(sym);
  Spectrum sp;
  sp.level = m;
  sp.bc = bc;
  sp.values = eig.values;
  double sum = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += eig.values[k];
    // back to eigenvectors of L: v = S^{1/2} w, then normalised
    std::vector<double> v(n);
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = eig.vectors[k][i] * std::sqrt(op.scale[i]);
      norm += v[i] * v[i];
    }
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    double res = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = -eig.values[k] * v[i];
      for (std::size_t j = 0; j < n; ++j) r += op.L[i][j].to_double() * v[j];
      res += r * r;
    }
    sp.max_residual = std::max(sp.max_residual, std::sqrt(res));
    sp.vectors.push_back(std::move(v));
  }
  sp.trace_error = std::abs(sum - trace);

  for (std::size_t k = 0; k < n;) {
    std::size_t e = k + 1;
    while (e < n && std::abs(sp.values[e] - sp.values[k]) <= group_tol * std::max(1.0, std::abs(sp.values[k]))) ++e;
    EigenGroup grp;
    double mean = 0;
    for (std::size_t i = k; i < e; ++i) mean += sp.values[i];
    grp.value = mean / static_cast<double>(e - k);
    grp.multiplicity = static_cast<int>(e - k);
    // even part: rank of the symmetrised vectors
    Matrix<double> ev, od;
    for (std::size_t i = k; i < e; ++i) {
      std::vector<double> pe(n), po(n);
      for (std::size_t r = 0; r < n; ++r) {
        const double mirror = sp.vectors[i][static_cast<std::size_t>(op.reflection[r])];
        pe[r] = 0.5 * (sp.vectors[i][r] + mirror);
        po[r] = 0.5 * (sp.vectors[i][r] - mirror);
      }
      ev.push_back(std::move(pe));
      od.push_back(std::move(po));
    }
    grp.even = matrix_rank(ev, 1e-6);
    grp.odd = matrix_rank(od, 1e-6);
    const long rounded = std::lround(grp.value);
    if (std::abs(grp.value - static_cast<double>(rounded)) < 1e-6) {
      const auto ex = exact_count(op, rounded);
      if (ex.multiplicity == grp.multiplicity) {
        grp.exact_value = rounded;
        grp.even = ex.even;
        grp.odd = ex.odd;
      }
    }
    sp.groups.push_back(grp);
    k = e;
  }
  return sp;
}

ExactCount exact_count(const GraphOperator& op, long mu) {
  const std::size_t n = op.vertices.size();
  Matrix<Rational> A = op.L;
  for (std::size_t i = 0; i < n; ++i) A[i][i] -= Rational(mu);
  ExactCount c;
  c.mu = mu;
  c.multiplicity = static_cast<int>(n) - matrix_rank(A);
  for (int parity : {1, -1}) {
    Matrix<Rational> B = A;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> row(n, Rational(0));
      row[i] += Rational(1);
      row[static_cast<std::size_t>(op.reflection[i])] -= Rational(parity);
      B.push_back(std::move(row));
    }
    const int dim = static_cast<int>(n) - matrix_rank(B);
    (parity == 1 ? c.even : c.odd) = dim;
  }
  return c;
}

CountReport symmetry_counts(int m, BoundaryCondition bc, double group_tol) {
  CountReport r;
  r.spectrum = graph_spectrum(m, bc, group_tol);
  for (const auto& g : r.spectrum.groups) {
    r.even_total += g.even;
    r.odd_total += g.odd;
  }
  const int V = static_cast<int>(vertex_count(m));
  if (bc == BoundaryCondition::dirichlet) {
    r.even_expected = (V - 3 + m) / 2;
    r.odd_expected = (V - 3 - m) / 2;
  } else {
    r.even_expected = (V + m + 1) / 2;
    r.odd_expected = (V - m - 1) / 2;
  }
  r.totals_match = r.even_total == r.even_expected && r.odd_total == r.odd_expected;
  return r;
}

std::vector<CensusRow> series_census(int k_max) {
  if (k_max < 0 || k_max > 3) throw validation_error("census level must be in 0..3");
  std::vector<CensusRow> rows;
  auto finish = [&](CensusRow row) {
    row.match = row.N_formula == row.N_graph && row.D_formula == row.D_graph;
    rows.push_back(std::move(row));
  };
  const auto n0 = graph_operator(0, BoundaryCondition::neumann);
  {
    const auto c = exact_count(n0, 0);
    finish({0, 0, 1, 0, c.even, 0, false, "neumann level 0; no interior for dirichlet"});
  }
  {
    const auto c = exact_count(n0, 3);
    finish({3, 0, 1, 0, c.even, 0, false, "neumann level 0; no interior for dirichlet"});
  }
  for (int k = 1; k <= k_max; ++k) {
    const auto dir = graph_operator(k, BoundaryCondition::dirichlet);
    const auto neu = graph_operator(k, BoundaryCondition::neumann_scaled);
    const std::string src = "neumann-scaled and dirichlet level " + std::to_string(k);
    {
      const auto d = exact_count(dir, 2), n = exact_count(neu, 2);
      finish({2, k, 0, 0, n.even, d.odd, false, src});
    }
    {
      const long c = (pow3(k - 1) + 1) / 2;
      const auto d = exact_count(dir, 5), n = exact_count(neu, 5);
      finish({5, k, (c - k) / 2, (c + k) / 2, n.even, d.odd, false, src});
    }
    {
      const long c = (pow3(k) + 3) / 2, c2 = (pow3(k) - 3) / 2;
      const auto d = exact_count(dir, 6), n = exact_count(neu, 6);
      finish({6, k, (c + k) / 2, (c2 - k + 1) / 2, n.even, d.odd, false, src});
    }
  }
  return rows;
}

}  // namespace halfgasket
