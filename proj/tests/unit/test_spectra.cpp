#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "halfgasket/errors.hpp"
#include "halfgasket/gasket.hpp"
#include "halfgasket/spectra.hpp"

using namespace halfgasket;

namespace {

std::vector<double> eigen_values(int m, bool dirichlet) {
  const auto g = graph_at(m);
  std::vector<int> pos(g->vertices.size(), -1);
  int n = 0;
  for (std::size_t i = 0; i < g->vertices.size(); ++i)
    if (!dirichlet || !g->is_boundary(static_cast<int>(i))) pos[i] = n++;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < g->vertices.size(); ++i) {
    if (pos[i] < 0) continue;
    for (int w : g->neighbors[i]) {
      L(pos[i], pos[i]) += 1;
      if (pos[static_cast<std::size_t>(w)] >= 0) L(pos[i], pos[static_cast<std::size_t>(w)]) -= 1;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

}  // namespace

TEST_CASE("small spectra") {
  const auto d1 = graph_spectrum(1, BoundaryCondition::dirichlet);
  REQUIRE(d1.values.size() == 3);
  CHECK(d1.values[0] == doctest::Approx(2));
  CHECK(d1.values[1] == doctest::Approx(5));
  CHECK(d1.values[2] == doctest::Approx(5));
  const auto n0 = graph_spectrum(0, BoundaryCondition::neumann);
  CHECK(n0.values[0] == doctest::Approx(0).epsilon(1e-12));
  CHECK(n0.values[1] == doctest::Approx(3));
  CHECK(n0.values[2] == doctest::Approx(3));
  const auto d2 = graph_spectrum(2, BoundaryCondition::dirichlet);
  bool found = false;
  for (const auto& g : d2.groups)
    if (g.exact_value && *g.exact_value == 5) {
      found = true;
      CHECK(g.multiplicity == 3);
      CHECK(g.odd == 2);
      CHECK(g.even == 1);
    }
  CHECK(found);
}

TEST_CASE("Jacobi agrees with an independent eigensolver") {
  for (int m = 1; m <= 3; ++m)
    for (bool dir : {true, false}) {
      const auto sp = graph_spectrum(m, dir ? BoundaryCondition::dirichlet : BoundaryCondition::neumann);
      const auto ref = eigen_values(m, dir);
      REQUIRE(ref.size() == sp.values.size());
      for (std::size_t i = 0; i < ref.size(); ++i) CHECK(sp.values[i] == doctest::Approx(ref[i]).epsilon(1e-10));
      CHECK(sp.max_residual < 1e-9);
      CHECK(sp.trace_error < 1e-9);
    }
}

TEST_CASE("even and odd totals") {
  for (int m = 0; m <= 4; ++m)
    for (auto bc : {BoundaryCondition::dirichlet, BoundaryCondition::neumann, BoundaryCondition::neumann_scaled}) {
      if (m == 0 && bc == BoundaryCondition::dirichlet) continue;
      const auto r = symmetry_counts(m, bc);
      CHECK(r.totals_match);
      int mult = 0;
      for (const auto& g : r.spectrum.groups) {
        CHECK(g.even + g.odd == g.multiplicity);
        mult += g.multiplicity;
      }
      CHECK(static_cast<std::size_t>(mult) == r.spectrum.values.size());
    }
}

TEST_CASE("exact multiplicities") {
  const auto op = graph_operator(3, BoundaryCondition::dirichlet);
  const auto five = exact_count(op, 5);
  CHECK(five.multiplicity == 6);  // (3^{m-1}+3)/2
  CHECK(five.odd == 4);
  const auto none = exact_count(op, 7);
  CHECK(none.multiplicity == 0);
}

TEST_CASE("series census matches the closed-form counts") {
  for (const auto& row : series_census(3)) {
    INFO("series " << row.series << " k " << row.k);
    CHECK(row.match);
  }
  CHECK_THROWS_AS(series_census(4), validation_error);
}

TEST_CASE("limits") {
  CHECK_THROWS_AS(graph_spectrum(5, BoundaryCondition::neumann), resource_limit_error);
  CHECK_THROWS_AS(graph_spectrum(0, BoundaryCondition::dirichlet), domain_error);
  CHECK_THROWS_AS(parse_bc("robin"), validation_error);
}
