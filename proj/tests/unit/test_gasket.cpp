#include <doctest.h>

#include <cmath>
#include <set>

#include "halfgasket/errors.hpp"
#include "halfgasket/gasket.hpp"

using namespace halfgasket;

TEST_CASE("vertex and edge counts") {
  for (int m = 0; m <= 6; ++m) {
    const auto g = build_graph(m);
    const long p = static_cast<long>(std::pow(3, m + 1));
    CHECK(g.vertices.size() == static_cast<std::size_t>((p + 3) / 2));
    CHECK(vertex_count(m) == static_cast<std::uint64_t>((p + 3) / 2));
    CHECK(g.edges.size() == static_cast<std::size_t>(p));
    CHECK(g.cells.size() == static_cast<std::size_t>(p / 3));
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      CHECK(g.neighbors[i].size() == (g.is_boundary(static_cast<int>(i)) ? 2u : 4u));
  }
}

TEST_CASE("words and aliases") {
  CHECK(Word::parse("0120").str() == "0120");
  CHECK_THROWS_AS(Word::parse("013"), validation_error);
  CHECK(Word::zeros(2, {1}).str() == "001");
  CHECK(Word::parse("01").is_prefix_of(Word::parse("012")));
  CHECK(Word::from_code(Word::parse("210").code(), 3) == Word::parse("210"));
  // F_0 q_1 = F_1 q_0
  CHECK(Vertex(Word::parse("0"), 1) == Vertex(Word::parse("1"), 0));
  // a level-1 vertex written at depth 3
  CHECK(Vertex(Word::parse("011"), 1) == Vertex(Word::parse("01"), 1));
  CHECK(Vertex(Word::parse("0"), 1).aliases().size() == 2);
  CHECK(corner_point(2).aliases().size() == 1);
}

TEST_CASE("special points") {
  CHECK(y_point(0) == corner_point(1));
  CHECK(z_point(0) == corner_point(2));
  for (int m = 1; m <= 6; ++m) {
    CHECK(x_point(m).level() == m);
    CHECK(on_axis(x_point(m)));
    CHECK(side_of(y_point(m)) == Side::omega);
    CHECK(side_of(z_point(m)) == Side::mirror);
    CHECK(reflect(y_point(m)) == z_point(m));
    CHECK(reflect(x_point(m)) == x_point(m));
    const auto c = coordinates(x_point(m));
    CHECK(c[0] == doctest::Approx(0.5));
  }
  CHECK(side_of(corner_point(0)) == Side::axis);
}

TEST_CASE("reflection is an isometric involution of the graph") {
  for (int m = 1; m <= 5; ++m) {
    const auto g = graph_at(m);
    std::set<std::pair<int, int>> edges(g->edges.begin(), g->edges.end());
    int axis = 0, left = 0, right = 0;
    for (std::size_t i = 0; i < g->vertices.size(); ++i) {
      const int r = g->reflection[i];
      CHECK(g->reflection[static_cast<std::size_t>(r)] == static_cast<int>(i));
      const auto a = coordinates(g->vertices[i]), b = coordinates(g->vertices[static_cast<std::size_t>(r)]);
      CHECK(a[0] + b[0] == doctest::Approx(1.0));
      CHECK(a[1] == doctest::Approx(b[1]));
      axis += g->sides[i] == Side::axis;
      left += g->sides[i] == Side::omega;
      right += g->sides[i] == Side::mirror;
      CHECK((g->sides[i] == Side::omega) == (a[0] < 0.5 - 1e-12));
    }
    CHECK(axis == m + 1);
    CHECK(left == right);
    for (auto [u, v] : g->edges) {
      auto ru = g->reflection[static_cast<std::size_t>(u)], rv = g->reflection[static_cast<std::size_t>(v)];
      CHECK((edges.count({ru, rv}) + edges.count({rv, ru})) == 1);
    }
  }
}

TEST_CASE("edges have length 2^-m") {
  const int m = 4;
  const auto g = graph_at(m);
  for (auto [u, v] : g->edges) {
    const auto a = coordinates(g->vertices[static_cast<std::size_t>(u)]);
    const auto b = coordinates(g->vertices[static_cast<std::size_t>(v)]);
    CHECK(std::hypot(a[0] - b[0], a[1] - b[1]) == doctest::Approx(1.0 / 16));
  }
}

TEST_CASE("graphs are memoised") { CHECK(graph_at(3).get() == graph_at(3).get()); }
