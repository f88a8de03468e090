#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfgasket/linalg.hpp"

namespace halfgasket {

// dirichlet: D - A on V_m \ V_0. neumann: D - A on V_m. neumann_scaled: D - A
// with the rows of the three degree-2 boundary vertices doubled, so every row
// is normalised to degree 4 (the operator the level-k series counts refer to
// for k >= 1).
enum class BoundaryCondition { dirichlet, neumann, neumann_scaled };

std::string to_string(BoundaryCondition bc);
BoundaryCondition parse_bc(const std::string& s);

struct GraphOperator {
  int level = 0;
  BoundaryCondition bc = BoundaryCondition::neumann;
  std::vector<int> vertices;    // graph indices of the rows
  Matrix<Rational> L;           // exact operator
  std::vector<double> scale;    // row scaling (1 or 2)
  std::vector<int> reflection;  // row index of the mirror vertex
};

GraphOperator graph_operator(int m, BoundaryCondition bc);

struct EigenGroup {
  double value = 0;
  int multiplicity = 0;
  int even = 0;
  int odd = 0;
  std::optional<long> exact_value;  // integer eigenvalue confirmed in rationals
};

struct Spectrum {
  int level = 0;
  BoundaryCondition bc = BoundaryCondition::neumann;
  std::vector<double> values;                // ascending, with repetition
  std::vector<std::vector<double>> vectors;  // vectors[k] for values[k], rows of the operator
  std::vector<EigenGroup> groups;
  double max_residual = 0;  // max ||L v - lambda v||
  double trace_error = 0;   // |sum lambda - trace L|
};

// Dense eigensolve, m <= 4. Eigenvalues within group_tol (relative) share a group.
Spectrum graph_spectrum(int m, BoundaryCondition bc, double group_tol = 1e-8);

// dim ker(L - mu) and its even/odd parts, exactly.
struct ExactCount {
  long mu = 0;
  int multiplicity = 0;
  int even = 0;
  int odd = 0;
};
ExactCount exact_count(const GraphOperator& op, long mu);

struct CountReport {
  Spectrum spectrum;
  int even_total = 0;
  int odd_total = 0;
  int even_expected = 0;  // (|V_m| + m + 1)/2 for Neumann, (|V_m| - 3 + m)/2 for Dirichlet
  int odd_expected = 0;   // (|V_m| - m - 1)/2 for Neumann, (|V_m| - 3 - m)/2 for Dirichlet
  bool totals_match = false;
};

CountReport symmetry_counts(int m, BoundaryCondition bc, double group_tol = 1e-8);

struct CensusRow {
  int series = 0;  // mu
  int k = 0;       // birth level
  long N_formula = 0;
  long D_formula = 0;
  long N_graph = 0;
  long D_graph = 0;
  bool match = false;
  std::string source;  // operators the graph counts come from
};

// Closed-form counts N(Omega), D(Omega) per series and birth level against
// even/odd multiplicities of the graph eigenvalue at that level. k_max <= 3.
std::vector<CensusRow> series_census(int k_max);

}  // namespace halfgasket
