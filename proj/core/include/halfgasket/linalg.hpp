#pragma once

#include <vector>

#include "halfgasket/scalar.hpp"

namespace halfgasket {

template <Scalar S>
using Matrix = std::vector<std::vector<S>>;

// Gaussian elimination with partial pivoting (largest magnitude).
template <Scalar S>
std::vector<S> dense_solve(Matrix<S> A, std::vector<S> b);

// Exact for rationals; for doubles pivots below tol count as zero.
template <Scalar S>
int matrix_rank(Matrix<S> A, double tol = 1e-9);

struct EigenResult {
  std::vector<double> values;             // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] belongs to values[k]
  int sweeps = 0;
};

// Cyclic Jacobi for real symmetric matrices.
EigenResult jacobi_eigen(Matrix<double> A, double tol = 1e-12, int max_sweeps = 100);

extern template std::vector<Rational> dense_solve<Rational>(Matrix<Rational>, std::vector<Rational>);
extern template std::vector<double> dense_solve<double>(Matrix<double>, std::vector<double>);
extern template int matrix_rank<Rational>(Matrix<Rational>, double);
extern template int matrix_rank<double>(Matrix<double>, double);

}  // namespace halfgasket
