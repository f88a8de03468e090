#include "halfgasket/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "halfgasket/errors.hpp"

namespace halfgasket {

template <Scalar S>
std::vector<S> dense_solve(Matrix<S> A, std::vector<S> b) {
  const std::size_t n = A.size();
  if (b.size() != n) throw internal_error("dense_solve: size mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(A[i][k]) > abs(A[piv][k])) piv = i;
    if (is_zero(A[piv][k])) throw domain_error("singular linear system");
    std::swap(A[k], A[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(A[i][k])) continue;
      const S f = A[i][k] / A[k][k];
      for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<S> x(n);
  for (std::size_t k = n; k-- > 0;) {
    S acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= A[k][j] * x[j];
    x[k] = acc / A[k][k];
  }
  return x;
}

template <Scalar S>
int matrix_rank(Matrix<S> A, double tol) {
  if (A.empty()) return 0;
  const std::size_t rows = A.size(), cols = A[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (abs(A[i][c]) > abs(A[piv][c])) piv = i;
    bool zero;
    if constexpr (is_exact_v<S>) zero = is_zero(A[piv][c]);
    else zero = std::fabs(A[piv][c]) <= tol;
    if (zero) continue;
    std::swap(A[r], A[piv]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (is_zero(A[i][c])) continue;
      const S f = A[i][c] / A[r][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

EigenResult jacobi_eigen(Matrix<double> A, double tol, int max_sweeps) {
  const std::size_t n = A.size();
  Matrix<double> V(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) V[i][i] = 1.0;
  EigenResult out;
  auto off_norm = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += A[i][j] * A[i][j];
    return std::sqrt(s);
  };
  double scale = 0;
  for (const auto& row : A)
    for (double x : row) scale = std::max(scale, std::fabs(x));
  for (; out.sweeps < max_sweeps; ++out.sweeps) {
    if (off_norm() <= tol * std::max(1.0, scale)) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(A[p][q]) < 1e-300) continue;
        const double theta = (A[q][q] - A[p][p]) / (2 * A[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = A[k][p], akq = A[k][q];
          A[k][p] = c * akp - s * akq;
          A[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = A[p][k], aqk = A[q][k];
          A[p][k] = c * apk - s * aqk;
          A[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = V[k][p], vkq = V[k][q];
          V[k][p] = c * vkp - s * vkq;
          V[k][q] = s * vkp + c * vkq;
        }
      }
  }
  if (off_norm() > tol * std::max(1.0, scale) * 10)
    throw convergence_error("Jacobi eigensolver did not converge", {off_norm()});
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return A[a][a] < A[b][b]; });
  for (std::size_t k : idx) {
    out.values.push_back(A[k][k]);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = V[i][k];
    out.vectors.push_back(std::move(v));
  }
  return out;
}

template std::vector<Rational> dense_solve<Rational>(Matrix<Rational>, std::vector<Rational>);
template std::vector<double> dense_solve<double>(Matrix<double>, std::vector<double>);
template int matrix_rank<Rational>(Matrix<Rational>, double);
template int matrix_rank<double>(Matrix<double>, double);

}  // namespace halfgasket
