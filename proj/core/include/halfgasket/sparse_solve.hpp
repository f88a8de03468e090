#pragma once

#include <map>
#include <vector>

#include "halfgasket/scalar.hpp"

namespace halfgasket {

// Structurally symmetric sparse system solved by Gaussian elimination in a
// caller-chosen order. Eliminating finest gasket vertices first keeps fill-in
// inside single cells, so exact rationals stay affordable.
template <Scalar S>
class SparseSystem {
 public:
  explicit SparseSystem(int n) : rows_(static_cast<std::size_t>(n)), rhs_(static_cast<std::size_t>(n)) {}

  int size() const { return static_cast<int>(rows_.size()); }
  void add(int row, int col, const S& v) { rows_[static_cast<std::size_t>(row)][col] += v; }
  void add_rhs(int row, const S& v) { rhs_[static_cast<std::size_t>(row)] += v; }

  // order must be a permutation of 0..n-1; throws internal_error on a zero pivot.
  std::vector<S> solve(const std::vector<int>& order) const;

 private:
  std::vector<std::map<int, S>> rows_;
  std::vector<S> rhs_;
};

extern template class SparseSystem<Rational>;
extern template class SparseSystem<double>;

}  // namespace halfgasket
