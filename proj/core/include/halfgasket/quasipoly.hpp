#pragma once

#include <optional>
#include <vector>

#include "halfgasket/scalar.hpp"

namespace halfgasket {

// f(m) = sum_i c_i * m^{d_i} * r_i^m. Closed under shifts, products, geometric
// weights and indefinite summation, so infinite tails of generator data stay
// exact.
template <Scalar S>
class QuasiPoly {
 public:
  struct Term {
    S ratio;
    int degree = 0;
    S coeff;
  };

  QuasiPoly() = default;
  static QuasiPoly constant(const S& c);
  static QuasiPoly geometric(const S& coeff, const S& ratio, int degree = 0);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S at(long m) const;

  QuasiPoly& operator+=(const QuasiPoly& o);
  QuasiPoly& operator-=(const QuasiPoly& o);
  QuasiPoly& operator*=(const S& c);
  friend QuasiPoly operator+(QuasiPoly a, const QuasiPoly& b) { return a += b; }
  friend QuasiPoly operator-(QuasiPoly a, const QuasiPoly& b) { return a -= b; }
  friend QuasiPoly operator*(QuasiPoly a, const S& c) { return a *= c; }
  friend QuasiPoly operator*(const S& c, QuasiPoly a) { return a *= c; }
  friend QuasiPoly operator*(const QuasiPoly& a, const QuasiPoly& b) { return a.product(b); }

  QuasiPoly product(const QuasiPoly& o) const;
  // m -> f(m + k)
  QuasiPoly shifted(long k) const;
  // m -> w^m f(m)
  QuasiPoly times_geometric(const S& w) const;
  // F(m) = sum_{k=m1}^{m} f(k), valid for m >= m1 - 1.
  QuasiPoly partial_sums(long m1) const;
  // m -> sum_{k>m} f(k); empty unless every term decays.
  std::optional<QuasiPoly> tail_sums() const;
  // sum_{m>=m0} f(m); empty when divergent.
  std::optional<S> sum_from(long m0) const;
  // lim f(m); empty when the limit does not exist.
  std::optional<S> limit() const;

  bool decays() const;
  // Largest |ratio| over nonzero terms (0 for the zero function).
  double max_ratio() const;
  S coefficient(const S& ratio, int degree = 0) const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

extern template class QuasiPoly<Rational>;
extern template class QuasiPoly<double>;

}  // namespace halfgasket
