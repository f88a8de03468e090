#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "halfgasket/quasipoly.hpp"
#include "halfgasket/scalar.hpp"

namespace halfgasket {

// coeff * ratio^m * (m + offset)^(-power). Needed for data like 1/m that no
// quasi-polynomial represents; infinite sums over these are numeric.
template <Scalar S>
struct PowerTerm {
  S coeff;
  S ratio{1};
  long offset = 0;
  int power = 1;
};

// Result of an infinite sum or supremum.
template <Scalar S>
struct SeriesValue {
  bool finite = true;
  S value{};
  bool exact = true;
  // Absolute error estimate when !exact; +inf when the tail is unknown
  // (finite window).
  double error_bound = 0;
};

// Real sequence indexed by m >= 1: explicit prefix values for m <= P and an
// optional tail for m > P. Without a tail the sequence is a finite window.
template <Scalar S>
class Sequence {
 public:
  using Tail = QuasiPoly<S>;

  Sequence() : has_tail_(true) {}
  Sequence(std::vector<S> prefix, Tail tail, std::vector<PowerTerm<S>> powers = {});
  static Sequence finite(std::vector<S> values);
  static Sequence generator(Tail tail) { return Sequence({}, std::move(tail)); }
  static Sequence constant(const S& c) { return generator(Tail::constant(c)); }
  static Sequence geometric(const S& coeff, const S& ratio) { return generator(Tail::geometric(coeff, ratio)); }
  static Sequence power(const S& coeff, int p, long offset = 0);

  long prefix_length() const { return static_cast<long>(prefix_.size()); }
  bool has_tail() const { return has_tail_; }
  // Tail present and free of power terms: every infinite operation is exact.
  bool exact_tail() const { return has_tail_ && powers_.empty(); }
  const std::vector<S>& prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }
  const std::vector<PowerTerm<S>>& powers() const { return powers_; }
  long available() const { return has_tail_ ? std::numeric_limits<long>::max() : prefix_length(); }

  S at(long m) const;
  std::vector<S> window(long n) const;

  Sequence& operator+=(const Sequence& o);
  Sequence& operator-=(const Sequence& o);
  Sequence& operator*=(const S& c);
  friend Sequence operator+(Sequence a, const Sequence& b) { return a += b; }
  friend Sequence operator-(Sequence a, const Sequence& b) { return a -= b; }
  friend Sequence operator*(Sequence a, const S& c) { return a *= c; }
  friend Sequence operator*(const S& c, Sequence a) { return a *= c; }

  // m -> s_{m+k}, k >= 0.
  Sequence shifted(long k) const;
  // m -> w^m s_m
  Sequence times_geometric(const S& w) const;
  // Pointwise product; power terms are not closed under products.
  Sequence product(const Sequence& o) const;
  // Same sequence with the prefix materialised up to length p.
  Sequence with_prefix(long p) const;

  // sum_{k>=1} w^k s_{m+k}
  SeriesValue<S> weighted_tail(const S& w, long m) const;
  // sum_{m>=1} s_m
  SeriesValue<S> sum() const;
  // sum_{m>=1} w^m s_m^2
  SeriesValue<S> weighted_l2_squared(const S& w) const;
  // sup_{m>=1} |s_m|
  SeriesValue<S> sup_abs() const;
  std::optional<S> limit() const;

 private:
  void extend_prefix(long p);
  S tail_at(long m) const;
  double power_at(long m) const;
  std::vector<S> prefix_;
  Tail tail_;
  std::vector<PowerTerm<S>> powers_;
  bool has_tail_ = true;
};

// Dirichlet data on the half gasket: a_0 = u(q_1) and a_m = u(x_m).
template <Scalar S>
struct BoundarySeq {
  S a0{};
  Sequence<S> a;

  static BoundarySeq constant(const S& a0, const S& A);
  // a_m = A1 + A2 r^m
  static BoundarySeq geometric(const S& a0, const S& A1, const S& A2, const S& r);
  S at(long m) const { return m == 0 ? a0 : a.at(m); }
};

// Normal derivatives eta_m at x_m, outward from Y_m.
template <Scalar S>
struct FluxSeq {
  Sequence<S> eta;
  std::optional<S> a0;
  // u(q_0); the DtN map forgets it, so inversion needs it back.
  std::optional<S> apex;
};

extern template class Sequence<Rational>;
extern template class Sequence<double>;
extern template struct BoundarySeq<Rational>;
extern template struct BoundarySeq<double>;

}  // namespace halfgasket
