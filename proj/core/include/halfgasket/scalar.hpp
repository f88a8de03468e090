#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <concepts>
#include <string>
#include <string_view>

namespace halfgasket {

// Exact rational backed by GMP. Thin value type so that generic code can use
// plain `auto` without tripping over gmpxx expression templates.
class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I n) : q_(static_cast<long>(n)) {}
  Rational(long p, long q);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  explicit Rational(mpq_class&& q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "p/q", integers and finite decimals such as "-0.125" or "3e-4".
  static Rational parse(std::string_view text);
  // Exact binary value of a finite double.
  static Rational from_double(double x);

  const mpq_class& raw() const { return q_; }
  double to_double() const { return q_.get_d(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  std::string str() const;
  // Bits in numerator plus denominator, used for resource guards.
  std::size_t bits() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

template <class S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

template <Scalar S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
};

template <Scalar S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

template <Scalar S>
S frac(long p, long q) {
  if constexpr (is_exact_v<S>) return Rational(p, q);
  else return static_cast<double>(p) / static_cast<double>(q);
}

Rational ipow(const Rational& base, long e);
inline double ipow(double base, long e) {
  return std::pow(base, static_cast<double>(e));
}

inline double to_double(const Rational& x) { return x.to_double(); }
inline double to_double(double x) { return x; }

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
inline double abs(double x) { return std::fabs(x); }

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

inline int sign(const Rational& x) { return x.sign(); }
inline int sign(double x) { return (x > 0) - (x < 0); }

// Rationals print as "p/q" (or "p"); doubles in shortest round-trip form.
std::string format(const Rational& x);
std::string format(double x);

template <Scalar S>
S parse_scalar(std::string_view text);

template <Scalar S>
S from_double(double x) {
  if constexpr (is_exact_v<S>) return Rational::from_double(x);
  else return x;
}

// Near-equality used by the float backend; exact equality for rationals.
inline bool same_value(const Rational& a, const Rational& b) { return a == b; }
inline bool same_value(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::fmax(1.0, std::fmax(std::fabs(a), std::fabs(b)));
}

}  // namespace halfgasket
