#include "halfgasket/scalar.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <limits>

#include "halfgasket/errors.hpp"

namespace halfgasket {

Rational::Rational(long p, long q) {
  if (q == 0) throw domain_error("rational with zero denominator");
  q_ = mpq_class(p, q);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::str() const { return q_.get_str(); }

std::size_t Rational::bits() const {
  return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_int(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw validation_error("malformed integer '" + std::string(s) + "'");
  if (s.size() > 4000) throw resource_limit_error("integer literal too long");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw validation_error("empty scalar");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class p = parse_int(text.substr(0, slash));
    std::string_view den = text.substr(slash + 1);
    if (!den.empty() && den[0] == '+') den.remove_prefix(1);
    mpz_class q = parse_int(den);
    if (q == 0) throw validation_error("zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(p, q));
  }

  // Decimal, optional exponent.
  bool neg = false;
  std::string_view s = text;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = s.substr(e + 1);
    bool eneg = false;
    if (!es.empty() && (es[0] == '-' || es[0] == '+')) {
      eneg = es[0] == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 4) throw validation_error("bad exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(es));
    if (eneg) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      throw validation_error("malformed decimal '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw validation_error("malformed scalar '" + std::string(text) + "'");
    digits = std::string(s);
  }
  if (digits.size() > 4000 || std::labs(exponent) > 4000) throw resource_limit_error("scalar literal too large");
  mpq_class q(mpz_class(digits, 10));
  mpz_class ten;
  mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0) q *= ten;
  else q /= ten;
  if (neg) q = -q;
  return Rational(std::move(q));
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw domain_error("non-finite value cannot become a rational");
  return Rational(mpq_class(x));
}

Rational ipow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base.is_zero()) {
    if (e < 0) throw domain_error("zero to a negative power");
    return Rational(0);
  }
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), n);
  if (e < 0) std::swap(num, den);
  return Rational(mpq_class(num, den));
}

std::string format(const Rational& x) { return x.str(); }

std::string format(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  return Rational::parse(text);
}

template <>
double parse_scalar<double>(std::string_view text) {
  if (text.find('/') != std::string_view::npos) return Rational::parse(text).to_double();
  std::string s(text);
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
    throw validation_error("malformed scalar '" + s + "'");
  return value;
}

}  // namespace halfgasket
