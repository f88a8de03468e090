#include "halfgasket/quasipoly.hpp"

#include <algorithm>
#include <cmath>

#include "halfgasket/errors.hpp"

namespace halfgasket {

namespace {

template <Scalar S>
S binom(int n, int k) {
  S r(1);
  for (int i = 1; i <= k; ++i) r = r * S(n - k + i) / S(i);
  return r;
}

template <Scalar S>
S ipow_long(const S& base, long e) {
  return ipow(base, e);
}

template <Scalar S>
S mpow(long m, int d) {
  S r(1);
  for (int i = 0; i < d; ++i) r *= S(m);
  return r;
}

bool is_one(const Rational& r) { return r == Rational(1); }
bool is_one(double r) { return r == 1.0; }

template <Scalar S>
bool ratio_decays(const S& r) {
  return abs(r) < S(1);
}

}  // namespace

template <Scalar S>
QuasiPoly<S> QuasiPoly<S>::constant(const S& c) {
  return geometric(c, S(1), 0);
}

template <Scalar S>
QuasiPoly<S> QuasiPoly<S>::geometric(const S& coeff, const S& ratio, int degree) {
  QuasiPoly p;
  if (degree < 0) throw validation_error("negative polynomial degree");
  p.terms_.push_back(Term{ratio, degree, coeff});
  p.normalize();
  return p;
}

template <Scalar S>
void QuasiPoly<S>::normalize() {
  if constexpr (!is_exact_v<S>) {
    for (auto& t : terms_) {
      if (same_value(t.ratio, 1.0)) t.ratio = 1.0;
      if (same_value(t.ratio, -1.0)) t.ratio = -1.0;
    }
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    if (!same_value(a.ratio, b.ratio)) return a.ratio < b.ratio;
    return a.degree < b.degree;
  });
  std::vector<Term> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && same_value(merged.back().ratio, t.ratio) && merged.back().degree == t.degree)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  double scale = 0;
  if constexpr (!is_exact_v<S>)
    for (const auto& t : merged) scale = std::max(scale, std::fabs(t.coeff));
  terms_.clear();
  for (auto& t : merged) {
    if constexpr (is_exact_v<S>) {
      if (t.coeff.is_zero() || t.ratio.is_zero()) continue;
    } else {
      // Cancellation debris in the float backend would otherwise turn into
      // spurious growing modes.
      if (std::fabs(t.coeff) <= 1e-13 * scale || t.ratio == 0.0) continue;
    }
    terms_.push_back(std::move(t));
  }
}

template <Scalar S>
S QuasiPoly<S>::at(long m) const {
  S v(0);
  for (const auto& t : terms_) v += t.coeff * mpow<S>(m, t.degree) * ipow_long(t.ratio, m);
  return v;
}

template <Scalar S>
QuasiPoly<S>& QuasiPoly<S>::operator+=(const QuasiPoly& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

template <Scalar S>
QuasiPoly<S>& QuasiPoly<S>::operator-=(const QuasiPoly& o) {
  for (const auto& t : o.terms_) terms_.push_back(Term{t.ratio, t.degree, -t.coeff});
  normalize();
  return *this;
}

template <Scalar S>
QuasiPoly<S>& QuasiPoly<S>::operator*=(const S& c) {
  for (auto& t : terms_) t.coeff *= c;
  normalize();
  return *this;
}

template <Scalar S>
QuasiPoly<S> QuasiPoly<S>::product(const QuasiPoly& o) const {
  QuasiPoly r;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) r.terms_.push_back(Term{a.ratio * b.ratio, a.degree + b.degree, a.coeff * b.coeff});
  r.normalize();
  return r;
}

template <Scalar S>
QuasiPoly<S> QuasiPoly<S>::shifted(long k) const {
  QuasiPoly r;
  for (const auto& t : terms_) {
    S base = t.coeff * ipow_long(t.ratio, k);
    // (m+k)^d = sum_j C(d,j) k^{d-j} m^j
    for (int j = 0; j <= t.degree; ++j)
      r.terms_.push_back(Term{t.ratio, j, base * binom<S>(t.degree, j) * mpow<S>(k, t.degree - j)});
  }
  r.normalize();
  return r;
}

template <Scalar S>
QuasiPoly<S> QuasiPoly<S>::times_geometric(const S& w) const {
  QuasiPoly r = *this;
  for (auto& t : r.terms_) t.ratio *= w;
  r.normalize();
  return r;
}

namespace {

// Q with Q(m) - Q(m-1)/r = m^d (r != 1) or Q(m) - Q(m-1) = m^d (r == 1).
template <Scalar S>
std::vector<S> antidifference(const S& r, int d) {
  if (is_one(r)) {
    std::vector<S> q(d + 2, S(0));
    for (int i = d; i >= 0; --i) {
      S rhs = (i == d) ? S(1) : S(0);
      for (int j = i + 2; j <= d + 1; ++j) {
        S term = q[j] * binom<S>(j, i);
        if ((j - i) % 2 == 0) rhs += term;
        else rhs -= term;
      }
      q[i + 1] = rhs / S(i + 1);
    }
    return q;
  }
  std::vector<S> q(d + 1, S(0));
  S inv = S(1) / r;
  for (int i = d; i >= 0; --i) {
    S rhs = (i == d) ? S(1) : S(0);
    for (int j = i + 1; j <= d; ++j) {
      S term = inv * q[j] * binom<S>(j, i);
      if ((j - i) % 2 == 0) rhs += term;
      else rhs -= term;
    }
    q[i] = rhs / (S(1) - inv);
  }
  return q;
}

template <Scalar S>
S eval_poly(const std::vector<S>& q, long m) {
  S v(0), p(1);
  for (const auto& c : q) {
    v += c * p;
    p *= S(m);
  }
  return v;
}

}  // namespace

template <Scalar S>
QuasiPoly<S> QuasiPoly<S>::partial_sums(long m1) const {
  QuasiPoly r;
  for (const auto& t : terms_) {
    auto q = antidifference(t.ratio, t.degree);
    for (std::size_t j = 0; j < q.size(); ++j)
      r.terms_.push_back(Term{t.ratio, static_cast<int>(j), t.coeff * q[j]});
    S base = t.coeff * eval_poly(q, m1 - 1) * ipow_long(t.ratio, m1 - 1);
    r.terms_.push_back(Term{S(1), 0, -base});
  }
  r.normalize();
  return r;
}

template <Scalar S>
std::optional<QuasiPoly<S>> QuasiPoly<S>::tail_sums() const {
  if (!decays()) return std::nullopt;
  QuasiPoly r;
  for (const auto& t : terms_) {
    auto q = antidifference(t.ratio, t.degree);
    for (std::size_t j = 0; j < q.size(); ++j)
      r.terms_.push_back(Term{t.ratio, static_cast<int>(j), -t.coeff * q[j]});
  }
  r.normalize();
  return r;
}

template <Scalar S>
std::optional<S> QuasiPoly<S>::sum_from(long m0) const {
  auto tail = tail_sums();
  if (!tail) return std::nullopt;
  return tail->at(m0 - 1);
}

template <Scalar S>
std::optional<S> QuasiPoly<S>::limit() const {
  S value(0);
  for (const auto& t : terms_) {
    if (ratio_decays(t.ratio)) continue;
    if (is_one(t.ratio) && t.degree == 0) {
      value += t.coeff;
      continue;
    }
    return std::nullopt;
  }
  return value;
}

template <Scalar S>
bool QuasiPoly<S>::decays() const {
  for (const auto& t : terms_)
    if (!ratio_decays(t.ratio)) return false;
  return true;
}

template <Scalar S>
double QuasiPoly<S>::max_ratio() const {
  double r = 0;
  for (const auto& t : terms_) r = std::max(r, std::fabs(to_double(t.ratio)));
  return r;
}

template <Scalar S>
S QuasiPoly<S>::coefficient(const S& ratio, int degree) const {
  for (const auto& t : terms_)
    if (same_value(t.ratio, ratio) && t.degree == degree) return t.coeff;
  return S(0);
}

template class QuasiPoly<Rational>;
template class QuasiPoly<double>;

}  // namespace halfgasket
