#include "halfgasket/sequence.hpp"

#include <algorithm>
#include <cmath>

#include "halfgasket/errors.hpp"

namespace halfgasket {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <Scalar S>
double quasi_double(const QuasiPoly<S>& q, long m) {
  double v = 0;
  for (const auto& t : q.terms())
    v += to_double(t.coeff) * std::pow(static_cast<double>(m), t.degree) *
         std::pow(to_double(t.ratio), static_cast<double>(m));
  return v;
}

}  // namespace

template <Scalar S>
Sequence<S>::Sequence(std::vector<S> prefix, Tail tail, std::vector<PowerTerm<S>> powers)
    : prefix_(std::move(prefix)), tail_(std::move(tail)), powers_(std::move(powers)), has_tail_(true) {
  for (const auto& p : powers_) {
    if (p.power < 1) throw validation_error("power term needs an exponent >= 1");
    if (p.offset < 0) throw validation_error("power term offset must be >= 0");
  }
}

template <Scalar S>
Sequence<S> Sequence<S>::finite(std::vector<S> values) {
  Sequence s;
  s.prefix_ = std::move(values);
  s.has_tail_ = false;
  return s;
}

template <Scalar S>
Sequence<S> Sequence<S>::power(const S& coeff, int p, long offset) {
  return Sequence({}, Tail{}, {PowerTerm<S>{coeff, S(1), offset, p}});
}

template <Scalar S>
S Sequence<S>::tail_at(long m) const {
  S v = tail_.at(m);
  for (const auto& p : powers_) v += p.coeff * ipow(p.ratio, m) / ipow(S(m + p.offset), p.power);
  return v;
}

template <Scalar S>
double Sequence<S>::power_at(long m) const {
  double v = 0;
  for (const auto& p : powers_)
    v += to_double(p.coeff) * std::pow(to_double(p.ratio), static_cast<double>(m)) /
         std::pow(static_cast<double>(m + p.offset), p.power);
  return v;
}

template <Scalar S>
S Sequence<S>::at(long m) const {
  if (m < 1) throw validation_error("sequence index must be >= 1");
  if (m <= prefix_length()) return prefix_[m - 1];
  if (!has_tail_)
    throw truncation_error("index " + std::to_string(m) + " beyond a finite window of length " +
                           std::to_string(prefix_length()));
  return tail_at(m);
}

template <Scalar S>
std::vector<S> Sequence<S>::window(long n) const {
  std::vector<S> out;
  out.reserve(static_cast<std::size_t>(std::max(0L, n)));
  for (long m = 1; m <= n; ++m) out.push_back(at(m));
  return out;
}

template <Scalar S>
void Sequence<S>::extend_prefix(long p) {
  while (prefix_length() < p) prefix_.push_back(tail_at(prefix_length() + 1));
}

template <Scalar S>
Sequence<S> Sequence<S>::with_prefix(long p) const {
  if (!has_tail_ && p > prefix_length()) throw truncation_error("cannot extend a finite window");
  Sequence r = *this;
  r.extend_prefix(p);
  return r;
}

template <Scalar S>
Sequence<S>& Sequence<S>::operator+=(const Sequence& o) {
  if (!has_tail_ || !o.has_tail_) {
    long n = std::min(available(), o.available());
    std::vector<S> v;
    for (long m = 1; m <= n; ++m) v.push_back(at(m) + o.at(m));
    *this = finite(std::move(v));
    return *this;
  }
  long p = std::max(prefix_length(), o.prefix_length());
  extend_prefix(p);
  Sequence other = o.with_prefix(p);
  for (long i = 0; i < p; ++i) prefix_[i] += other.prefix_[i];
  tail_ += other.tail_;
  powers_.insert(powers_.end(), other.powers_.begin(), other.powers_.end());
  return *this;
}

template <Scalar S>
Sequence<S>& Sequence<S>::operator-=(const Sequence& o) {
  return *this += o * S(-1);
}

template <Scalar S>
Sequence<S>& Sequence<S>::operator*=(const S& c) {
  for (auto& v : prefix_) v *= c;
  tail_ *= c;
  for (auto& p : powers_) p.coeff *= c;
  return *this;
}

template <Scalar S>
Sequence<S> Sequence<S>::shifted(long k) const {
  if (k < 0) throw validation_error("negative shift");
  if (!has_tail_) {
    std::vector<S> v;
    for (long m = 1 + k; m <= prefix_length(); ++m) v.push_back(prefix_[m - 1]);
    return finite(std::move(v));
  }
  Sequence r;
  for (long m = 1 + k; m <= prefix_length(); ++m) r.prefix_.push_back(prefix_[m - 1]);
  r.tail_ = tail_.shifted(k);
  for (auto p : powers_) {
    p.coeff *= ipow(p.ratio, k);
    p.offset += k;
    r.powers_.push_back(p);
  }
  return r;
}

template <Scalar S>
Sequence<S> Sequence<S>::times_geometric(const S& w) const {
  Sequence r = *this;
  S f(1);
  for (auto& v : r.prefix_) {
    f *= w;
    v *= f;
  }
  if (has_tail_) {
    r.tail_ = tail_.times_geometric(w);
    for (auto& p : r.powers_) p.ratio *= w;
  }
  return r;
}

template <Scalar S>
Sequence<S> Sequence<S>::product(const Sequence& o) const {
  if (!has_tail_ || !o.has_tail_) {
    long n = std::min(available(), o.available());
    std::vector<S> v;
    for (long m = 1; m <= n; ++m) v.push_back(at(m) * o.at(m));
    return finite(std::move(v));
  }
  if (!powers_.empty() || !o.powers_.empty())
    throw domain_error("pointwise products of power-law tails are not representable");
  long p = std::max(prefix_length(), o.prefix_length());
  Sequence a = with_prefix(p), b = o.with_prefix(p);
  for (long i = 0; i < p; ++i) a.prefix_[i] *= b.prefix_[i];
  a.tail_ = a.tail_ * b.tail_;
  return a;
}

template <Scalar S>
SeriesValue<S> Sequence<S>::weighted_tail(const S& w, long m) const {
  if (!has_tail_) throw truncation_error("infinite tail sum over a finite window");
  if (m < 0) throw validation_error("negative start index");
  SeriesValue<S> out;
  S wk(1);
  for (long j = m + 1; j <= prefix_length(); ++j) {
    wk *= w;
    out.value += wk * prefix_[j - 1];
  }
  long j0 = std::max(m, prefix_length());
  if (!tail_.is_zero()) {
    if (is_zero(w)) return out;
    auto tails = tail_.times_geometric(w).tail_sums();
    if (!tails) {
      out.finite = false;
      return out;
    }
    out.value += tails->at(j0) * ipow(w, -m);
  }
  if (!powers_.empty()) {
    out.exact = false;
    const double wd = to_double(w);
    double acc = 0, bound = 0;
    for (const auto& p : powers_) {
      const double q = std::fabs(wd * to_double(p.ratio));
      if (q > 1.0 || (q == 1.0 && p.power <= 1)) {
        out.finite = false;
        return out;
      }
      double sum = 0, term = 0;
      long j = j0 + 1;
      for (; j < j0 + 200000; ++j) {
        term = to_double(p.coeff) * std::pow(wd, static_cast<double>(j - m)) *
               std::pow(to_double(p.ratio), static_cast<double>(j)) /
               std::pow(static_cast<double>(j + p.offset), p.power);
        sum += term;
        if (std::fabs(term) <= 1e-18 * std::fabs(sum) && j > j0 + 8) break;
        if (term == 0.0) break;
      }
      acc += sum;
      bound += q < 1.0 ? std::fabs(term) * q / (1.0 - q)
                       : std::fabs(term) * static_cast<double>(j + p.offset) / (p.power - 1);
    }
    out.value += from_double<S>(acc);
    out.error_bound = bound + 1e-16 * std::fabs(acc);
  }
  return out;
}

template <Scalar S>
SeriesValue<S> Sequence<S>::sum() const {
  if (!has_tail_) {
    SeriesValue<S> out;
    for (const auto& v : prefix_) out.value += v;
    out.exact = false;
    out.error_bound = kInf;
    return out;
  }
  return weighted_tail(S(1), 0);
}

template <Scalar S>
SeriesValue<S> Sequence<S>::weighted_l2_squared(const S& w) const {
  if (!has_tail_ || powers_.empty()) return product(*this).times_geometric(w).sum();
  SeriesValue<S> out;
  out.exact = false;
  const double wd = std::fabs(to_double(w));
  for (const auto& t : tail_.terms())
    if (std::pow(std::fabs(to_double(t.ratio)), 2) * wd >= 1.0) {
      out.finite = false;
      return out;
    }
  for (const auto& p : powers_)
    if (std::pow(std::fabs(to_double(p.ratio)), 2) * wd > 1.0) {
      out.finite = false;
      return out;
    }
  double acc = 0, term = 0;
  long m = 1;
  for (; m <= 400000; ++m) {
    double s = m <= prefix_length() ? to_double(prefix_[m - 1]) : quasi_double(tail_, m) + power_at(m);
    term = std::pow(wd, static_cast<double>(m)) * s * s;
    acc += term;
    if (m > prefix_length() + 8 && term <= 1e-18 * acc) break;
  }
  out.value = from_double<S>(acc);
  out.error_bound = std::fabs(term) * static_cast<double>(m) + 1e-15 * acc;
  return out;
}

template <Scalar S>
SeriesValue<S> Sequence<S>::sup_abs() const {
  SeriesValue<S> out;
  S cur(0);
  for (const auto& v : prefix_) cur = std::max(cur, abs(v));
  if (!has_tail_) {
    out.value = cur;
    out.exact = false;
    out.error_bound = kInf;
    return out;
  }
  S plus(0), minus(0);
  std::vector<const typename Tail::Term*> decaying;
  for (const auto& t : tail_.terms()) {
    S r = abs(t.ratio);
    if (r > S(1) || (r == S(1) && t.degree > 0)) {
      out.finite = false;
      return out;
    }
    if (r == S(1)) {
      if (t.ratio == S(1)) plus += t.coeff;
      else minus += t.coeff;
    } else {
      decaying.push_back(&t);
    }
  }
  for (const auto& p : powers_)
    if (std::fabs(to_double(p.ratio)) > 1.0) {
      out.finite = false;
      return out;
    }
  const S limsup = std::max(abs(plus + minus), abs(plus - minus));
  if (decaying.empty() && powers_.empty()) {
    out.value = std::max(cur, limsup);
    return out;
  }
  auto bound_at = [&](long m) {
    double b = 0;
    for (const auto* t : decaying)
      b += std::fabs(to_double(t->coeff)) * std::pow(static_cast<double>(m), t->degree) *
           std::pow(std::fabs(to_double(t->ratio)), static_cast<double>(m));
    for (const auto& p : powers_)
      b += std::fabs(to_double(p.coeff)) * std::pow(std::fabs(to_double(p.ratio)), static_cast<double>(m)) /
           std::pow(static_cast<double>(m + p.offset), p.power);
    return b;
  };
  // Bounds are only monotone past the peak of m^d r^m.
  long peak = prefix_length() + 1;
  for (const auto* t : decaying)
    if (t->degree > 0)
      peak = std::max(peak, static_cast<long>(std::ceil(t->degree / -std::log(std::fabs(to_double(t->ratio))))) + 1);
  const long cap = std::max(peak, prefix_length()) + (is_exact_v<S> ? 400 : 100000);
  long m = prefix_length() + 1;
  for (; m <= cap; ++m) {
    cur = std::max(cur, abs(tail_at(m)));
    if (m >= peak && to_double(limsup) + bound_at(m + 1) <= to_double(cur) * (1 - 1e-12)) {
      out.value = cur;
      return out;
    }
  }
  out.value = std::max(cur, limsup);
  out.exact = false;
  out.error_bound = bound_at(m);
  return out;
}

template <Scalar S>
std::optional<S> Sequence<S>::limit() const {
  if (!has_tail_) return std::nullopt;
  for (const auto& p : powers_)
    if (std::fabs(to_double(p.ratio)) > 1.0) return std::nullopt;
  return tail_.limit();
}

template <Scalar S>
BoundarySeq<S> BoundarySeq<S>::constant(const S& a0, const S& A) {
  return BoundarySeq{a0, Sequence<S>::constant(A)};
}

template <Scalar S>
BoundarySeq<S> BoundarySeq<S>::geometric(const S& a0, const S& A1, const S& A2, const S& r) {
  return BoundarySeq{a0, Sequence<S>::constant(A1) + Sequence<S>::geometric(A2, r)};
}

template class Sequence<Rational>;
template class Sequence<double>;
template struct BoundarySeq<Rational>;
template struct BoundarySeq<double>;

}  // namespace halfgasket
