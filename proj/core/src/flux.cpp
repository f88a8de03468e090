#include "halfgasket/flux.hpp"

#include <cmath>
#include <sstream>

#include "halfgasket/errors.hpp"

namespace halfgasket {

namespace {

constexpr int kMaxDtn = 2000;

void check_n(int N) {
  if (N < 1) throw validation_error("truncation N must be >= 1");
  if (N > kMaxDtn) throw resource_limit_error("truncation N above " + std::to_string(kMaxDtn));
}

// (3/4) 3^i - (27/8) 5^{-i}; times 3^{-j} this is K_ij for j > i.
template <Scalar S>
S upper_factor(long i) {
  return frac<S>(3, 4) * ipow(S(3), i) - frac<S>(27, 8) * ipow(S(5), -i);
}

}  // namespace

template <Scalar S>
EtaPair<S> eta_from_data(const BoundarySeq<S>& a, long m) {
  if (m < 1) throw validation_error("eta_m needs m >= 1");
  const auto T0 = three_tail(a.a, 0);
  const auto Tm = three_tail(a.a, m);
  if (!T0.finite || !Tm.finite) throw domain_error("boundary data grow too fast");
  EtaPair<S> out;
  const S w = ipow(frac<S>(5, 3), m);
  out.closed = w * (S(3) * a.at(m) - frac<S>(12, 7) * Tm.value) -
               (S(6) * a.a0 + frac<S>(12, 7) * five_sum(a.a, m) - frac<S>(54, 7) * T0.value) / ipow(S(3), m);
  const auto sol = solve_continuous(a, static_cast<int>(m));
  out.via_solution = w * (S(2) * a.at(m) - sol.y[static_cast<std::size_t>(m)] - sol.y[static_cast<std::size_t>(m - 1)]);
  out.error_bound = to_double(w) * (12.0 / 7.0 * Tm.error_bound + 54.0 / 7.0 * T0.error_bound) +
                    to_double(w) * 2 * sol.error_bound;
  const double diff = to_double(abs(out.closed - out.via_solution));
  bool agree;
  if constexpr (is_exact_v<S>) {
    agree = (T0.exact && Tm.exact) ? out.closed == out.via_solution : diff <= 2 * out.error_bound + 1e-12;
  } else {
    agree = diff <= 1e-9 * std::max(1.0, std::abs(out.closed)) + 2 * out.error_bound;
  }
  if (!agree) {
    std::ostringstream os;
    os << "flux routes disagree at m=" << m << ": " << format(out.closed) << " vs " << format(out.via_solution);
    throw internal_error(os.str());
  }
  return out;
}

template <Scalar S>
Sequence<S> flux_sequence(const BoundarySeq<S>& a) {
  auto sums = data_sums(a.a);
  if (!sums) throw truncation_error("an exact flux sequence needs data with an exact tail");
  if (!a.a.limit()) throw domain_error("boundary data do not converge");
  const long P = sums->start;
  std::vector<S> prefix;
  for (long m = 1; m <= P; ++m) prefix.push_back(eta_from_data(a, m).closed);
  const S T0 = three_tail(a.a, 0).value;
  QuasiPoly<S> tail = (a.a.tail() * S(3) - sums->three * frac<S>(12, 7)).times_geometric(frac<S>(5, 3)) -
                      (QuasiPoly<S>::constant(S(6) * a.a0 - frac<S>(54, 7) * T0) + sums->five * frac<S>(12, 7))
                          .times_geometric(frac<S>(1, 3));
  return Sequence<S>(std::move(prefix), std::move(tail));
}

template <Scalar S>
S dtn_kernel_entry(long i, long j) {
  if (i < 1 || j < 1) throw validation_error("kernel indices start at 1");
  const S r = -frac<S>(27, 8) / (ipow(S(5), i) * ipow(S(3), j));
  if (i == j) return frac<S>(7, 16) + r;
  if (i < j) return frac<S>(3, 4) * ipow(S(3), i - j) + r;
  return frac<S>(3, 4) * ipow(S(5), j - i) + r;
}

template <Scalar S>
Matrix<S> dtn_kernel(int N) {
  check_n(N);
  Matrix<S> K(static_cast<std::size_t>(N), std::vector<S>(static_cast<std::size_t>(N)));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) K[i - 1][j - 1] = dtn_kernel_entry<S>(i, j);
  return K;
}

template <Scalar S>
std::vector<S> dtn_row_sums(int N) {
  const auto K = dtn_kernel<S>(N);
  std::vector<S> out;
  for (const auto& row : K) {
    S s(0);
    for (const auto& x : row) s += x;
    out.push_back(s);
  }
  return out;
}

template <Scalar S>
FluxSeq<S> dtn_apply(const BoundarySeq<S>& a, int N) {
  check_n(N);
  const auto K = dtn_kernel<S>(N);
  const auto tail = a.a.weighted_tail(frac<S>(1, 3), N);
  if (!tail.finite) throw domain_error("boundary data grow too fast");
  const S tau = tail.value / ipow(S(3), N);
  std::vector<S> av(static_cast<std::size_t>(N));
  for (int j = 1; j <= N; ++j) av[j - 1] = a.at(j);
  std::vector<S> eta;
  for (int i = 1; i <= N; ++i) {
    S s = av[i - 1] - upper_factor<S>(i) * tau;
    for (int j = 1; j <= N; ++j) s -= K[i - 1][j - 1] * av[j - 1];
    eta.push_back(frac<S>(16, 7) * ipow(frac<S>(5, 3), i) * s - S(6) * a.a0 / ipow(S(3), i));
  }
  FluxSeq<S> out{Sequence<S>::finite(std::move(eta)), a.a0, std::nullopt};
  if (a.a.has_tail()) out.apex = a.a.limit();
  return out;
}

template <Scalar S>
BoundarySeq<S> dtn_invert(const FluxSeq<S>& f, int N) {
  check_n(N);
  if (!f.a0) throw validation_error("dtn_invert needs a_0");
  if (!f.apex) throw validation_error("dtn_invert needs u(q_0): constants shifted by (4/3)(3/5)^m - 1 share the same flux");
  if (f.eta.available() < N) throw truncation_error("flux window shorter than N");
  const S a0 = *f.a0, A = *f.apex;
  const std::size_t n = static_cast<std::size_t>(N) + 1;
  Matrix<S> M(n, std::vector<S>(n));
  std::vector<S> rhs(n);
  const S scale = ipow(S(3), -N);
  for (int i = 1; i <= N; ++i) {
    auto& row = M[i - 1];
    for (int j = 1; j <= N; ++j) row[j - 1] = (i == j ? S(1) : S(0)) - dtn_kernel_entry<S>(i, j);
    const S v = upper_factor<S>(i) * scale;
    row[N] = -v / S(4);
    rhs[i - 1] = frac<S>(7, 16) * ipow(frac<S>(3, 5), i) * (f.eta.at(i) + S(6) * a0 / ipow(S(3), i)) + v * A / S(2);
  }
  M[N][N - 1] = S(1);
  M[N][N] = S(-1);
  rhs[N] = A;
  auto x = dense_solve(std::move(M), std::move(rhs));
  const S A2 = x[N] * ipow(frac<S>(5, 3), N);
  x.pop_back();
  QuasiPoly<S> tail = QuasiPoly<S>::constant(A) + QuasiPoly<S>::geometric(A2, frac<S>(3, 5));
  return BoundarySeq<S>{a0, Sequence<S>(std::move(x), std::move(tail))};
}

template <Scalar S>
ApexFlux<S> apex_flux(const BoundarySeq<S>& a, ApexOptions opt) {
  if (opt.window < 4) throw validation_error("apex window must be >= 4");
  ApexFlux<S> out;
  std::ostringstream diag;
  auto bracket_at = [&](long m, double& err) {
    const auto T = three_tail(a.a, m);
    err = T.error_bound * to_double(ipow(frac<S>(5, 3), m)) * 30.0 / 7.0;
    return frac<S>(30, 7) * ipow(frac<S>(5, 3), m) * T.value - frac<S>(12, 7) * five_sum(a.a, m) / ipow(S(3), m);
  };

  if (a.a.exact_tail()) {
    out.route = "exact";
    auto sums = data_sums(a.a);
    if (!a.a.limit()) {
      out.diagnostics = "boundary data do not converge";
      return out;
    }
    QuasiPoly<S> b = (sums->three * frac<S>(30, 7)).times_geometric(frac<S>(5, 3)) -
                     (sums->five * frac<S>(12, 7)).times_geometric(frac<S>(1, 3));
    for (int m = 1; m <= opt.window; ++m) {
      double e;
      out.bracket.push_back(bracket_at(m, e));
    }
    if (auto L = b.limit()) {
      out.exists = true;
      out.value = *L;
      out.diagnostics = "bracket has an exact limit";
    } else {
      diag << "bracket tail has a non-decaying mode of ratio " << b.max_ratio();
      out.diagnostics = diag.str();
    }
    return out;
  }

  out.route = "ratio";
  if (!a.a.has_tail()) {
    out.diagnostics = "finite window: existence cannot be decided";
    return out;
  }
  const int W = opt.window;
  std::vector<double> s;
  for (int m = 1; m <= W; ++m)
    s.push_back(to_double(S(5) * a.at(m + 2) - S(8) * a.at(m + 1) + S(3) * a.at(m)));
  bool all_zero = true;
  for (int m = W / 2; m + 1 < W; ++m) {
    if (s[m] == 0 && s[m + 1] == 0) continue;
    all_zero = false;
    if (s[m] == 0) {
      out.max_ratio = std::numeric_limits<double>::infinity();
      continue;
    }
    out.max_ratio = std::max(out.max_ratio, std::abs(s[m + 1] / s[m]));
  }
  double err = 0;
  for (int m = 1; m <= W; ++m) {
    double e;
    out.bracket.push_back(bracket_at(m, e));
    err = e;
  }
  if (!all_zero && out.max_ratio > opt.threshold) {
    diag << "residual 5a_{m+2}-8a_{m+1}+3a_m decays with ratio " << out.max_ratio << " > " << opt.threshold
         << "; last bracket " << to_double(out.bracket.back());
    out.diagnostics = diag.str();
    return out;
  }
  out.exists = true;
  out.value = out.bracket.back();
  diag << "ratio test passed (max ratio " << out.max_ratio << "); tail error " << err;
  out.diagnostics = diag.str();
  return out;
}

#define HG_INSTANTIATE(S)                                                   \
  template EtaPair<S> eta_from_data<S>(const BoundarySeq<S>&, long);        \
  template Sequence<S> flux_sequence<S>(const BoundarySeq<S>&);             \
  template S dtn_kernel_entry<S>(long, long);                               \
  template Matrix<S> dtn_kernel<S>(int);                                    \
  template std::vector<S> dtn_row_sums<S>(int);                             \
  template FluxSeq<S> dtn_apply<S>(const BoundarySeq<S>&, int);             \
  template BoundarySeq<S> dtn_invert<S>(const FluxSeq<S>&, int);            \
  template ApexFlux<S> apex_flux<S>(const BoundarySeq<S>&, ApexOptions);

HG_INSTANTIATE(Rational)
HG_INSTANTIATE(double)

}  // namespace halfgasket
