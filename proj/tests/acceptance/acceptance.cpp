// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "../support/fuzz_corpus.hpp"
#include "../support/test_support.hpp"
#include "halfgasket/bvp.hpp"
#include "halfgasket/errors.hpp"
#include "halfgasket/flux.hpp"
#include "halfgasket/green.hpp"
#include "halfgasket/spectra.hpp"
#include "halfgasket/trace.hpp"

using namespace halfgasket;
using R = Rational;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Sequence<R> gen(const QuasiPoly<R>& q) { return Sequence<R>::generator(q); }
QuasiPoly<R> geo(const R& c, const R& r) { return QuasiPoly<R>::geometric(c, r); }
QuasiPoly<R> cst(const R& c) { return QuasiPoly<R>::constant(c); }

BoundarySeq<R> skew_data() { return BoundarySeq<R>::constant(R(1), R(0)); }
BoundarySeq<R> symmetric_data() { return BoundarySeq<R>::geometric(R(1), R(0), R(4, 3), R(3, 5)); }
BoundarySeq<R> constant_data() { return BoundarySeq<R>::constant(R(1), R(1)); }

// 1 -------------------------------------------------------------------------
void criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  const int M = 6;
  std::size_t compared = 0;
  const std::pair<const char*, BoundarySeq<R>> cases[] = {
      {"skew", skew_data()}, {"symmetric", symmetric_data()}, {"constant", constant_data()}};
  for (const auto& [name, data] : cases) {
    const auto sol = solve_continuous(data, M);
    const auto orc = oracle_graph_solve(data, M);
    bool same = true;
    for (std::size_t i = 0; i < orc.values.size(); ++i) {
      if (!orc.region[i]) continue;
      ++compared;
      same = same && sol.value_at(orc.graph->vertices[i]) == orc.values[i];
    }
    // the one vertex of the closed half outside the oracle region
    same = same && sol.value_at(corner_point(0)) == *data.a.limit();
    o.require(same, std::string(name) + " differs from the oracle");
  }
  const double dt = seconds_since(t0);
  o.require(dt < 10.0, "runtime");
  o.detail << compared << " vertex values on level 6, exact rational equality, " << dt << " s (limit 10 s)";
}

// 2 -------------------------------------------------------------------------
R cell_energy(const Cell<R>& c) {
  const auto& v = c.values;
  return ipow(R(5, 3), c.word.size()) *
         ((v[0] - v[1]) * (v[0] - v[1]) + (v[1] - v[2]) * (v[1] - v[2]) + (v[0] - v[2]) * (v[0] - v[2]));
}

double direct_partial(const std::function<double(long)>& a, long K) {
  double s = 0;
  for (long m = 1; m <= K; ++m) s += std::pow(5.0 / 3.0, static_cast<double>(m)) * std::pow(a(m + 1) - a(m), 2);
  return s;
}

void criterion2(Outcome& o) {
  const auto rep = energy_report(solve_continuous(skew_data(), 8));
  o.require(rep.total.exact && rep.total.value == R(3), "E(h_s|Omega) = " + rep.total.value.str());

  const auto h = harmonic_extend<R>({R(0), R(1), R(-1)}, 6);
  R left(0), right(0), axis(0);
  for (const auto& c : h.cells()) {
    int k = 0;
    while (k < c.word.size() && c.word[k] == 0) ++k;
    R& bucket = k == c.word.size() ? axis : (c.word[k] == 1 ? left : right);
    bucket += cell_energy(c);
  }
  const R global = left + right + axis;
  o.require(global == R(6), "global energy " + global.str());
  o.require(left + axis / R(2) == R(3) && right + axis / R(2) == R(3), "halves not symmetric");

  std::mt19937_64 g(2002);
  int sandwiched = 0;
  for (int trial = 0; trial < 100; ++trial) {
    BoundarySeq<R> d{hgtest::rand_rational(g), gen(cst(hgtest::rand_rational(g)) +
                                                   hgtest::rand_quasi(g, {R(3, 5), R(1, 2), R(-1, 5), R(2, 3), R(-3, 4)}))};
    const auto e = energy_report(solve_continuous(d, 5));
    if (e.finite && e.lower.value <= e.total.value && e.total.value <= e.upper.value) ++sandwiched;
  }
  o.require(sandwiched == 100, "sandwich held on " + std::to_string(sandwiched) + "/100");

  struct Verdict {
    const char* name;
    BoundarySeq<double> data;
    std::function<double(long)> a;
  };
  const Verdict vs[] = {
      {"(3/5)^m", {0.0, Sequence<double>::geometric(1.0, 0.6)}, [](long m) { return std::pow(0.6, static_cast<double>(m)); }},
      {"1/m", {0.0, Sequence<double>::power(1.0, 1)}, [](long m) { return 1.0 / static_cast<double>(m); }},
      {"1/m^2", {0.0, Sequence<double>::power(1.0, 2)}, [](long m) { return 1.0 / static_cast<double>(m * m); }},
  };
  std::string verdicts;
  for (const auto& v : vs) {
    const bool lib_finite = energy_report(solve_continuous(v.data, 6)).finite;
    const bool direct_finite = !(direct_partial(v.a, 80) > 2 * direct_partial(v.a, 40));
    o.require(lib_finite == direct_finite, std::string("verdict for ") + v.name);
    verdicts += std::string(verdicts.empty() ? "" : ", ") + v.name + (lib_finite ? " finite" : " infinite");
  }
  o.detail << "E(h_s|Omega)=3, E(h_s)=6 split 3+3, sandwich 5/8..10/3 on 100/100, verdicts: " << verdicts;
}

// 3 -------------------------------------------------------------------------
void criterion3(Outcome& o) {
  std::mt19937_64 g(2003);
  int agreeing = 0, total = 0;
  for (int trial = 0; trial < 12; ++trial) {
    BoundarySeq<R> d{hgtest::rand_rational(g),
                     gen(cst(hgtest::rand_rational(g)) + hgtest::rand_quasi(g, {R(3, 5), R(1, 2), R(-1, 5), R(2, 7)}))};
    for (int m = 1; m <= 20; ++m, ++total) {
      const auto e = eta_from_data(d, m);
      agreeing += e.closed == e.via_solution;
    }
  }
  o.require(agreeing == total, "routes disagree");
  bool zero = true, skew = true;
  for (int m = 1; m <= 20; ++m) {
    zero = zero && eta_from_data(constant_data(), m).closed == R(0);
    skew = skew && eta_from_data(skew_data(), m).closed == R(-6) / ipow(R(3), m);
  }
  o.require(zero, "constant data flux");
  o.require(skew, "skew data flux");
  o.detail << total << " (data, m) pairs with both routes equal, constant => 0, skew => -6/3^m, m <= 20, exact";
}

// 4 -------------------------------------------------------------------------
void criterion4(Outcome& o) {
  std::mt19937_64 g(2004);
  int exact = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const R A2 = hgtest::rand_rational(g);
    const auto ap = apex_flux(BoundarySeq<R>::geometric(hgtest::rand_rational(g), hgtest::rand_rational(g), A2, R(3, 5)));
    exact += ap.exists && ap.value && *ap.value == R(-3, 2) * A2;
  }
  o.require(exact == 20, "geometric data: " + std::to_string(exact) + "/20");

  double worst = 0;
  int harmonic_ok = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const R u0 = hgtest::rand_rational(g), u1 = hgtest::rand_rational(g), u2 = hgtest::rand_rational(g);
    BoundarySeq<R> d{u1, gen(cst(u0) + geo((u1 + u2 - R(2) * u0) * R(2, 3), R(3, 5)))};
    const auto h = harmonic_extend<R>({u0, u1, u2}, 6);
    bool data_ok = true;
    for (int m = 1; m <= 6; ++m) data_ok = data_ok && d.a.at(m) == h.value_at(x_point(m));
    const auto hd = harmonic_extend<double>({u0.to_double(), u1.to_double(), u2.to_double()}, 8);
    const auto lim = normal_derivative_limit<double>([&](const Vertex& v) { return hd.value_at(v); }, Word(), 0);
    const auto ap = apex_flux(d);
    if (data_ok && ap.value && *ap.value == R(2) * u0 - u1 - u2) ++harmonic_ok;
    if (ap.value) worst = std::max(worst, std::abs(ap.value->to_double() - lim.value));
  }
  o.require(harmonic_ok == 10, "global harmonics: " + std::to_string(harmonic_ok) + "/10");
  o.require(worst < 1e-9, "difference-quotient limit off by " + std::to_string(worst));
  const auto slow = apex_flux(BoundarySeq<double>{0.0, Sequence<double>::power(1.0, 1)});
  o.require(!slow.exists, "1/m reported a limit");
  o.detail << "-(3/2)A2 exact on 20/20, global harmonics 10/10 (limit tol 1e-9, worst " << worst
           << "), 1/m => does not exist";
}

// 5 -------------------------------------------------------------------------
void criterion5(Outcome& o) {
  const auto t0 = Clock::now();
  o.require(dtn_kernel_entry<R>(1, 1) == R(17, 80), "K11");
  const int Nmax = 200;
  std::vector<R> rows(static_cast<std::size_t>(Nmax + 1), R(0));
  bool below = true;
  for (int N = 1; N <= Nmax; ++N) {
    for (int i = 1; i < N; ++i) rows[static_cast<std::size_t>(i)] += dtn_kernel_entry<R>(i, N);
    for (int j = 1; j <= N; ++j) rows[static_cast<std::size_t>(N)] += dtn_kernel_entry<R>(N, j);
    for (int i = 1; i <= N; ++i) below = below && rows[static_cast<std::size_t>(i)] < R(1);
  }
  o.require(below, "a truncated row sum reached 1");

  std::mt19937_64 g(2005);
  std::uniform_real_distribution<double> u(-2, 2);
  const double ratios[] = {0.5, 0.2, -1.0 / 3, 0.4};
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> prefix;
    for (int i = 0; i < 5; ++i) prefix.push_back(u(g));
    QuasiPoly<double> tail = QuasiPoly<double>::constant(u(g)) + QuasiPoly<double>::geometric(u(g), 0.6) +
                             QuasiPoly<double>::geometric(u(g), ratios[trial % 4]);
    BoundarySeq<double> d{u(g), Sequence<double>(prefix, tail)};
    const int N = 40;
    const auto back = dtn_invert(dtn_apply(d, N), N);
    for (int m = 1; m <= N; ++m) worst = std::max(worst, std::abs(back.a.at(m) - d.a.at(m)));
  }
  o.require(worst < 1e-10, "roundtrip error " + std::to_string(worst));
  const double dt = seconds_since(t0);
  o.require(dt < 5.0, "runtime");
  o.detail << "K11=17/80, row sums < 1 for all N <= 200 (exact), roundtrip max error " << worst
           << " < 1e-10 on 20 cases at N=40, " << dt << " s (limit 5 s)";
}

// 6 -------------------------------------------------------------------------
void criterion6(Outcome& o) {
  o.require(green_series<R>(x_point(1), x_point(1), 1) == R(9, 50), "G(x1,x1)");
  const auto g5 = graph_at(5);
  std::size_t checked = 0;
  bool closed = true;
  for (int m = 1; m <= 4; ++m)
    for (int M = m; M <= 5; ++M)
      for (const auto& y : g5->vertices) {
        closed = closed && green_series<R>(x_point(m), y, M) == green_closed_x<R>(m, y);
        ++checked;
      }
  o.require(closed, "series and closed form differ");
  const auto f = CellField<R>::constant(R(1));
  const auto u = solve_poisson(f, 7, Domain::sg);
  o.require(u.at(x_point(1)) == R(1, 15), "u(x1) = " + u.at(x_point(1)).str());
  const auto orc = poisson_graph_oracle(f, 7, Domain::sg);
  double worst = 0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    worst = std::max(worst, std::abs((u.values[i] - orc.values[i]).to_double()));
  o.require(worst < 1e-3, "oracle deviation");
  o.detail << "G(x1,x1)=9/50, G_M(x_m,.) = closed form on " << checked
           << " (m<=4, m<=M<=5, y in V_5) exact, u(x1)=1/15 exact, level-7 oracle deviation " << worst << " (tol 1e-3)";
}

// 7 -------------------------------------------------------------------------
void criterion7(Outcome& o) {
  std::mt19937_64 g(2007);
  int identity = 0, glued = 0, outputs = 0;
  for (int trial = 0; trial < 20; ++trial) {
    TracePair<R> t;
    t.a = gen(cst(hgtest::rand_rational(g)) + hgtest::rand_quasi(g, {R(3, 5), R(1, 5), R(-1, 3)}));
    t.eta = gen(hgtest::rand_quasi(g, {R(1, 3), R(1, 9), R(-1, 4)}));
    const auto E = extend_E(t, 6);
    const auto back = restrict_trace(E.u, 6);
    bool same = true;
    for (int m = 1; m <= 6; ++m) same = same && back.a.at(m) == t.a.at(m) && back.eta.at(m) == t.eta.at(m);
    identity += same;
    ++outputs;
    glued += verify_gluing(E.u).glued();
  }
  for (int trial = 0; trial < 12; ++trial) {
    const auto d = trial == 0 ? skew_data()
                   : trial == 1
                       ? symmetric_data()
                       : BoundarySeq<R>{hgtest::rand_rational(g),
                                        gen(cst(hgtest::rand_rational(g)) + hgtest::rand_quasi(g, {R(3, 5), R(1, 5), R(1, 2)}))};
    const auto E = extend_E_omega(solve_continuous(d, 7), 6);
    ++outputs;
    glued += verify_gluing(E.u).glued();
  }
  o.require(identity == 20, "R o E on " + std::to_string(identity) + "/20");
  o.require(glued == outputs, "glued " + std::to_string(glued) + "/" + std::to_string(outputs));

  const auto even = verify_gluing(even_reflection(solve_continuous(skew_data(), 7), 6));
  int hits = 0;
  for (const auto& e : even.entries)
    for (int m = 1; m <= 6; ++m)
      if (e.v == x_point(m) && e.matching == R(-12) / ipow(R(3), m) && e.continuity == R(0)) ++hits;
  o.require(hits == 6, "even reflection residuals");

  bool zero_lap = true;
  for (int trial = 0; trial < 5; ++trial) {
    const R C1 = hgtest::rand_rational(g), C2 = hgtest::rand_rational(g);
    const auto t = TracePair<R>::of_harmonic(R(0), C1, C2);
    for (int m = 1; m <= 6; ++m) zero_lap = zero_lap && t.a_at(m) == R(2, 3) * ipow(R(3, 5), m) * (C1 + C2);
    const auto E = extend_E(t, 6);
    for (std::size_t i = 0; i < E.C_Y.size(); ++i) zero_lap = zero_lap && E.C_Y[i] == R(0) && E.C_Z[i] == R(0);
  }
  o.require(zero_lap, "harmonic special case");
  o.detail << "R o E = Id on 20/20, " << glued << "/" << outputs
           << " E and E_Omega outputs glued with zero residuals, even reflection matching -12/3^m at x_1..x_6, harmonic case C_m = 0 (all exact)";
}

// 8 -------------------------------------------------------------------------
void criterion8(Outcome& o) {
  std::mt19937_64 g(2008);
  int ok[4] = {0, 0, 0, 0};
  const int n = 200, M = 20;
  for (int trial = 0; trial < n; ++trial) {
    const R A = hgtest::rand_rational(g), B = hgtest::rand_rational(g);
    {
      const auto a = gen(geo(A, R(3, 5)) + hgtest::rand_quasi(g, {R(1, 5), R(-1, 5), R(1, 10), R(1, 25)}));
      const auto d = decompose_geometric(a);
      bool re = d.A1.has_value();
      for (int m = 1; re && m <= M; ++m) re = *d.A1 * ipow(R(3, 5), m) + d.residual.at(m) == a.at(m);
      ok[0] += re && d.holds;
    }
    {
      const R r = trial % 2 ? R(5, 3) : R(3, 5);
      const auto a = trial % 2 ? gen(cst(A) + hgtest::rand_quasi(g, {R(1, 3), R(1, 5), R(-1, 2)}))
                               : gen(hgtest::rand_quasi(g, {R(1, 2), R(-1, 3), R(9, 10), R(1, 5)}));
      const auto d = decompose_series(a, r);
      bool re = true;
      for (int m = 1; re && m <= M; ++m) re = (d.A1 ? *d.A1 : R(0)) + d.residual.at(m) == a.at(m);
      ok[1] += re && d.holds;
    }
    {
      const auto a = gen(cst(A) + geo(B, R(3, 5)) + hgtest::rand_quasi(g, {R(1, 5), R(1, 3), R(-1, 4), R(1, 10)}));
      const auto d = decompose_affine(a);
      bool re = d.A1 && d.A2;
      for (int m = 1; re && m <= M; ++m) re = *d.A1 + *d.A2 * ipow(R(3, 5), m) + d.residual.at(m) == a.at(m);
      ok[2] += re && d.holds;
    }
    {
      const auto e = gen(geo(A, R(5)) + hgtest::rand_quasi(g, {R(1, 3), R(1, 2), R(-1, 3), R(1, 5)}));
      const auto d = decompose_growth(e);
      bool re = d.A1.has_value();
      for (int m = 1; re && m <= M; ++m) re = *d.A1 * ipow(R(5), m) + d.residual.at(m) == e.at(m);
      ok[3] += re && d.holds;
    }
  }
  const char* names[] = {"geometric", "series", "affine", "growth"};
  for (int i = 0; i < 4; ++i) {
    o.require(ok[i] == n, std::string(names[i]) + " " + std::to_string(ok[i]) + "/200");
    o.detail << (i ? ", " : "") << names[i] << " " << ok[i] << "/" << n;
  }
  o.detail << " (exact reassembly for m <= 20, bounds in double)";
}

// 9 -------------------------------------------------------------------------
bool values_are(const Spectrum& s, std::vector<double> want) {
  if (s.values.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i)
    if (std::abs(s.values[i] - want[i]) > 1e-10) return false;
  return true;
}

void criterion9(Outcome& o) {
  const auto t0 = Clock::now();
  const auto d1 = graph_spectrum(1, BoundaryCondition::dirichlet);
  o.require(values_are(d1, {2, 5, 5}), "Gamma_1 Dirichlet");
  const auto n0 = graph_spectrum(0, BoundaryCondition::neumann);
  o.require(values_are(n0, {0, 3, 3}), "Gamma_0 Neumann");
  const auto five = exact_count(graph_operator(2, BoundaryCondition::dirichlet), 5);
  o.require(five.multiplicity == 3 && five.odd == 2 && five.even == 1, "Gamma_2 eigenvalue 5 split");
  int totals = 0;
  for (int m = 0; m <= 3; ++m)
    for (auto bc : {BoundaryCondition::dirichlet, BoundaryCondition::neumann}) {
      if (m == 0 && bc == BoundaryCondition::dirichlet) continue;
      const auto r = symmetry_counts(m, bc);
      o.require(r.totals_match, "totals at level " + std::to_string(m) + " " + to_string(bc));
      ++totals;
    }
  int census = 0, rows = 0;
  for (const auto& r : series_census(3)) {
    ++rows;
    census += r.match;
  }
  o.require(census == rows, "series census");
  const double dt = seconds_since(t0);
  o.require(dt < 30.0, "runtime");
  o.detail << "{2,5,5}, {0,3,3} (tol 1e-10), eigenvalue 5 on Gamma_2: 3 = 2 odd + 1 even (exact), even/odd totals "
           << totals << "/" << totals << " for m <= 3, census " << census << "/" << rows << ", " << dt
           << " s (limit 30 s)";
}

// 10 ------------------------------------------------------------------------
void criterion10(Outcome& o) {
  const auto d = [](const char* n) { return hgtest::data_file(n); };
  const std::vector<std::vector<std::string>> cmds = {
      {"graph", "--level", "3", "--format", "json"},
      {"solve", "--data", d("symmetric.json"), "--trunc", "8"},
      {"solve", "--data", d("inverse_m.json"), "--trunc", "5", "--backend", "float", "--format", "json"},
      {"energy", "--data", d("skew.json"), "--format", "json"},
      {"flux", "--data", d("inverse_m.json"), "--backend", "float", "--format", "json"},
      {"dtn", "apply", "--data", d("symmetric.json"), "--trunc", "20"},
      {"green", "--x", "x:2", "--y", "w:0121:0", "--domain", "omega"},
      {"poisson", "--f", "const:1", "--level", "4", "--domain", "omega", "--backend", "float"},
      {"trace", "--data", d("symmetric.json")},
      {"extend", "--mode", "Eomega", "--data", d("symmetric.json"), "--trunc", "5"},
      {"spectra", "--level", "3", "--bc", "neumann", "--format", "json"},
      {"spectra", "--level", "3", "--census"},
  };
  int identical = 0;
  for (const auto& c : cmds) {
    const auto a = hgtest::run_cli(c), b = hgtest::run_cli(c);
    identical += a.code == 0 && !a.out.empty() && a.out == b.out && a.err == b.err;
  }
  o.require(identical == static_cast<int>(cmds.size()), "non-identical output");
  const auto fz = hgtest::run_fuzz_battery(1000, 1016);
  o.require(fz.internal == 0, "fuzz hit internal errors");
  o.detail << identical << "/" << cmds.size() << " commands byte-identical on rerun; fuzz 1000 mutated JSON: " << fz.ok
           << " ok, " << fz.invalid << " exit 2, " << fz.no_convergence << " exit 3, " << fz.internal << " internal";
}

}  // namespace

int main() {
  const std::pair<const char*, void (*)(Outcome&)> criteria[] = {
      {"closed-form BVP equals graph oracle", criterion1},
      {"energy values, sandwich and finiteness verdicts", criterion2},
      {"flux: closed form vs solution route", criterion3},
      {"apex flux", criterion4},
      {"Dirichlet-to-Neumann map", criterion5},
      {"Green's function and Poisson problem", criterion6},
      {"trace and extension", criterion7},
      {"sequence decompositions", criterion8},
      {"graph spectra and symmetry counts", criterion9},
      {"determinism and fuzzing", criterion10},
  };
  int failures = 0, index = 0;
  for (const auto& [title, fn] : criteria) {
    ++index;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << index << "] " << title << ": " << o.detail.str() << " ("
              << seconds_since(t0) << " s)" << std::endl;
  }
  return failures;
}
