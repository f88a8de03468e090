#pragma once

#include <string>
#include <vector>

#include "halfgasket/bvp.hpp"
#include "halfgasket/linalg.hpp"
#include "halfgasket/sequence.hpp"

namespace halfgasket {

// All fluxes here are eta_m = outward normal derivative of the cell Y_m at x_m.

template <Scalar S>
struct EtaPair {
  S closed;        // from the data through the tail sums
  S via_solution;  // (5/3)^m [2 a_m - u(y_m) - u(y_{m-1})]
  double error_bound = 0;
};

// Both routes; throws internal_error when they disagree.
template <Scalar S>
EtaPair<S> eta_from_data(const BoundarySeq<S>& a, long m);

// eta as a sequence with exact tail; needs data with an exact tail.
template <Scalar S>
Sequence<S> flux_sequence(const BoundarySeq<S>& a);

// K_{ij}, 1-based.
template <Scalar S>
S dtn_kernel_entry(long i, long j);

template <Scalar S>
Matrix<S> dtn_kernel(int N);

// sum_j K_ij for the N x N truncation
template <Scalar S>
std::vector<S> dtn_row_sums(int N);

// eta_1..eta_N from the matrix form; the part of the data beyond N is folded
// in through its tail sum.
template <Scalar S>
FluxSeq<S> dtn_apply(const BoundarySeq<S>& a, int N);

// Recover a from (eta_1..eta_N, a_0, u(q_0)). Beyond N the data are assumed to
// be A + A2 (3/5)^m; A2 is solved for together with a_1..a_N.
template <Scalar S>
BoundarySeq<S> dtn_invert(const FluxSeq<S>& eta, int N);

template <Scalar S>
struct ApexFlux {
  bool exists = false;
  std::optional<S> value;
  std::string route;  // "exact" or "ratio"
  std::vector<S> bracket;
  double max_ratio = 0;
  std::string diagnostics;
};

struct ApexOptions {
  int window = 24;
  double threshold = 0.54;
};

// Normal derivative at q_0 as the limit of the bracket
//   (5/3)^m (30/7) T(m) - 3^{-m} (12/7) sum_{k<=m} 5^k a_k.
template <Scalar S>
ApexFlux<S> apex_flux(const BoundarySeq<S>& a, ApexOptions opt = {});

}  // namespace halfgasket
