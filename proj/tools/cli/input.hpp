#pragma once

#include <string>

#include <json.hpp>

#include "halfgasket/green.hpp"
#include "halfgasket/sequence.hpp"
#include "halfgasket/trace.hpp"

namespace halfgasket::cli {

using json = nlohmann::ordered_json;

// validation_error carrying line and column on malformed text.
json parse_json_text(const std::string& text, const std::string& source);
json read_json_file(const std::string& path);

template <Scalar S>
S scalar_from(const json& j, const std::string& what);

// {"terms": [...]} with constant, geometric, explicit and power terms.
template <Scalar S>
Sequence<S> sequence_from(const json& j, const std::string& what);

// {"a0": s, "terms": [...]}
template <Scalar S>
BoundarySeq<S> boundary_from(const json& j);

// {"a0": s, "apex": s, "eta": {"terms": [...]}}
template <Scalar S>
FluxSeq<S> flux_from(const json& j);

// {"a": seq, "eta": seq, "a0"?, "eta0"?}, {"harmonic": [u0, u1, u2]}, or
// boundary data (trace of the continuous solution).
template <Scalar S>
TracePair<S> trace_from(const json& j);

// x:m, y:m, z:m, q:j or w:<word>:<corner>
Vertex point_from(const std::string& spec);

// const:c or cell:<word>:c
template <Scalar S>
CellField<S> field_from(const std::string& spec);

template <Scalar S>
json to_json(const S& x) {
  if constexpr (is_exact_v<S>) return x.str();
  else return x;
}

}  // namespace halfgasket::cli
