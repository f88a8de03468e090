#include "input.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "halfgasket/errors.hpp"
#include "halfgasket/flux.hpp"

namespace halfgasket::cli {

namespace {

constexpr std::size_t kMaxScalarChars = 256;
constexpr std::size_t kMaxValues = 100000;
constexpr std::size_t kMaxTerms = 64;
constexpr int kMaxPower = 8;

[[noreturn]] void bad(const std::string& what, const std::string& msg) {
  throw validation_error(what + ": " + msg);
}

const json& member(const json& j, const char* key, const std::string& what) {
  if (!j.is_object()) bad(what, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(what, std::string("missing \"") + key + "\"");
  return *it;
}

long int_from(const json& j, const std::string& what, long lo, long hi) {
  if (!j.is_number_integer()) bad(what, "expected an integer");
  const long v = j.get<long>();
  if (v < lo || v > hi) bad(what, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

long parse_int(std::string_view s, const std::string& what) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad(what, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

template <Scalar S>
Sequence<S> term_from(const json& t, const std::string& what, bool allow_explicit);

template <Scalar S>
Sequence<S> tail_from(const json& t, const std::string& what) {
  if (t.is_array()) {
    if (t.size() > kMaxTerms) bad(what, "too many terms");
    Sequence<S> s = Sequence<S>::constant(S(0));
    for (std::size_t i = 0; i < t.size(); ++i) s += term_from<S>(t[i], what + "[" + std::to_string(i) + "]", false);
    return s;
  }
  return term_from<S>(t, what, false);
}

template <Scalar S>
Sequence<S> term_from(const json& t, const std::string& what, bool allow_explicit) {
  const auto& type = member(t, "type", what);
  if (!type.is_string()) bad(what, "\"type\" must be a string");
  const auto kind = type.get<std::string>();
  if (kind == "constant") return Sequence<S>::constant(scalar_from<S>(member(t, "A", what), what + ".A"));
  if (kind == "geometric") {
    const S A1 = t.contains("A1") ? scalar_from<S>(t["A1"], what + ".A1") : S(0);
    const S A2 = scalar_from<S>(member(t, "A2", what), what + ".A2");
    const S r = scalar_from<S>(member(t, "r", what), what + ".r");
    if (is_zero(r)) bad(what, "ratio r must be nonzero");
    return Sequence<S>::constant(A1) + Sequence<S>::geometric(A2, r);
  }
  if (kind == "power") {
    // coeff * ratio^m / (m + offset)^p
    const S c = scalar_from<S>(member(t, "coeff", what), what + ".coeff");
    const int p = static_cast<int>(int_from(member(t, "p", what), what + ".p", 1, kMaxPower));
    const long off = t.contains("offset") ? int_from(t["offset"], what + ".offset", 0, 1000000) : 0;
    const S ratio = t.contains("ratio") ? scalar_from<S>(t["ratio"], what + ".ratio") : S(1);
    if (is_zero(ratio)) bad(what, "ratio must be nonzero");
    return Sequence<S>({}, {}, {PowerTerm<S>{c, ratio, off, p}});
  }
  if (kind == "explicit") {
    if (!allow_explicit) bad(what, "explicit terms cannot be nested");
    const auto& vals = member(t, "values", what);
    if (!vals.is_array()) bad(what, "\"values\" must be an array");
    if (vals.size() > kMaxValues) throw resource_limit_error(what + ": too many values");
    std::vector<S> prefix;
    prefix.reserve(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) prefix.push_back(scalar_from<S>(vals[i], what + ".values[" + std::to_string(i) + "]"));
    if (!t.contains("tail") || t["tail"].is_null()) return Sequence<S>::finite(std::move(prefix));
    // the tail formula is evaluated at the absolute index m > len(values)
    auto tail = tail_from<S>(t["tail"], what + ".tail");
    if (!tail.has_tail() || tail.prefix_length() > 0) bad(what, "tail must be a closed-form term");
    return Sequence<S>(std::move(prefix), tail.tail(), tail.powers());
  }
  bad(what, "unknown term type '" + kind + "' (constant|geometric|explicit|power)");
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points one past the offending character
    const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
    std::string msg = e.what();
    auto pos = msg.find("syntax error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    throw validation_error(source + ": malformed JSON at " + line_col(text, at) + ": " + msg);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

template <Scalar S>
S scalar_from(const json& j, const std::string& what) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return parse_scalar<S>(std::to_string(j.get<unsigned long long>()));
    return parse_scalar<S>(std::to_string(j.get<long long>()));
  }
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) bad(what, "non-finite number");
    return parse_scalar<S>(j.dump());
  }
  if (!j.is_string()) bad(what, "expected a number or a string such as \"3/5\"");
  const auto& s = j.get_ref<const std::string&>();
  if (s.size() > kMaxScalarChars) bad(what, "scalar literal longer than " + std::to_string(kMaxScalarChars) + " characters");
  try {
    return parse_scalar<S>(s);
  } catch (const validation_error& e) {
    bad(what, e.what());
  }
}

template <Scalar S>
Sequence<S> sequence_from(const json& j, const std::string& what) {
  const auto& terms = member(j, "terms", what);
  if (!terms.is_array()) bad(what, "\"terms\" must be an array");
  if (terms.size() > kMaxTerms) bad(what, "too many terms");
  Sequence<S> s = Sequence<S>::constant(S(0));
  for (std::size_t i = 0; i < terms.size(); ++i)
    s += term_from<S>(terms[i], what + ".terms[" + std::to_string(i) + "]", true);
  return s;
}

template <Scalar S>
BoundarySeq<S> boundary_from(const json& j) {
  BoundarySeq<S> b;
  b.a0 = scalar_from<S>(member(j, "a0", "data"), "data.a0");
  b.a = sequence_from<S>(j, "data");
  return b;
}

template <Scalar S>
FluxSeq<S> flux_from(const json& j) {
  FluxSeq<S> f;
  f.eta = sequence_from<S>(member(j, "eta", "data"), "data.eta");
  if (j.contains("a0")) f.a0 = scalar_from<S>(j["a0"], "data.a0");
  if (j.contains("apex")) f.apex = scalar_from<S>(j["apex"], "data.apex");
  return f;
}

template <Scalar S>
TracePair<S> trace_from(const json& j) {
  if (!j.is_object()) bad("data", "expected an object");
  if (j.contains("harmonic")) {
    const auto& h = j["harmonic"];
    if (!h.is_array() || h.size() != 3) bad("data.harmonic", "expected [u0, u1, u2]");
    return TracePair<S>::of_harmonic(scalar_from<S>(h[0], "data.harmonic[0]"), scalar_from<S>(h[1], "data.harmonic[1]"),
                                     scalar_from<S>(h[2], "data.harmonic[2]"));
  }
  if (j.contains("eta")) {
    TracePair<S> t;
    t.a = sequence_from<S>(member(j, "a", "data"), "data.a");
    t.eta = sequence_from<S>(j["eta"], "data.eta");
    if (j.contains("a0")) t.a0 = scalar_from<S>(j["a0"], "data.a0");
    if (j.contains("eta0")) t.eta0 = scalar_from<S>(j["eta0"], "data.eta0");
    return t;
  }
  const auto b = boundary_from<S>(j);
  TracePair<S> t;
  t.a = b.a;
  t.eta = flux_sequence(b);
  return t;
}

Vertex point_from(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string what = "point '" + spec + "'";
  if (parts.size() == 2) {
    const long m = parse_int(parts[1], what);
    if (m < 0 || m > 60) bad(what, "index out of range");
    const int k = static_cast<int>(m);
    if (parts[0] == "x") {
      if (k < 1) bad(what, "x_m needs m >= 1");
      return x_point(k);
    }
    if (parts[0] == "y") return y_point(k);
    if (parts[0] == "z") return z_point(k);
    if (parts[0] == "q") {
      if (k > 2) bad(what, "corner index must be 0, 1 or 2");
      return corner_point(k);
    }
  }
  if (parts.size() == 3 && parts[0] == "w") {
    const long j = parse_int(parts[2], what);
    if (j < 0 || j > 2) bad(what, "corner index must be 0, 1 or 2");
    if (parts[1].size() > 60) bad(what, "word too long");
    return Vertex(Word::parse(parts[1]), static_cast<int>(j));
  }
  bad(what, "expected x:m, y:m, z:m, q:j or w:<word>:<corner>");
}

template <Scalar S>
CellField<S> field_from(const std::string& spec) {
  const auto parts = split(spec, ':');
  const std::string what = "source '" + spec + "'";
  if (parts.size() == 2 && parts[0] == "const") return CellField<S>::constant(scalar_from<S>(json(parts[1]), what));
  if (parts.size() == 3 && parts[0] == "cell") {
    if (parts[1].size() > 12) bad(what, "cell word longer than 12 digits");
    auto f = CellField<S>::indicator(Word::parse(parts[1]));
    const S c = scalar_from<S>(json(parts[2]), what);
    for (auto& v : f.values) v *= c;
    return f;
  }
  bad(what, "expected const:<c> or cell:<word>:<c>");
}

#define HG_INSTANTIATE(S)                                          \
  template S scalar_from<S>(const json&, const std::string&);     \
  template Sequence<S> sequence_from<S>(const json&, const std::string&); \
  template BoundarySeq<S> boundary_from<S>(const json&);          \
  template FluxSeq<S> flux_from<S>(const json&);                  \
  template TracePair<S> trace_from<S>(const json&);               \
  template CellField<S> field_from<S>(const std::string&);
HG_INSTANTIATE(Rational)
HG_INSTANTIATE(double)
#undef HG_INSTANTIATE

}  // namespace halfgasket::cli
