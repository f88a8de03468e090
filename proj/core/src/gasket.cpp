#include "halfgasket/gasket.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "halfgasket/errors.hpp"

namespace halfgasket {

namespace {
constexpr int kMaxWord = 30;

void check_digit(int d) {
  if (d < 0 || d > 2) throw validation_error("address digit must be 0, 1 or 2");
}
}  // namespace

Word::Word(std::vector<std::uint8_t> d) : digits(std::move(d)) {
  for (auto x : digits) check_digit(x);
  if (size() > kMaxWord) throw resource_limit_error("word longer than 30 digits");
}

Word Word::parse(std::string_view text) {
  std::vector<std::uint8_t> d;
  for (char c : text) {
    if (c < '0' || c > '2') throw validation_error("word '" + std::string(text) + "' has a digit outside 0..2");
    d.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Word(std::move(d));
}

Word Word::zeros(int k, std::vector<std::uint8_t> tail) {
  if (k < 0) throw validation_error("negative word length");
  std::vector<std::uint8_t> d(static_cast<std::size_t>(k), 0);
  d.insert(d.end(), tail.begin(), tail.end());
  return Word(std::move(d));
}

Word Word::from_code(std::uint64_t code, int length) {
  std::vector<std::uint8_t> d(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    d[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(code % 3);
    code /= 3;
  }
  return Word(std::move(d));
}

std::uint64_t Word::code() const {
  std::uint64_t c = 0;
  for (auto d : digits) c = c * 3 + d;
  return c;
}

bool Word::is_prefix_of(const Word& other) const {
  return size() <= other.size() && std::equal(digits.begin(), digits.end(), other.digits.begin());
}

Word Word::child(int d) const {
  check_digit(d);
  Word w = *this;
  w.digits.push_back(static_cast<std::uint8_t>(d));
  if (w.size() > kMaxWord) throw resource_limit_error("word longer than 30 digits");
  return w;
}

Word Word::prefix(int n) const {
  Word w;
  w.digits.assign(digits.begin(), digits.begin() + std::min(n, size()));
  return w;
}

std::string Word::str() const {
  std::string s;
  for (auto d : digits) s.push_back(static_cast<char>('0' + d));
  return s;
}

Vertex::Vertex(Word w, int j) {
  check_digit(j);
  while (!w.empty() && w.digits.back() == j) w.digits.pop_back();
  if (w.empty()) {
    word = std::move(w);
    corner = j;
    return;
  }
  int i = w.digits.back();
  Word other = w;
  other.digits.back() = static_cast<std::uint8_t>(j);
  if (std::tie(other, i) < std::tie(w, j)) {
    word = std::move(other);
    corner = i;
  } else {
    word = std::move(w);
    corner = j;
  }
}

std::vector<std::pair<Word, int>> Vertex::aliases() const {
  std::vector<std::pair<Word, int>> out{{word, corner}};
  if (!word.empty()) {
    Word other = word;
    int i = other.digits.back();
    other.digits.back() = static_cast<std::uint8_t>(corner);
    out.emplace_back(std::move(other), i);
  }
  return out;
}

std::uint64_t Vertex::key() const {
  return (word.code() * 4 + static_cast<std::uint64_t>(corner)) * 32 + static_cast<std::uint64_t>(word.size());
}

std::string Vertex::str() const { return word.str() + ":" + std::to_string(corner); }

Word reflect(const Word& w) {
  Word r = w;
  for (auto& d : r.digits)
    if (d != 0) d = static_cast<std::uint8_t>(3 - d);
  return r;
}

Vertex reflect(const Vertex& v) {
  return Vertex(reflect(v.word), v.corner == 0 ? 0 : 3 - v.corner);
}

bool on_axis(const Vertex& v) {
  if (v.word.empty()) return v.corner == 0;
  // x_m canonical form is (0^{m-1} 1, 2).
  if (v.corner != 2 || v.word.digits.back() != 1) return false;
  for (int i = 0; i + 1 < v.word.size(); ++i)
    if (v.word[i] != 0) return false;
  return true;
}

Side side_of(const Vertex& v) {
  if (on_axis(v)) return Side::axis;
  for (auto d : v.word.digits)
    if (d != 0) return d == 1 ? Side::omega : Side::mirror;
  return v.corner == 1 ? Side::omega : Side::mirror;
}

Vertex x_point(int m) {
  if (m < 1) throw domain_error("x_m needs m >= 1");
  return Vertex(Word::zeros(m - 1, {2}), 1);
}
Vertex y_point(int m) {
  if (m < 0) throw domain_error("y_m needs m >= 0");
  return Vertex(Word::zeros(m), 1);
}
Vertex z_point(int m) {
  if (m < 0) throw domain_error("z_m needs m >= 0");
  return Vertex(Word::zeros(m), 2);
}
Vertex corner_point(int j) {
  check_digit(j);
  return Vertex(Word(), j);
}

Vertex special_point(SpecialKind kind, int m) {
  switch (kind) {
    case SpecialKind::x: return x_point(m);
    case SpecialKind::y: return y_point(m);
    case SpecialKind::z: return z_point(m);
    case SpecialKind::q: return corner_point(m);
  }
  throw internal_error("unknown special point kind");
}

std::array<double, 2> coordinates(const Vertex& v) {
  static const double q[3][2] = {{0.5, std::sqrt(3.0) / 2}, {0.0, 0.0}, {1.0, 0.0}};
  double x = q[v.corner][0], y = q[v.corner][1];
  for (int i = v.word.size() - 1; i >= 0; --i) {
    x = (x + q[v.word[i]][0]) / 2;
    y = (y + q[v.word[i]][1]) / 2;
  }
  return {x, y};
}

int LevelGraph::index_of(const Vertex& v) const {
  auto it = index.find(v.key());
  return it == index.end() ? -1 : it->second;
}

std::uint64_t vertex_count(int m) {
  std::uint64_t p = 1;
  for (int i = 0; i <= m; ++i) p *= 3;
  return (p + 3) / 2;
}

LevelGraph build_graph(int m) {
  check_level(m, "build_graph");
  LevelGraph g;
  g.level = m;
  std::uint64_t ncells = 1;
  for (int i = 0; i < m; ++i) ncells *= 3;
  g.vertices.reserve(vertex_count(m));
  g.cells.reserve(ncells);
  g.edges.reserve(3 * ncells);
  for (std::uint64_t c = 0; c < ncells; ++c) {
    Word w = Word::from_code(c, m);
    std::array<int, 3> corners{};
    for (int j = 0; j < 3; ++j) {
      Vertex v(w, j);
      auto [it, inserted] = g.index.try_emplace(v.key(), static_cast<int>(g.vertices.size()));
      if (inserted) g.vertices.push_back(std::move(v));
      corners[static_cast<std::size_t>(j)] = it->second;
    }
    g.cells.push_back(corners);
    g.edges.emplace_back(corners[0], corners[1]);
    g.edges.emplace_back(corners[1], corners[2]);
    g.edges.emplace_back(corners[0], corners[2]);
  }
  g.neighbors.resize(g.vertices.size());
  for (auto [a, b] : g.edges) {
    g.neighbors[static_cast<std::size_t>(a)].push_back(b);
    g.neighbors[static_cast<std::size_t>(b)].push_back(a);
  }
  g.reflection.resize(g.vertices.size());
  g.sides.resize(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    g.reflection[i] = g.index_of(reflect(g.vertices[i]));
    g.sides[i] = side_of(g.vertices[i]);
    if (g.reflection[i] < 0) throw internal_error("reflection left the vertex set");
  }
  return g;
}

std::shared_ptr<const LevelGraph> graph_at(int m) {
  check_level(m, "graph_at");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const LevelGraph>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[m];
  if (!slot) slot = std::make_shared<const LevelGraph>(build_graph(m));
  return slot;
}

}  // namespace halfgasket
