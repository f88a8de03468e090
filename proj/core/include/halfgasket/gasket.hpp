#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace halfgasket {

// Address F_{w_1} ... F_{w_n} of a cell, digits in {0,1,2}.
struct Word {
  std::vector<std::uint8_t> digits;

  Word() = default;
  explicit Word(std::vector<std::uint8_t> d);
  static Word parse(std::string_view text);
  // 0^k followed by the given tail digits.
  static Word zeros(int k, std::vector<std::uint8_t> tail = {});
  static Word from_code(std::uint64_t code, int length);

  int size() const { return static_cast<int>(digits.size()); }
  bool empty() const { return digits.empty(); }
  std::uint8_t operator[](int i) const { return digits[static_cast<std::size_t>(i)]; }
  std::uint64_t code() const;
  bool is_prefix_of(const Word& other) const;
  Word child(int d) const;
  Word prefix(int n) const;
  std::string str() const;
  friend auto operator<=>(const Word&, const Word&) = default;
};

// Vertex F_w q_j stored as its canonical alias: the shortest word, and among
// the two junction aliases the lexicographically smaller (word, corner).
struct Vertex {
  Word word;
  int corner = 0;

  Vertex() = default;
  Vertex(Word w, int j);  // canonicalises

  int level() const { return word.size(); }
  // Raw (word, corner) representations of minimal length: one for V_0, two
  // for every junction point.
  std::vector<std::pair<Word, int>> aliases() const;
  std::uint64_t key() const;
  std::string str() const;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

enum class Side { omega, mirror, axis };

// Digit swap 1 <-> 2: the reflection fixing q_0.
Vertex reflect(const Vertex& v);
Word reflect(const Word& w);
// axis for q_0 and the points x_m; otherwise the side of the first nonzero
// address digit (1: Omega, 2: mirror).
Side side_of(const Vertex& v);
bool on_axis(const Vertex& v);

enum class SpecialKind { x, y, z, q };
// x_m = F_0^{m-1} F_2 q_1 (m >= 1), y_m = F_0^m q_1, z_m = F_0^m q_2,
// q_j the corners (m is the corner index).
Vertex special_point(SpecialKind kind, int m);
Vertex x_point(int m);
Vertex y_point(int m);
Vertex z_point(int m);
Vertex corner_point(int j);

std::array<double, 2> coordinates(const Vertex& v);

struct LevelGraph {
  int level = 0;
  std::vector<Vertex> vertices;
  // Level-m cells in base-3 order of their words; corner indices in q0,q1,q2 order.
  std::vector<std::array<int, 3>> cells;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> neighbors;
  std::vector<int> reflection;
  std::vector<Side> sides;

  int index_of(const Vertex& v) const;  // -1 when absent
  bool is_boundary(int i) const { return vertices[static_cast<std::size_t>(i)].level() == 0; }
  Word cell_word(std::size_t c) const { return Word::from_code(c, level); }

  std::unordered_map<std::uint64_t, int> index;
};

// |V_m| = (3^{m+1}+3)/2, 3^{m+1} edges. Honors the level cap.
LevelGraph build_graph(int m);
// Shared, memoised graphs.
std::shared_ptr<const LevelGraph> graph_at(int m);

std::uint64_t vertex_count(int m);

}  // namespace halfgasket
