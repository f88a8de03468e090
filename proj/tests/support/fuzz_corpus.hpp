#pragma once

#include <random>
#include <string>
#include <vector>

#include "cli_support.hpp"

namespace hgtest {

inline const std::vector<std::string>& fuzz_seeds() {
  static const std::vector<std::string> seeds = {
      R"({"a0": "1", "terms": [{"type": "constant", "A": "0"}]})",
      R"({"a0": "1", "terms": [{"type": "geometric", "A1": "0", "A2": "4/3", "r": "3/5"}]})",
      R"({"a0": "2", "terms": [{"type": "constant", "A": "2"}, {"type": "geometric", "A2": "-1/7", "r": "1/5"}]})",
      R"({"a0": "0", "terms": [{"type": "explicit", "values": ["1/2", "1/4", 0.125], "tail": {"type": "geometric", "A2": "1", "r": "1/2"}}]})",
      R"({"a0": "0", "terms": [{"type": "power", "coeff": "1", "p": 2, "offset": 1}]})",
      R"({"a0": "1", "apex": "0", "eta": {"terms": [{"type": "geometric", "A2": "-6", "r": "1/3"}]}})",
      R"({"a": {"terms": [{"type": "constant", "A": "1"}, {"type": "geometric", "A2": "2", "r": "3/5"}]}, "eta": {"terms": [{"type": "geometric", "A2": "3", "r": "1/3"}]}})",
      R"({"harmonic": ["0", "1", "-2/3"]})",
  };
  return seeds;
}

class Mutator {
 public:
  explicit Mutator(std::uint64_t seed) : g_(seed) {}

  std::string mutate(std::string s) {
    // zero mutations a quarter of the time keeps the valid paths exercised
    const int n = static_cast<int>(pick(4));
    for (int i = 0; i < n; ++i) s = once(std::move(s));
    return s;
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(g_); }

 private:
  std::string once(std::string s) {
    static const std::string chars = "{}[]\":,0123456789-+/.eE tn\\\x01\xff";
    static const std::vector<std::string> tokens = {
        "\"1/0\"", "\"1e400\"", "\"-\"", "\"\"", "\"99999999999999999999999/3\"", "0", "5", "\"1\"", "\"-3/5\"",
        "\"nan\"", "\"1e-4001\"", "1e308", "-1e-300", "[]", "{}", "null", "true", "123456789012345678901234567890",
        "\"5/3\"", "\"1/3\"", "\"-1\"", "\"0.9999999\"", "\"explicit\"", "\"power\"", "\"bogus\"", "-7", "3.5"};
    if (s.empty()) return tokens[pick(tokens.size())];
    const std::size_t at = pick(s.size());
    switch (pick(8)) {
      case 0:
        return s.erase(at, 1);
      case 1:
        return s.insert(at, 1, chars[pick(chars.size())]);
      case 2:
        s[at] = chars[pick(chars.size())];
        return s;
      case 3: {
        // replace the JSON value starting after a ':' or '[' or ','
        std::size_t p = s.find_first_of(":[,", at);
        if (p == std::string::npos) return s;
        std::size_t q = s.find_first_of(",}]", p + 1);
        if (q == std::string::npos) q = s.size();
        return s.substr(0, p + 1) + tokens[pick(tokens.size())] + s.substr(q);
      }
      case 4: {
        const std::size_t len = pick(std::min<std::size_t>(24, s.size() - at)) + 1;
        return s.insert(pick(s.size()), s.substr(at, len));
      }
      case 5:
        return s.substr(0, at);
      case 6: {
        static const std::vector<std::string> types = {"constant", "geometric", "explicit", "power", "tail", "x"};
        auto p = s.find("\"type\": \"", at);
        if (p == std::string::npos) p = s.find("\"type\": \"");
        if (p == std::string::npos) return s;
        p += 9;
        const auto q = s.find('"', p);
        if (q == std::string::npos) return s;
        return s.substr(0, p) + types[pick(types.size())] + s.substr(q);
      }
      default: {
        static const std::vector<std::string> keys = {"\"a0\"", "\"A\"", "\"A1\"", "\"A2\"", "\"r\"", "\"terms\"",
                                                      "\"values\"", "\"eta\"", "\"p\"", "\"offset\"", "\"apex\""};
        const auto q = s.find('"', at);
        if (q == std::string::npos) return s;
        const auto e = s.find('"', q + 1);
        if (e == std::string::npos) return s;
        return s.substr(0, q) + keys[pick(keys.size())] + s.substr(e + 1);
      }
    }
  }

  std::mt19937_64 g_;
};

inline std::vector<std::string> fuzz_command(std::size_t which, const std::string& file) {
  switch (which % 9) {
    case 0:
      return {"solve", "--data", file, "--trunc", "6"};
    case 1:
      return {"energy", "--data", file, "--trunc", "4"};
    case 2:
      return {"flux", "--data", file, "--trunc", "4", "--format", "json"};
    case 3:
      return {"dtn", "apply", "--data", file, "--trunc", "8"};
    case 4:
      return {"dtn", "invert", "--data", file, "--trunc", "8"};
    case 5:
      return {"trace", "--data", file};
    case 6:
      return {"extend", "--mode", "E", "--data", file, "--trunc", "4"};
    case 7:
      return {"extend", "--mode", "Eomega", "--data", file, "--trunc", "4"};
    default:
      return {"solve", "--data", file, "--trunc", "5", "--backend", "float"};
  }
}

struct FuzzSummary {
  int runs = 0;
  int ok = 0;
  int invalid = 0;
  int no_convergence = 0;
  int internal = 0;
  std::vector<std::string> internal_samples;
};

// Each mutated document is fed to every command that reads JSON.
inline FuzzSummary run_fuzz_battery(int documents, std::uint64_t seed) {
  FuzzSummary s;
  Mutator mut(seed);
  const auto dir = scratch_dir("fuzz");
  const auto& seeds = fuzz_seeds();
  for (int i = 0; i < documents; ++i) {
    const std::string doc = mut.mutate(seeds[static_cast<std::size_t>(i) % seeds.size()]);
    const auto file = write_file(dir / ("case" + std::to_string(i % 16) + ".json"), doc);
    const auto r = run_cli(fuzz_command(static_cast<std::size_t>(i), file));
    ++s.runs;
    switch (r.code) {
      case 0:
        ++s.ok;
        break;
      case 2:
        ++s.invalid;
        break;
      case 3:
        ++s.no_convergence;
        break;
      default:
        ++s.internal;
        if (s.internal_samples.size() < 5) s.internal_samples.push_back(doc + "  ->  " + r.err);
    }
  }
  return s;
}

}  // namespace hgtest
