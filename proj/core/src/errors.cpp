#include "halfgasket/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace halfgasket {

int max_level() {
  const char* env = std::getenv("HALFGASKET_MAX_LEVEL");
  if (env == nullptr || *env == '\0') return 10;
  int value = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
  if (ec != std::errc() || *ptr != '\0' || value < 0 || value > 20)
    throw validation_error("HALFGASKET_MAX_LEVEL must be an integer in [0, 20]");
  return value;
}

void check_level(int m, const char* what) {
  if (m < 0) throw validation_error(std::string(what) + ": negative level");
  if (m > max_level())
    throw resource_limit_error(std::string(what) + ": level " + std::to_string(m) +
                               " exceeds the cap " + std::to_string(max_level()));
}

}  // namespace halfgasket
