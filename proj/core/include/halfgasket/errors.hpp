#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace halfgasket {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the domain of an operation (mirror-side vertex, level 0 spline,
// divergent data where a limit is required, ...).
class domain_error : public error {
 public:
  using error::error;
};

// Malformed input: bad JSON, bad words, negative levels, unknown tags.
class validation_error : public error {
 public:
  using error::error;
};

// A limit that did not stabilise. Carries the observed partial sequence.
class convergence_error : public error {
 public:
  convergence_error(const std::string& what, std::vector<double> partial)
      : error(what), partial_(std::move(partial)) {}
  const std::vector<double>& partial() const { return partial_; }

 private:
  std::vector<double> partial_;
};

// Request needs data beyond a finite window or truncation level.
class truncation_error : public error {
 public:
  truncation_error(const std::string& what, double bound = -1.0)
      : error(what), bound_(bound) {}
  // Estimated size of what was cut off; negative when unknown.
  double bound() const { return bound_; }

 private:
  double bound_;
};

class resource_limit_error : public error {
 public:
  using error::error;
};

class internal_error : public error {
 public:
  using error::error;
};

// Level cap, default 10, overridable through HALFGASKET_MAX_LEVEL.
int max_level();
void check_level(int m, const char* what);

}  // namespace halfgasket
