#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace specstat {

inline constexpr const char *kVersion = "0.1.0";

// Malformed text input; line is 1-based.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class invalid_spec_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class invalid_parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure (iteration caps, non-finite values). Carries the seed of the
// offending realisation when one exists so the case can be replayed.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string &what) : std::runtime_error(what), seed_(0), has_seed_(false) {}
  numeric_error(const std::string &what, std::uint64_t seed)
      : std::runtime_error(what + " (seed " + std::to_string(seed) + ")"), seed_(seed), has_seed_(true) {}
  bool has_seed() const { return has_seed_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  bool has_seed_;
};

}  // namespace specstat
