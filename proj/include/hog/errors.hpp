#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hog {

// Malformed input: shape mismatches, invalid move ids, incompatible outcome
// dimensions, unsupported quantifier/selection combinations.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed the configured budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t count)
      : std::runtime_error(what + " (count " +
                           (count == kOverflow ? std::string(">2^64")
                                               : std::to_string(count)) +
                           ")"),
        count_(count) {}

  std::uint64_t count() const { return count_; }

  static constexpr std::uint64_t kOverflow = UINT64_MAX;

 private:
  std::uint64_t count_;
};

// A selection function was applied outside its domain, e.g. a fixed-point
// witness on a table without a fixed point.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

}  // namespace hog
