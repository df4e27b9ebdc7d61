#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hog/errors.hpp"

namespace hog {

using MoveId = std::size_t;

// Saturating product of cardinalities; returns ResourceError::kOverflow when
// the true value does not fit in 64 bits.
inline std::uint64_t checked_product(std::span<const std::size_t> radices) {
  std::uint64_t n = 1;
  for (std::size_t r : radices) {
    if (r == 0) return 0;
    if (n > ResourceError::kOverflow / r) return ResourceError::kOverflow;
    n *= r;
  }
  return n;
}

// base^exponent, saturating like checked_product.
inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t n = 1;
  for (std::uint64_t k = 0; k < exponent; ++k) {
    if (base != 0 && n > ResourceError::kOverflow / base) {
      return ResourceError::kOverflow;
    }
    n *= base;
  }
  return n;
}

inline void require_within_budget(std::uint64_t count, std::uint64_t budget,
                                  const std::string& what) {
  if (count > budget) {
    throw ResourceError(what + " exceeds enumeration budget " +
                            std::to_string(budget),
                        count);
  }
}

// Row-major mixed-radix numbering of tuples: the last coordinate varies
// fastest, so increasing index order is lexicographic tuple order.
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<std::size_t> radices)
      : radices_(std::move(radices)) {}

  std::size_t arity() const { return radices_.size(); }
  const std::vector<std::size_t>& radices() const { return radices_; }
  std::uint64_t size() const { return checked_product(radices_); }

  std::uint64_t encode(std::span<const MoveId> digits) const {
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < radices_.size(); ++k) {
      index = index * radices_[k] + digits[k];
    }
    return index;
  }

  void decode(std::uint64_t index, std::span<MoveId> digits) const {
    for (std::size_t k = radices_.size(); k-- > 0;) {
      digits[k] = static_cast<MoveId>(index % radices_[k]);
      index /= radices_[k];
    }
  }

  std::vector<MoveId> decode(std::uint64_t index) const {
    std::vector<MoveId> digits(radices_.size());
    decode(index, digits);
    return digits;
  }

  // Advances to the lexicographic successor; false after the last tuple.
  bool next(std::span<MoveId> digits) const {
    for (std::size_t k = radices_.size(); k-- > 0;) {
      if (++digits[k] < radices_[k]) return true;
      digits[k] = 0;
    }
    return false;
  }

 private:
  std::vector<std::size_t> radices_;
};

// Calls fn(tuple) for every tuple of the product in lexicographic order.
template <typename Fn>
void for_each_tuple(const MixedRadix& radix, Fn&& fn) {
  if (radix.size() == 0) return;
  std::vector<MoveId> digits(radix.arity(), 0);
  do {
    fn(std::span<const MoveId>(digits));
  } while (radix.next(digits));
}

}  // namespace hog
