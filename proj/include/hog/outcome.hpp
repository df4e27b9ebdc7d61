#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hog/errors.hpp"
#include "hog/indexing.hpp"

namespace hog {

// Outcomes are real scalars (dimension 1) or fixed-length real vectors.
using Outcome = std::vector<double>;
using OutcomeView = std::span<const double>;

inline double linf_distance(OutcomeView a, OutcomeView b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    d = std::max(d, std::abs(a[k] - b[k]));
  }
  return d;
}

inline double euclidean_distance(OutcomeView a, OutcomeView b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

// A total map p : X -> R over the moves {0, ..., size()-1}, stored densely.
class OutcomeTable {
 public:
  OutcomeTable() = default;
  OutcomeTable(std::size_t moves, std::size_t dim)
      : moves_(moves), dim_(dim), data_(moves * dim, 0.0) {
    if (dim == 0) throw StructuralError("outcome dimension must be >= 1");
  }

  static OutcomeTable scalars(std::vector<double> values) {
    OutcomeTable t;
    t.moves_ = values.size();
    t.dim_ = 1;
    t.data_ = std::move(values);
    return t;
  }
  static OutcomeTable scalars(std::initializer_list<double> values) {
    return scalars(std::vector<double>(values));
  }

  std::size_t size() const { return moves_; }
  std::size_t dim() const { return dim_; }

  OutcomeView operator[](MoveId x) const {
    return OutcomeView(data_).subspan(x * dim_, dim_);
  }
  double scalar(MoveId x) const { return data_[x * dim_]; }

  void set(MoveId x, OutcomeView value) {
    if (value.size() != dim_) {
      throw StructuralError("outcome of dimension " +
                            std::to_string(value.size()) +
                            " stored in table of dimension " +
                            std::to_string(dim_));
    }
    std::copy(value.begin(), value.end(), data_.begin() + x * dim_);
  }
  void set_scalar(MoveId x, double value) { data_[x * dim_] = value; }

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const OutcomeTable&, const OutcomeTable&) = default;

 private:
  std::size_t moves_ = 0;
  std::size_t dim_ = 1;
  std::vector<double> data_;
};

inline void require_scalar(const OutcomeTable& p, const char* who) {
  if (p.dim() != 1) {
    throw StructuralError(std::string(who) +
                          " requires scalar outcomes, got dimension " +
                          std::to_string(p.dim()));
  }
}

}  // namespace hog
