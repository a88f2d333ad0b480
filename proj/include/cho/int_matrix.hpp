#pragma once

// Exact integer matrices for checking the alpha_i / c_i structure algebra.
// Only for small verification sizes: materialization is capped at order 4096.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cho/indexing.hpp"

namespace cho {

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix all_ones(std::size_t n);

  std::size_t rows() const noexcept { return n_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::int64_t trace() const;
  /// Exact rank over the rationals (fraction-free Bareiss elimination).
  std::size_t rank() const;
  bool is_symmetric() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(std::int64_t k, const IntMatrix& a);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> data_;
};

inline constexpr std::uint64_t kMaterializeCap = 4096;

/// Dense alpha_i and c_i (1-based axis). Throw cho::size_error above kMaterializeCap.
IntMatrix materialize_alpha(std::uint32_t axis, const BasisShape& shape);
IntMatrix materialize_c(std::uint32_t axis, const BasisShape& shape);

}  // namespace cho
