#pragma once

// Flat basis labels, their base-N digit vectors, and the binary structure
// predicates alpha_i and c_i that select which pairs of product states a
// single-axis operator can couple.
//
// Axes are 1-based throughout the public interface: component i of a label s
// is floor(s / N^(d-i)) mod N, so axis 1 is the most significant digit.

#include <cstdint>
#include <span>
#include <vector>

namespace cho {

using Label = std::uint64_t;
using MultiIndex = std::vector<std::uint32_t>;

/// Per-axis basis size N and dimension d, with the total size N^d.
class BasisShape {
 public:
  /// Throws std::invalid_argument for n < 1 or d < 1 and cho::size_error
  /// when N^d does not fit in a Label.
  BasisShape(std::uint32_t n, std::uint32_t d);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t d() const noexcept { return d_; }
  Label size() const noexcept { return size_; }

  bool contains(Label s) const noexcept { return s < size_; }
  void check_label(Label s) const;  // std::domain_error when out of range
  void check_axis(std::uint32_t axis) const;  // std::out_of_range unless 1 <= axis <= d

  friend bool operator==(const BasisShape&, const BasisShape&) = default;

 private:
  std::uint32_t n_;
  std::uint32_t d_;
  Label size_;
};

MultiIndex decompose(Label s, const BasisShape& shape);
Label compose(std::span<const std::uint32_t> components, std::uint32_t n);

/// Component `axis` (1-based) of label s. No validation beyond the shape's.
std::uint32_t component(Label s, std::uint32_t axis, const BasisShape& shape);

/// Number of axes on which s and t carry the same quantum number (alpha_st).
std::uint32_t agreement(Label s, Label t, const BasisShape& shape);

/// alpha_i element: 1 when s and t agree on axis i.
int alpha_element(std::uint32_t axis, Label s, Label t, const BasisShape& shape);

/// c_i element from the product of deltas over all axes j != i.
int c_element(std::uint32_t axis, Label s, Label t, const BasisShape& shape);

/// c_i element from delta_st + (1 - alpha_i,st) [alpha_st == d-1].
int c_element_from_alpha(std::uint32_t axis, Label s, Label t, const BasisShape& shape);

/// The unique axis on which s and t differ, computed as sum_j j (1 - delta).
/// Throws cho::contract_error unless agreement(s, t) == d - 1.
std::uint32_t differing_axis(Label s, Label t, const BasisShape& shape);

}  // namespace cho
