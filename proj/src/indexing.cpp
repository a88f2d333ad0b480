#include "cho/indexing.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "cho/error.hpp"

namespace cho {

BasisShape::BasisShape(std::uint32_t n, std::uint32_t d) : n_(n), d_(d), size_(1) {
  if (n < 1) throw std::invalid_argument("basis size N must be >= 1");
  if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
  for (std::uint32_t i = 0; i < d; ++i) {
    if (size_ > std::numeric_limits<Label>::max() / n)
      throw size_error("N^d = " + std::to_string(n) + "^" + std::to_string(d) +
                       " overflows the label type");
    size_ *= n;
  }
}

void BasisShape::check_label(Label s) const {
  if (s >= size_)
    throw std::domain_error("label " + std::to_string(s) + " outside [0, " +
                            std::to_string(size_) + ")");
}

void BasisShape::check_axis(std::uint32_t axis) const {
  if (axis < 1 || axis > d_)
    throw std::out_of_range("axis " + std::to_string(axis) + " outside [1, " +
                            std::to_string(d_) + "]");
}

MultiIndex decompose(Label s, const BasisShape& shape) {
  shape.check_label(s);
  MultiIndex m(shape.d());
  for (std::uint32_t i = shape.d(); i-- > 0;) {
    m[i] = static_cast<std::uint32_t>(s % shape.n());
    s /= shape.n();
  }
  return m;
}

Label compose(std::span<const std::uint32_t> components, std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("basis size N must be >= 1");
  // Validates the d = components.size() shape, including overflow.
  const BasisShape shape(n, static_cast<std::uint32_t>(components.size()));
  Label s = 0;
  for (auto c : components) {
    if (c >= n)
      throw std::domain_error("component " + std::to_string(c) + " outside [0, " +
                              std::to_string(n) + ")");
    s = s * n + c;
  }
  return s;
}

std::uint32_t component(Label s, std::uint32_t axis, const BasisShape& shape) {
  shape.check_axis(axis);
  for (std::uint32_t i = shape.d(); i > axis; --i) s /= shape.n();
  return static_cast<std::uint32_t>(s % shape.n());
}

std::uint32_t agreement(Label s, Label t, const BasisShape& shape) {
  shape.check_label(s);
  shape.check_label(t);
  std::uint32_t count = 0;
  for (std::uint32_t i = 0; i < shape.d(); ++i) {
    count += (s % shape.n() == t % shape.n());
    s /= shape.n();
    t /= shape.n();
  }
  return count;
}

int alpha_element(std::uint32_t axis, Label s, Label t, const BasisShape& shape) {
  shape.check_label(s);
  shape.check_label(t);
  return component(s, axis, shape) == component(t, axis, shape) ? 1 : 0;
}

int c_element(std::uint32_t axis, Label s, Label t, const BasisShape& shape) {
  shape.check_axis(axis);
  shape.check_label(s);
  shape.check_label(t);
  for (std::uint32_t j = shape.d(); j >= 1; --j) {
    if (j != axis && s % shape.n() != t % shape.n()) return 0;
    s /= shape.n();
    t /= shape.n();
  }
  return 1;
}

int c_element_from_alpha(std::uint32_t axis, Label s, Label t, const BasisShape& shape) {
  const int delta_st = (s == t) ? 1 : 0;
  const int single_difference = agreement(s, t, shape) + 1 == shape.d() ? 1 : 0;
  return delta_st + (1 - alpha_element(axis, s, t, shape)) * single_difference;
}

std::uint32_t differing_axis(Label s, Label t, const BasisShape& shape) {
  if (agreement(s, t, shape) + 1 != shape.d())
    throw contract_error("differing_axis requires labels that differ on exactly one axis");
  std::uint32_t k = 0;
  for (std::uint32_t j = shape.d(); j >= 1; --j) {
    k += j * (s % shape.n() != t % shape.n() ? 1u : 0u);
    s /= shape.n();
    t /= shape.n();
  }
  return k;
}

}  // namespace cho
