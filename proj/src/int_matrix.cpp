#include "cho/int_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "cho/error.hpp"

namespace cho {

namespace {

void check_same_order(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("matrix orders differ");
}

std::size_t checked_order(const BasisShape& shape) {
  if (shape.size() > kMaterializeCap)
    throw size_error("refusing to materialize a " + std::to_string(shape.size()) +
                     "-order structure matrix (cap " + std::to_string(kMaterializeCap) + ")");
  return static_cast<std::size_t>(shape.size());
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::all_ones(std::size_t n) {
  IntMatrix m(n);
  std::fill(m.data_.begin(), m.data_.end(), 1);
  return m;
}

std::int64_t IntMatrix::trace() const {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

std::size_t IntMatrix::rank() const {
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> a(data_.begin(), data_.end());
  auto at = [&](std::size_t i, std::size_t j) -> cpp_int& { return a[i * n_ + j]; };
  cpp_int previous_pivot = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n_ && rank < n_; ++col) {
    std::size_t pivot = rank;
    while (pivot < n_ && at(pivot, col) == 0) ++pivot;
    if (pivot == n_) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < n_; ++j) std::swap(at(pivot, j), at(rank, j));
    const cpp_int p = at(rank, col);
    for (std::size_t i = rank + 1; i < n_; ++i) {
      for (std::size_t j = col + 1; j < n_; ++j)
        at(i, j) = (p * at(i, j) - at(i, col) * at(rank, j)) / previous_pivot;
      at(i, col) = 0;
    }
    previous_pivot = p;
    ++rank;
  }
  return rank;
}

bool IntMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  check_same_order(a, b);
  const std::size_t n = a.rows();
  IntMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  check_same_order(a, b);
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator*(std::int64_t k, const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.data_) x *= k;
  return c;
}

IntMatrix materialize_alpha(std::uint32_t axis, const BasisShape& shape) {
  const std::size_t n = checked_order(shape);
  IntMatrix m(n);
  for (Label s = 0; s < n; ++s)
    for (Label t = 0; t < n; ++t) m(s, t) = alpha_element(axis, s, t, shape);
  return m;
}

IntMatrix materialize_c(std::uint32_t axis, const BasisShape& shape) {
  const std::size_t n = checked_order(shape);
  IntMatrix m(n);
  for (Label s = 0; s < n; ++s)
    for (Label t = 0; t < n; ++t) m(s, t) = c_element(axis, s, t, shape);
  return m;
}

}  // namespace cho
