#include "cho/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cho/error.hpp"

namespace cho {

namespace {

constexpr double kPi = std::numbers::pi;

bool same_parity(std::uint32_t a, std::uint32_t b) { return (a % 2) == (b % 2); }

std::uint64_t power(std::uint64_t base, std::uint32_t exponent) {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exponent; ++i) result *= base;
  return result;
}

void check_length(std::size_t expected, std::size_t x, std::size_t y) {
  if (x != expected || y != expected)
    throw std::invalid_argument("matvec length mismatch: matrix order " +
                                std::to_string(expected) + ", x " + std::to_string(x) +
                                ", y " + std::to_string(y));
}

}  // namespace

OscillatorConfig::OscillatorConfig(std::uint32_t d, std::uint32_t n, double lambda,
                                   double epsilon)
    : shape_(n, d), lambda_(lambda), epsilon_(epsilon) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("lambda must be finite and >= 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be finite and > 0");
}

double PhysicalUnits::epsilon() const {
  if (!(hbar > 0.0) || !(mass > 0.0) || !(half_width > 0.0) || !(omega >= 0.0))
    throw std::invalid_argument("physical constants must be positive (omega >= 0)");
  return kPi * kPi * hbar * hbar / (8.0 * mass * half_width * half_width);
}

double PhysicalUnits::lambda() const { return hbar * omega / epsilon(); }

double t_element(Label s, Label t, const OscillatorConfig& cfg) {
  const auto& shape = cfg.shape();
  shape.check_label(s);
  shape.check_label(t);
  if (s != t) return 0.0;
  double sum = 0.0;
  for (auto c : decompose(s, shape)) sum += (c + 1.0) * (c + 1.0);
  return cfg.epsilon() * sum;
}

double v_element_1d(std::uint32_t a, std::uint32_t b, double lambda, double epsilon) {
  const double coupling = lambda * lambda * epsilon;
  if (a == b) {
    const double q = a + 1.0;
    return coupling / 8.0 * (kPi * kPi / 6.0 - 1.0 / (q * q));
  }
  if (!same_parity(a, b)) return 0.0;
  const double diff = static_cast<double>(a > b ? a - b : b - a);
  const double sum = a + b + 2.0;
  return coupling / 2.0 * (1.0 / (diff * diff) - 1.0 / (sum * sum));
}

double v_element(Label s, Label t, const OscillatorConfig& cfg) {
  const auto& shape = cfg.shape();
  const std::uint32_t agree = agreement(s, t, shape);
  if (s == t) {
    double inverse_squares = 0.0;
    for (auto c : decompose(s, shape)) inverse_squares += 1.0 / ((c + 1.0) * (c + 1.0));
    return cfg.coupling() / 8.0 * (kPi * kPi * cfg.d() / 6.0 - inverse_squares);
  }
  if (agree + 1 != cfg.d()) return 0.0;
  const std::uint32_t k = differing_axis(s, t, shape);
  return v_element_1d(component(s, k, shape), component(t, k, shape), cfg.lambda(),
                      cfg.epsilon());
}

double h_element(Label s, Label t, const OscillatorConfig& cfg) {
  return t_element(s, t, cfg) + v_element(s, t, cfg);
}

std::vector<Label> row_pattern(Label s, const OscillatorConfig& cfg) {
  const auto& shape = cfg.shape();
  const MultiIndex digits = decompose(s, shape);
  std::vector<Label> cols{s};
  std::uint64_t stride = 1;
  for (std::uint32_t axis = cfg.d(); axis >= 1; --axis) {
    const std::uint32_t own = digits[axis - 1];
    const Label base = s - static_cast<Label>(own) * stride;
    for (std::uint32_t partner = own % 2; partner < cfg.n(); partner += 2)
      if (partner != own) cols.push_back(base + static_cast<Label>(partner) * stride);
    stride *= cfg.n();
  }
  std::sort(cols.begin(), cols.end());
  return cols;
}

SparsityPattern sparsity_pattern(const OscillatorConfig& cfg) {
  SparsityPattern pattern(static_cast<std::size_t>(cfg.size()));
  for (Label s = 0; s < cfg.size(); ++s) pattern[s] = row_pattern(s, cfg);
  return pattern;
}

std::uint64_t structural_nonzeros(const OscillatorConfig& cfg) {
  const std::uint64_t even = (cfg.n() + 1) / 2;
  const std::uint64_t odd = cfg.n() / 2;
  const std::uint64_t per_line = even * (even - 1) + odd * (odd == 0 ? 0 : odd - 1);
  return cfg.size() + cfg.d() * power(cfg.n(), cfg.d() - 1) * per_line;
}

void DenseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  check_length(n_, x.size(), y.size());
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = data_.data() + i * n_;
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

SymmetricSparseMatrix::SymmetricSparseMatrix(std::size_t n, std::vector<std::size_t> row_start,
                                             std::vector<Label> columns,
                                             std::vector<double> values)
    : n_(n),
      row_start_(std::move(row_start)),
      columns_(std::move(columns)),
      values_(std::move(values)) {
  if (row_start_.size() != n_ + 1 || row_start_.back() != columns_.size() ||
      columns_.size() != values_.size())
    throw std::invalid_argument("inconsistent compressed-row arrays");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k)
      if (columns_[k] < i || columns_[k] >= n_)
        throw std::invalid_argument("symmetric storage requires upper-triangle columns");
}

std::size_t SymmetricSparseMatrix::full_entries() const noexcept {
  std::size_t diagonal = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) diagonal += columns_[k] == i;
  return 2 * values_.size() - diagonal;
}

void SymmetricSparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  check_length(n_, x.size(), y.size());
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) {
      const std::size_t j = static_cast<std::size_t>(columns_[k]);
      acc += values_[k] * x[j];
      if (j != i) y[j] += values_[k] * x[i];
    }
    y[i] += acc;
  }
}

MatrixFreeHamiltonian::MatrixFreeHamiltonian(const OscillatorConfig& cfg)
    : cfg_(cfg),
      axis_table_(static_cast<std::size_t>(cfg.n()) * cfg.n()),
      diagonal_(static_cast<std::size_t>(cfg.size())) {
  const std::uint32_t n = cfg.n();
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      axis_table_[a * n + b] = v_element_1d(a, b, cfg.lambda(), cfg.epsilon());
  for (Label s = 0; s < cfg.size(); ++s) diagonal_[s] = h_element(s, s, cfg);
}

void MatrixFreeHamiltonian::multiply(std::span<const double> x, std::span<double> y) const {
  check_length(rows(), x.size(), y.size());
  const std::uint32_t n = cfg_.n();
  const std::uint32_t d = cfg_.d();
  MultiIndex digits(d, 0);
  for (std::size_t s = 0; s < rows(); ++s) {
    double acc = diagonal_[s] * x[s];
    std::size_t stride = 1;
    for (std::uint32_t axis = d; axis >= 1; --axis) {
      const std::uint32_t own = digits[axis - 1];
      const std::size_t base = s - own * stride;
      const double* table_row = axis_table_.data() + static_cast<std::size_t>(own) * n;
      for (std::uint32_t partner = own % 2; partner < n; partner += 2)
        if (partner != own) acc += table_row[partner] * x[base + partner * stride];
      stride *= n;
    }
    y[s] = acc;
    // Advance the base-N digit counter (axis d least significant).
    for (std::uint32_t i = d; i-- > 0;) {
      if (++digits[i] < n) break;
      digits[i] = 0;
    }
  }
}

HamiltonianMatrix::HamiltonianMatrix(OscillatorConfig cfg, Storage storage)
    : cfg_(std::move(cfg)), storage_(std::move(storage)) {
  const std::size_t order = std::visit([](const auto& m) { return m.rows(); }, storage_);
  if (order != rows())
    throw std::invalid_argument("storage order does not match the configuration's N^d");
}

const DenseMatrix& HamiltonianMatrix::dense() const {
  if (const auto* m = std::get_if<DenseMatrix>(&storage_)) return *m;
  throw std::logic_error("Hamiltonian is not stored densely");
}

const SymmetricSparseMatrix& HamiltonianMatrix::sparse() const {
  if (const auto* m = std::get_if<SymmetricSparseMatrix>(&storage_)) return *m;
  throw std::logic_error("Hamiltonian is not stored sparsely");
}

void HamiltonianMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  std::visit([&](const auto& m) { m.multiply(x, y); }, storage_);
}

std::vector<double> HamiltonianMatrix::matvec(std::span<const double> x) const {
  std::vector<double> y(rows());
  multiply(x, y);
  return y;
}

std::uint64_t dense_bytes(const OscillatorConfig& cfg) {
  const double bytes = static_cast<double>(cfg.size()) * static_cast<double>(cfg.size()) * 8.0;
  return bytes > 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(bytes);
}

std::uint64_t sparse_bytes(const OscillatorConfig& cfg) {
  const std::uint64_t stored = (structural_nonzeros(cfg) + cfg.size()) / 2;
  return stored * (sizeof(Label) + sizeof(double)) + (cfg.size() + 1) * sizeof(std::size_t);
}

HamiltonianMatrix assemble_dense(const OscillatorConfig& cfg, const AssemblyLimits& limits) {
  if (cfg.size() > limits.dense_cap)
    throw size_error("dense assembly of N^d = " + std::to_string(cfg.size()) +
                     " exceeds the dense cap " + std::to_string(limits.dense_cap) +
                     "; use the sparse or matrix-free path");
  if (dense_bytes(cfg) > limits.memory_budget_bytes)
    throw size_error("dense matrix needs " + std::to_string(dense_bytes(cfg)) +
                     " bytes, over the memory budget");
  const auto n = static_cast<std::size_t>(cfg.size());
  DenseMatrix m(n);
  for (Label s = 0; s < n; ++s) {
    for (Label t : row_pattern(s, cfg)) {
      if (t < s) continue;
      const double value = h_element(s, t, cfg);
      m(s, t) = value;
      m(t, s) = value;
    }
  }
  return HamiltonianMatrix(cfg, std::move(m));
}

HamiltonianMatrix assemble_sparse(const OscillatorConfig& cfg, const AssemblyLimits& limits) {
  if (sparse_bytes(cfg) > limits.memory_budget_bytes)
    throw size_error("sparse matrix needs ~" + std::to_string(sparse_bytes(cfg)) +
                     " bytes, over the memory budget of " +
                     std::to_string(limits.memory_budget_bytes));
  const auto n = static_cast<std::size_t>(cfg.size());
  std::vector<std::size_t> row_start;
  std::vector<Label> columns;
  std::vector<double> values;
  row_start.reserve(n + 1);
  const std::size_t stored = static_cast<std::size_t>((structural_nonzeros(cfg) + n) / 2);
  columns.reserve(stored);
  values.reserve(stored);
  row_start.push_back(0);
  for (Label s = 0; s < n; ++s) {
    for (Label t : row_pattern(s, cfg)) {
      if (t < s) continue;
      const double value = h_element(s, t, cfg);
      if (t != s && value == 0.0) continue;  // lambda = 0 leaves only the diagonal
      columns.push_back(t);
      values.push_back(value);
    }
    row_start.push_back(columns.size());
  }
  return HamiltonianMatrix(cfg, SymmetricSparseMatrix(n, std::move(row_start),
                                                      std::move(columns), std::move(values)));
}

HamiltonianMatrix make_matrix_free(const OscillatorConfig& cfg) {
  return HamiltonianMatrix(cfg, MatrixFreeHamiltonian(cfg));
}

}  // namespace cho
