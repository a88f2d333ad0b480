#pragma once

// Closed-form matrix elements of the confined oscillator Hamiltonian in the
// product particle-in-a-box basis, and its dense, sparse and matrix-free forms.
//
// Energies are in units of the box energy epsilon = pi^2 hbar^2 / (8 m L^2);
// lambda = hbar omega / epsilon is the only physics parameter.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "cho/indexing.hpp"

namespace cho {

class OscillatorConfig {
 public:
  /// Throws std::invalid_argument for lambda < 0, epsilon <= 0 or non-finite values.
  OscillatorConfig(std::uint32_t d, std::uint32_t n, double lambda, double epsilon = 1.0);

  const BasisShape& shape() const noexcept { return shape_; }
  std::uint32_t d() const noexcept { return shape_.d(); }
  std::uint32_t n() const noexcept { return shape_.n(); }
  Label size() const noexcept { return shape_.size(); }
  double lambda() const noexcept { return lambda_; }
  double epsilon() const noexcept { return epsilon_; }

  /// lambda^2 epsilon, the scale of every potential element.
  double coupling() const noexcept { return lambda_ * lambda_ * epsilon_; }

 private:
  BasisShape shape_;
  double lambda_;
  double epsilon_;
};

/// Physical constants to epsilon and lambda.
struct PhysicalUnits {
  double hbar;
  double mass;
  double half_width;
  double omega;

  double epsilon() const;  // pi^2 hbar^2 / (8 m L^2)
  double lambda() const;   // hbar omega / epsilon
};

double t_element(Label s, Label t, const OscillatorConfig& cfg);

/// One-axis potential element <phi_a | m omega^2 x^2 / 2 | phi_b>.
double v_element_1d(std::uint32_t a, std::uint32_t b, double lambda, double epsilon);

double v_element(Label s, Label t, const OscillatorConfig& cfg);
double h_element(Label s, Label t, const OscillatorConfig& cfg);

/// Columns coupled to a row: the diagonal plus, per axis, every partner that
/// differs only on that axis by a nonzero even amount. Sorted ascending.
using SparsityPattern = std::vector<std::vector<Label>>;

std::vector<Label> row_pattern(Label s, const OscillatorConfig& cfg);
SparsityPattern sparsity_pattern(const OscillatorConfig& cfg);

/// Exact count of structurally nonzero entries in the full (both triangles) matrix.
std::uint64_t structural_nonzeros(const OscillatorConfig& cfg);

/// Full row-major symmetric matrix; entry (s,t) and (t,s) hold the same bits.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t rows() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> data() const noexcept { return data_; }

  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Upper triangle (diagonal included) in compressed sparse row form.
class SymmetricSparseMatrix {
 public:
  SymmetricSparseMatrix() = default;
  SymmetricSparseMatrix(std::size_t n, std::vector<std::size_t> row_start,
                        std::vector<Label> columns, std::vector<double> values);

  std::size_t rows() const noexcept { return n_; }
  std::size_t stored_entries() const noexcept { return values_.size(); }
  /// Entries counted over both triangles.
  std::size_t full_entries() const noexcept;

  std::span<const std::size_t> row_start() const noexcept { return row_start_; }
  std::span<const Label> columns() const noexcept { return columns_; }
  std::span<const double> values() const noexcept { return values_; }

  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_start_{0};
  std::vector<Label> columns_;
  std::vector<double> values_;
};

/// Applies H without storing it: one N x N table of axis elements plus the
/// diagonal, O(N^d (1 + d N/2)) per product.
class MatrixFreeHamiltonian {
 public:
  explicit MatrixFreeHamiltonian(const OscillatorConfig& cfg);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(cfg_.size()); }
  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  OscillatorConfig cfg_;
  std::vector<double> axis_table_;  // v_element_1d(a, b), row-major N x N
  std::vector<double> diagonal_;
};

struct AssemblyLimits {
  std::uint64_t dense_cap = 4096;                       // max N^d for dense storage
  std::uint64_t memory_budget_bytes = 2ull << 30;       // sparse and dense estimates
};

class HamiltonianMatrix {
 public:
  using Storage = std::variant<DenseMatrix, SymmetricSparseMatrix, MatrixFreeHamiltonian>;

  HamiltonianMatrix(OscillatorConfig cfg, Storage storage);

  const OscillatorConfig& config() const noexcept { return cfg_; }
  const Storage& storage() const noexcept { return storage_; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(cfg_.size()); }

  bool is_dense() const noexcept { return std::holds_alternative<DenseMatrix>(storage_); }
  const DenseMatrix& dense() const;
  const SymmetricSparseMatrix& sparse() const;

  /// y = H x. Throws std::invalid_argument on length mismatch.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> matvec(std::span<const double> x) const;

 private:
  OscillatorConfig cfg_;
  Storage storage_;
};

std::uint64_t dense_bytes(const OscillatorConfig& cfg);
std::uint64_t sparse_bytes(const OscillatorConfig& cfg);

/// Throws cho::size_error when N^d exceeds limits.dense_cap or the memory budget.
HamiltonianMatrix assemble_dense(const OscillatorConfig& cfg, const AssemblyLimits& limits = {});

/// Throws cho::size_error when the storage estimate exceeds the memory budget.
HamiltonianMatrix assemble_sparse(const OscillatorConfig& cfg, const AssemblyLimits& limits = {});

HamiltonianMatrix make_matrix_free(const OscillatorConfig& cfg);

}  // namespace cho
