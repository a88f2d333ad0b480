#pragma once

// Symmetric eigensolvers: a self-contained dense Householder + implicit QL
// path, and a Lanczos iteration with full reorthogonalization and locking for
// the lowest levels of large operators.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cho/hamiltonian.hpp"

namespace cho {

struct SolverMetadata {
  std::string solver;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;  // QL sweeps (dense) or operator applications (Lanczos)
  double tol = 0.0;
  bool converged = true;
};

struct Spectrum {
  std::size_t dimension = 0;
  std::vector<double> eigenvalues;   // ascending
  std::vector<double> eigenvectors;  // column-major, dimension x eigenvalues.size(); may be empty
  std::vector<double> residuals;     // ||H v - E v||_2, when vectors were computed
  SolverMetadata metadata;

  bool has_eigenvectors() const noexcept { return !eigenvectors.empty(); }
  std::span<const double> eigenvector(std::size_t i) const {
    return {eigenvectors.data() + i * dimension, dimension};
  }
};

struct DegenerateLevel {
  double energy;         // mean of the group
  std::size_t first;     // index of the first member in the ascending list
  std::size_t multiplicity;
};

inline constexpr double kDegeneracyGap = 1e-9;

/// Groups an ascending list: a new level starts when the gap to the previous
/// value exceeds rel_gap * max(1, |value|).
std::vector<DegenerateLevel> group_degenerate(std::span<const double> ascending,
                                              double rel_gap = kDegeneracyGap);

/// Multiplicity of the group each eigenvalue belongs to, aligned with the input.
std::vector<std::size_t> multiplicity_per_value(std::span<const double> ascending,
                                                double rel_gap = kDegeneracyGap);

/// Eigen-decomposition of a symmetric tridiagonal matrix by implicit QL.
/// `diagonal` (size n) receives the ascending eigenvalues. When `vectors` is
/// non-null it must hold n*n entries; on return it holds the eigenvectors as
/// rows (vectors[i*n + k] is component k of eigenvector i), rotated from the
/// incoming basis (pass the identity for tridiagonal eigenvectors).
/// Returns the number of QL iterations. Throws cho::convergence_error.
std::size_t tridiagonal_ql(std::vector<double>& diagonal, std::vector<double> off_diagonal,
                           std::vector<double>* vectors);

/// Full spectrum of a dense symmetric matrix.
Spectrum dense_eigen(const DenseMatrix& h, bool want_vectors = true);
/// Throws std::logic_error unless h is densely stored.
Spectrum dense_eigen(const HamiltonianMatrix& h, bool want_vectors = true);

/// Replaces the lowest `count` eigenvalues by Rayleigh quotients of their
/// eigenvectors accumulated in extended precision. The error is quadratic in
/// the eigenvector error, so an isolated level ends up accurate to about one
/// ulp of itself rather than one ulp of ||H||. Throws std::invalid_argument
/// when the spectrum carries no eigenvectors or count exceeds its size.
void refine_rayleigh(const HamiltonianMatrix& h, Spectrum& spectrum, std::size_t count);

struct LanczosOptions {
  std::size_t k = 1;
  double tol = 1e-10;
  std::size_t max_iter = 100000;  // total operator applications
  std::uint64_t seed = 20240917;
  std::size_t check_interval = 5;
};

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

/// k lowest eigenpairs of a symmetric operator given only its action. On
/// exhausting max_iter the pairs found so far are returned with
/// metadata.converged = false.
Spectrum lanczos_lowest(const LinearOperator& op, std::size_t dimension,
                        const LanczosOptions& options);
Spectrum lanczos_lowest(const HamiltonianMatrix& h, const LanczosOptions& options);

/// ||A v - e v||_2.
double residual_norm(const LinearOperator& op, std::span<const double> v, double e);

}  // namespace cho
