#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "cho/eigensolve.hpp"
#include "cho/error.hpp"

using namespace cho;

namespace {

std::vector<double> free_levels(const OscillatorConfig& cfg) {
  std::vector<double> e;
  for (Label s = 0; s < cfg.size(); ++s) {
    double sum = 0.0;
    for (auto digit : decompose(s, cfg.shape())) sum += (digit + 1.0) * (digit + 1.0);
    e.push_back(cfg.epsilon() * sum);
  }
  std::sort(e.begin(), e.end());
  return e;
}

double orthonormality_defect(const Spectrum& spec) {
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double dot = 0.0;
      const auto a = spec.eigenvector(i), b = spec.eigenvector(j);
      for (std::size_t k = 0; k < spec.dimension; ++k) dot += a[k] * b[k];
      worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace

TEST_CASE("degeneracy grouping") {
  const std::vector<double> e{1.0, 1.0 + 1e-12, 2.0, 5.0, 5.0, 5.0 + 5e-10, 7.0};
  const auto levels = group_degenerate(e);
  REQUIRE(levels.size() == 4);
  CHECK(levels[0].multiplicity == 2);
  CHECK(levels[2].first == 3);
  CHECK(levels[2].multiplicity == 3);
  CHECK(multiplicity_per_value(e) == std::vector<std::size_t>{2, 2, 1, 3, 3, 3, 1});
  CHECK(group_degenerate(std::vector<double>{}).empty());
  const std::vector<double> near{1000.0, 1000.0 + 5e-7};
  CHECK(group_degenerate(near).size() == 1);
}

TEST_CASE("tridiagonal QL on a known matrix") {
  // second-difference matrix: 2 - 2 cos(k pi / (n+1))
  const std::size_t n = 9;
  std::vector<double> diag(n, 2.0), off(n - 1, -1.0);
  tridiagonal_ql(diag, off, nullptr);
  for (std::size_t k = 0; k < n; ++k)
    CHECK(diag[k] == doctest::Approx(2.0 - 2.0 * std::cos((k + 1) * M_PI / (n + 1))).epsilon(1e-14));
  std::vector<double> bad_diag(3, 0.0), bad_off(3, 0.0);
  CHECK_THROWS_AS(tridiagonal_ql(bad_diag, bad_off, nullptr), std::invalid_argument);
}

TEST_CASE("lambda = 0 spectra are the sorted kinetic levels") {
  for (auto [d, n] : {std::pair{1u, 40u}, {2u, 6u}, {3u, 4u}}) {
    const OscillatorConfig cfg(d, n, 0.0);
    const auto spec = dense_eigen(assemble_dense(cfg));
    const auto expected = free_levels(cfg);
    REQUIRE(spec.eigenvalues.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
      CHECK(std::abs(spec.eigenvalues[i] - expected[i]) < 1e-12);
  }
  const auto spec = dense_eigen(assemble_dense(OscillatorConfig(2, 6, 0.0)));
  const auto levels = group_degenerate(spec.eigenvalues);
  CHECK(levels[0].energy == doctest::Approx(2.0));
  CHECK(levels[0].multiplicity == 1);
  CHECK(levels[1].energy == doctest::Approx(5.0));
  CHECK(levels[1].multiplicity == 2);
}

TEST_CASE("two-level and three-level oracles") {
  const auto h2 = assemble_dense(OscillatorConfig(1, 2, 1.0));
  const auto s2 = dense_eigen(h2);
  CHECK(s2.eigenvalues[0] == doctest::Approx(h2.dense()(0, 0)).epsilon(1e-15));
  CHECK(s2.eigenvalues[1] == doctest::Approx(h2.dense()(1, 1)).epsilon(1e-15));
  // roots of the characteristic cubic, evaluated at 30 digits
  const auto s3 = dense_eigen(assemble_dense(OscillatorConfig(1, 3, 1.0)));
  CHECK(s3.eigenvalues[0] == doctest::Approx(1.07953332002791183177).epsilon(1e-14));
  CHECK(s3.eigenvalues[1] == doctest::Approx(4.17436675835602830456).epsilon(1e-14));
  CHECK(s3.eigenvalues[2] == doctest::Approx(9.19281130779525588846).epsilon(1e-14));
}

TEST_CASE("dense spectrum invariants") {
  const auto h = assemble_dense(OscillatorConfig(2, 9, 2.5));
  const auto spec = dense_eigen(h);
  CHECK(std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end()));
  CHECK(orthonormality_defect(spec) < 1e-10);
  for (double r : spec.residuals) CHECK(r < 1e-10 * spec.eigenvalues.back());
  CHECK(spec.metadata.converged);
  CHECK(spec.metadata.tol >= *std::max_element(spec.residuals.begin(), spec.residuals.end()));
  const auto values_only = dense_eigen(h, false);
  CHECK_FALSE(values_only.has_eigenvectors());
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
    CHECK(values_only.eigenvalues[i] == spec.eigenvalues[i]);
  const auto again = dense_eigen(h);
  CHECK(again.eigenvalues == spec.eigenvalues);
}

TEST_CASE("dense solver accepts a sparse Hamiltonian only through dense storage") {
  CHECK_THROWS(dense_eigen(assemble_sparse(OscillatorConfig(1, 4, 1.0))));
}

TEST_CASE("Lanczos agrees with dense") {
  const OscillatorConfig cfg(2, 10, 1.0);
  const auto dense = dense_eigen(assemble_dense(cfg), false);
  LanczosOptions options;
  options.k = 5;
  options.tol = 1e-10;
  for (const auto& h : {assemble_sparse(cfg), make_matrix_free(cfg)}) {
    const auto spec = lanczos_lowest(h, options);
    REQUIRE(spec.eigenvalues.size() == 5);
    CHECK(spec.metadata.converged);
    CHECK(spec.metadata.seed == options.seed);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(std::abs(spec.eigenvalues[i] - dense.eigenvalues[i]) < 1e-8);
      CHECK(spec.residuals[i] <= 10 * options.tol * std::max(1.0, std::abs(spec.eigenvalues[i])));
    }
    CHECK(orthonormality_defect(spec) < 1e-10);
  }
}

TEST_CASE("Lanczos finds degenerate copies and the full spectrum") {
  const OscillatorConfig cfg(2, 6, 0.0);
  LanczosOptions options;
  options.k = 3;
  const auto spec = lanczos_lowest(assemble_sparse(cfg), options);
  CHECK(spec.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(spec.eigenvalues[1] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(spec.eigenvalues[2] == doctest::Approx(5.0).epsilon(1e-12));

  const OscillatorConfig full(2, 16, 1.3);
  const auto dense = dense_eigen(assemble_dense(full), false);
  options.k = 256;
  const auto all = lanczos_lowest(assemble_sparse(full), options);
  REQUIRE(all.eigenvalues.size() == 256);
  for (std::size_t i = 0; i < 256; ++i) CHECK(std::abs(all.eigenvalues[i] - dense.eigenvalues[i]) < 1e-8);
}

TEST_CASE("Lanczos ground state at lambda = 0 is d eps") {
  LanczosOptions options;
  for (std::uint32_t d : {1u, 3u, 4u}) {
    const auto spec = lanczos_lowest(make_matrix_free(OscillatorConfig(d, 6, 0.0)), options);
    CHECK(spec.eigenvalues[0] == doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("Lanczos is reproducible for a fixed seed") {
  const OscillatorConfig cfg(3, 6, 0.8);
  LanczosOptions options;
  options.k = 4;
  const auto a = lanczos_lowest(assemble_sparse(cfg), options);
  const auto b = lanczos_lowest(assemble_sparse(cfg), options);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.metadata.iterations == b.metadata.iterations);
}

TEST_CASE("Lanczos iteration cap yields a flagged partial result") {
  const OscillatorConfig cfg(2, 12, 1.0);
  LanczosOptions options;
  options.k = 6;
  options.max_iter = 12;
  const auto spec = lanczos_lowest(assemble_sparse(cfg), options);
  CHECK_FALSE(spec.metadata.converged);
  CHECK(spec.eigenvalues.size() < 6);
}

TEST_CASE("Lanczos argument checks") {
  const auto h = assemble_sparse(OscillatorConfig(1, 4, 1.0));
  LanczosOptions options;
  options.k = 0;
  CHECK_THROWS_AS(lanczos_lowest(h, options), std::invalid_argument);
  options.k = 5;
  CHECK_THROWS_AS(lanczos_lowest(h, options), std::invalid_argument);
  options.k = 1;
  options.tol = 0.0;
  CHECK_THROWS_AS(lanczos_lowest(h, options), std::invalid_argument);
}

TEST_CASE("variational monotonicity in N") {
  double previous = INFINITY;
  for (std::uint32_t n : {4u, 8u, 16u, 32u}) {
    const double e = dense_eigen(assemble_dense(OscillatorConfig(1, n, 2.0)), false).eigenvalues[0];
    CHECK(e <= previous);
    previous = e;
  }
}

TEST_CASE("unconfined limit") {
  const auto spec = dense_eigen(assemble_dense(OscillatorConfig(1, 200, 100.0)), false);
  for (int r = 0; r < 3; ++r)
    CHECK(std::abs(spec.eigenvalues[r] / (100.0 * (r + 0.5)) - 1.0) < 1e-3);
}

TEST_CASE("residual norm") {
  const LinearOperator scale = [](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.0 * x[i];
  };
  const std::vector<double> v{0.6, 0.8};
  CHECK(residual_norm(scale, v, 3.0) == 0.0);
  CHECK(residual_norm(scale, v, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("Rayleigh refinement") {
  // ground level at lambda = 0.1, N = 60 from a 30-digit eigensolve
  const auto h = assemble_dense(OscillatorConfig(1, 60, 0.1));
  Spectrum spec = dense_eigen(h);
  refine_rayleigh(h, spec, 3);
  CHECK(std::abs(spec.eigenvalues[0] - 1.0008060563923107187) < 4.5e-16);
  CHECK(std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end()));

  const OscillatorConfig cfg(2, 8, 1.0);
  const auto dense = assemble_dense(cfg);
  Spectrum a = dense_eigen(dense);
  Spectrum b = a;
  refine_rayleigh(dense, a, 6);
  refine_rayleigh(assemble_sparse(cfg), b, 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) < 1e-14);
  Spectrum c = dense_eigen(dense);
  refine_rayleigh(make_matrix_free(cfg), c, 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(a.eigenvalues[i] - c.eigenvalues[i]) < 1e-13);

  Spectrum bare = dense_eigen(dense, false);
  CHECK_THROWS_AS(refine_rayleigh(dense, bare, 1), std::invalid_argument);
  CHECK_THROWS_AS(refine_rayleigh(dense, a, 65), std::invalid_argument);
}
