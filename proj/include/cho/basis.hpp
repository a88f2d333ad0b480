#pragma once

// Particle-in-a-box eigenfunctions on |x| <= L and their tensor products,
// plus Gauss-Legendre quadrature on the box for oracle inner products.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cho/indexing.hpp"

namespace cho {

class BoxGeometry {
 public:
  /// half_width is L; throws std::invalid_argument unless L > 0 and finite.
  explicit BoxGeometry(double half_width = 1.0);
  double half_width() const noexcept { return half_width_; }

 private:
  double half_width_;
};

/// phi_r(x): sqrt(1/L) cos((r+1) pi x / 2L) for even r, sqrt(1/L) sin(...) for odd r.
/// Throws std::domain_error for |x| > L.
double phi(std::uint32_t r, double x, const BoxGeometry& geom);

/// The single-cosine form cos[pi/2 sin^2(r pi/2) - (r+1) pi x / 2L] / sqrt(L).
double phi_literal(std::uint32_t r, double x, const BoxGeometry& geom);

/// Analytic second derivative: -((r+1) pi / 2L)^2 phi_r(x).
double phi_second_derivative(std::uint32_t r, double x, const BoxGeometry& geom);

/// psi_s(x_1..x_d) = prod_i phi_{s_i}(x_i). Throws std::invalid_argument when
/// point.size() != d.
double psi(Label s, std::span<const double> point, const BasisShape& shape,
           const BoxGeometry& geom);

/// Gauss-Legendre nodes and weights on [-1, 1].
class GaussLegendre {
 public:
  explicit GaussLegendre(std::uint32_t order);

  std::uint32_t order() const noexcept { return static_cast<std::uint32_t>(nodes_.size()); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Integral of f over [a, b].
  double integrate(const std::function<double(double)>& f, double a, double b) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

inline constexpr std::uint32_t kDefaultQuadratureOrder = 128;

/// Integral over [-L, L] of f(x) g(x). order must be >= 2.
double quad_inner(const std::function<double(double)>& f,
                  const std::function<double(double)>& g, std::uint32_t order,
                  const BoxGeometry& geom);

}  // namespace cho
