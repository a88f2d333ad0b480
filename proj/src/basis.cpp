#include "cho/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cho {

BoxGeometry::BoxGeometry(double half_width) : half_width_(half_width) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw std::invalid_argument("box half-width L must be positive and finite");
}

namespace {

double wave_number(std::uint32_t r, const BoxGeometry& geom) {
  return (r + 1.0) * std::numbers::pi / (2.0 * geom.half_width());
}

void check_inside(double x, const BoxGeometry& geom) {
  if (!(std::abs(x) <= geom.half_width()))
    throw std::domain_error("x = " + std::to_string(x) + " outside the box |x| <= L");
}

}  // namespace

double phi(std::uint32_t r, double x, const BoxGeometry& geom) {
  check_inside(x, geom);
  const double amplitude = 1.0 / std::sqrt(geom.half_width());
  const double arg = wave_number(r, geom) * x;
  return r % 2 == 0 ? amplitude * std::cos(arg) : amplitude * std::sin(arg);
}

double phi_literal(std::uint32_t r, double x, const BoxGeometry& geom) {
  check_inside(x, geom);
  const double pi = std::numbers::pi;
  const double shift = std::sin(r * pi / 2.0);
  return std::cos(pi / 2.0 * shift * shift - wave_number(r, geom) * x) /
         std::sqrt(geom.half_width());
}

double phi_second_derivative(std::uint32_t r, double x, const BoxGeometry& geom) {
  const double k = wave_number(r, geom);
  return -k * k * phi(r, x, geom);
}

double psi(Label s, std::span<const double> point, const BasisShape& shape,
           const BoxGeometry& geom) {
  if (point.size() != shape.d())
    throw std::invalid_argument("point has " + std::to_string(point.size()) +
                                " coordinates, expected d = " + std::to_string(shape.d()));
  const MultiIndex digits = decompose(s, shape);
  double value = 1.0;
  for (std::size_t i = 0; i < digits.size(); ++i) value *= phi(digits[i], point[i], geom);
  return value;
}

GaussLegendre::GaussLegendre(std::uint32_t order) : nodes_(order), weights_(order) {
  if (order < 2) throw std::invalid_argument("quadrature order must be >= 2");
  const double pi = std::numbers::pi;
  const std::uint32_t half = (order + 1) / 2;
  for (std::uint32_t i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::uint32_t k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::uint32_t k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[order - 1 - i] = x;
    weights_[i] = w;
    weights_[order - 1 - i] = w;
  }
  if (order % 2 == 1) nodes_[order / 2] = 0.0;
}

double GaussLegendre::integrate(const std::function<double(double)>& f, double a,
                                double b) const {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    // Clamp so that endpoint-checking integrands never see x a rounding step outside.
    double x = mid + half * nodes_[i];
    x = std::min(std::max(x, a), b);
    sum += weights_[i] * f(x);
  }
  return half * sum;
}

double quad_inner(const std::function<double(double)>& f,
                  const std::function<double(double)>& g, std::uint32_t order,
                  const BoxGeometry& geom) {
  const GaussLegendre rule(order);
  const double l = geom.half_width();
  return rule.integrate([&](double x) { return f(x) * g(x); }, -l, l);
}

}  // namespace cho
