#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cho/basis.hpp"

using namespace cho;
using std::numbers::pi;

TEST_CASE("phi examples") {
  const BoxGeometry geom(2.5);
  CHECK(phi(0, 0.0, geom) == doctest::Approx(1.0 / std::sqrt(2.5)).epsilon(1e-15));
  CHECK(phi(1, 0.0, geom) == 0.0);
  CHECK(std::abs(phi(0, 2.5, geom)) < 1e-15);
  CHECK_THROWS_AS(phi(0, 2.5000001, geom), std::domain_error);
  CHECK_THROWS_AS(phi(3, -3.0, geom), std::domain_error);
  CHECK_THROWS_AS(BoxGeometry(0.0), std::invalid_argument);
  CHECK_THROWS_AS(BoxGeometry(-1.0), std::invalid_argument);
}

TEST_CASE("Dirichlet walls, parity and the single-cos form") {
  const BoxGeometry geom(1.7);
  for (std::uint32_t r = 0; r < 20; ++r) {
    CHECK(std::abs(phi(r, 1.7, geom)) < 1e-14);
    CHECK(std::abs(phi(r, -1.7, geom)) < 1e-14);
    for (int i = 0; i <= 40; ++i) {
      const double x = -1.7 + 3.4 * i / 40.0;
      const double sign = r % 2 == 0 ? 1.0 : -1.0;
      CHECK(phi(r, -x, geom) == doctest::Approx(sign * phi(r, x, geom)).scale(1.0).epsilon(1e-14));
      CHECK(std::abs(phi(r, x, geom) - phi_literal(r, x, geom)) < 1e-14);
    }
  }
}

TEST_CASE("psi examples") {
  const BoxGeometry geom(1.3);
  const BasisShape shape(4, 2);
  const std::vector<double> origin{0.0, 0.0};
  CHECK(psi(0, origin, shape, geom) == doctest::Approx(1.0 / 1.3).epsilon(1e-15));
  for (Label s = 0; s < shape.size(); ++s) {
    const auto m = decompose(s, shape);
    if (m[0] % 2 == 1 || m[1] % 2 == 1) CHECK(psi(s, origin, shape, geom) == 0.0);
  }
  const std::vector<double> wall{0.2, 1.3};
  CHECK(std::abs(psi(0, wall, shape, geom)) < 1e-15);
  const std::vector<double> point{0.3, -0.4};
  CHECK(psi(6, point, shape, geom) ==
        doctest::Approx(phi(1, 0.3, geom) * phi(2, -0.4, geom)).epsilon(1e-15));
  const std::vector<double> wrong{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(psi(0, wrong, shape, geom), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre rule") {
  CHECK_THROWS_AS(GaussLegendre(1), std::invalid_argument);
  const GaussLegendre rule(20);
  double weight_sum = 0.0;
  for (double w : rule.weights()) weight_sum += w;
  CHECK(weight_sum == doctest::Approx(2.0).epsilon(1e-15));
  // exact for polynomials up to degree 39
  CHECK(rule.integrate([](double x) { return std::pow(x, 38); }, -1.0, 1.0) ==
        doctest::Approx(2.0 / 39.0).epsilon(1e-14));
  CHECK(rule.integrate([](double x) { return x * x; }, 0.0, 3.0) ==
        doctest::Approx(9.0).epsilon(1e-14));
  const GaussLegendre again(20);
  CHECK(again.nodes() == rule.nodes());
}

TEST_CASE("quad_inner examples at order 64") {
  const BoxGeometry geom(1.0);
  auto f = [&](std::uint32_t r) { return [r, &geom](double x) { return phi(r, x, geom); }; };
  CHECK(std::abs(quad_inner(f(0), f(0), 64, geom) - 1.0) < 1e-12);
  CHECK(std::abs(quad_inner(f(0), f(1), 64, geom)) < 1e-12);
  // int x^2 cos(pi x / 2L) cos(3 pi x / 2L) dx / L = -3 L^2 / (2 pi^2)
  for (double half_width : {1.0, 0.6, 2.2}) {
    const BoxGeometry g(half_width);
    const double q = quad_inner([&](double x) { return phi(0, x, g); },
                                [&](double x) { return x * x * phi(2, x, g); }, 64, g);
    CHECK(q == doctest::Approx(-1.5 * half_width * half_width / (pi * pi)).epsilon(1e-13));
    // magnitude equals the potential element 3/32 once the pi^2/(16 L^2) prefactor is applied
    CHECK(std::abs(q) * pi * pi / (16.0 * half_width * half_width) ==
          doctest::Approx(3.0 / 32.0).epsilon(1e-13));
  }
}

TEST_CASE("orthonormality r, s < 20 at order 128") {
  const BoxGeometry geom(1.7);
  double worst = 0.0;
  for (std::uint32_t r = 0; r < 20; ++r)
    for (std::uint32_t s = 0; s < 20; ++s) {
      const double q = quad_inner([&](double x) { return phi(r, x, geom); },
                                  [&](double x) { return phi(s, x, geom); }, 128, geom);
      worst = std::max(worst, std::abs(q - (r == s ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("kinetic eigenrelation") {
  const double hbar = 1.3, mass = 0.7, half_width = 1.7;
  const BoxGeometry geom(half_width);
  const double eps = pi * pi * hbar * hbar / (8.0 * mass * half_width * half_width);
  for (std::uint32_t r = 0; r < 10; ++r) {
    const double t = quad_inner(
        [&](double x) { return phi(r, x, geom); },
        [&](double x) { return -hbar * hbar / (2.0 * mass) * phi_second_derivative(r, x, geom); },
        128, geom);
    CHECK(t == doctest::Approx((r + 1.0) * (r + 1.0) * eps).epsilon(1e-8));
  }
}
