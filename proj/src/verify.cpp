#include "cho/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cho/basis.hpp"
#include "cho/eigensolve.hpp"
#include "cho/hamiltonian.hpp"
#include "cho/indexing.hpp"
#include "cho/int_matrix.hpp"
#include "cho/perturbation.hpp"

namespace cho {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

using Check = std::function<Outcome()>;

std::string sci(double x) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << x;
  return out.str();
}

std::int64_t ipow(std::int64_t base, int exponent) {
  std::int64_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

// Every (N, d) pair the structure identities are checked on.
template <typename F>
Outcome for_each_small_shape(F&& check) {
  for (std::uint32_t n : {2u, 3u, 4u})
    for (std::uint32_t d : {1u, 2u, 3u}) {
      const BasisShape shape(n, d);
      if (auto failure = check(shape); !failure.empty())
        return {false, "N=" + std::to_string(n) + " d=" + std::to_string(d) + ": " + failure};
    }
  return {true, "(N,d) in {2,3,4}x{1,2,3}"};
}

std::vector<std::pair<std::string, Check>> algebra_checks() {
  std::vector<std::pair<std::string, Check>> checks;
  checks.emplace_back("label round trip", [] {
    return for_each_small_shape([](const BasisShape& shape) -> std::string {
      for (Label s = 0; s < shape.size(); ++s)
        if (compose(decompose(s, shape), shape.n()) != s) return "label " + std::to_string(s);
      return {};
    });
  });
  checks.emplace_back("alpha_i alpha_j product rule", [] {
    return for_each_small_shape([](const BasisShape& shape) -> std::string {
      const auto n = static_cast<std::size_t>(shape.size());
      const int d = static_cast<int>(shape.d());
      const auto big_n = static_cast<std::int64_t>(shape.n());
      const IntMatrix ones = IntMatrix::all_ones(n);
      for (std::uint32_t i = 1; i <= shape.d(); ++i)
        for (std::uint32_t j = 1; j <= shape.d(); ++j) {
          const IntMatrix ai = materialize_alpha(i, shape);
          const IntMatrix aj = materialize_alpha(j, shape);
          const IntMatrix expected =
              i == j ? ipow(big_n, d - 1) * ai : ipow(big_n, d - 2) * ones;
          if (ai * aj != expected || aj * ai != expected)
            return "i=" + std::to_string(i) + " j=" + std::to_string(j);
        }
      return {};
    });
  });
  checks.emplace_back("alpha_i trace, rank and square", [] {
    return for_each_small_shape([](const BasisShape& shape) -> std::string {
      const int d = static_cast<int>(shape.d());
      const auto big_n = static_cast<std::int64_t>(shape.n());
      for (std::uint32_t i = 1; i <= shape.d(); ++i) {
        const IntMatrix a = materialize_alpha(i, shape);
        if (!a.is_symmetric()) return "alpha_" + std::to_string(i) + " not symmetric";
        if (a.trace() != static_cast<std::int64_t>(shape.size())) return "trace";
        if (a.rank() != shape.n()) return "rank " + std::to_string(a.rank());
        if (a * a != ipow(big_n, d - 1) * a) return "alpha_i^2 != N^(d-1) alpha_i";
      }
      return {};
    });
  });
  checks.emplace_back("alpha squared rule", [] {
    return for_each_small_shape([](const BasisShape& shape) -> std::string {
      const auto n = static_cast<std::size_t>(shape.size());
      const int d = static_cast<int>(shape.d());
      const auto big_n = static_cast<std::int64_t>(shape.n());
      IntMatrix alpha(n);
      for (std::uint32_t i = 1; i <= shape.d(); ++i) alpha = alpha + materialize_alpha(i, shape);
      IntMatrix expected = ipow(big_n, d - 1) * alpha;
      if (d >= 2)
        expected = expected + (ipow(big_n, d - 2) * d * (d - 1)) * IntMatrix::all_ones(n);
      return alpha * alpha == expected ? std::string{} : "alpha^2 mismatch";
    });
  });
  checks.emplace_back("c_i power, trace and rank", [] {
    return for_each_small_shape([](const BasisShape& shape) -> std::string {
      const int d = static_cast<int>(shape.d());
      const auto big_n = static_cast<std::int64_t>(shape.n());
      for (std::uint32_t i = 1; i <= shape.d(); ++i) {
        const IntMatrix c = materialize_c(i, shape);
        if (!c.is_symmetric()) return "c_" + std::to_string(i) + " not symmetric";
        if (c * c != big_n * c) return "c_i^2 != N c_i";
        if (c * c * c != (big_n * big_n) * c) return "c_i^3 != N^2 c_i";
        if (c.trace() != static_cast<std::int64_t>(shape.size())) return "trace";
        if (c.rank() != static_cast<std::size_t>(ipow(big_n, d - 1)))
          return "rank " + std::to_string(c.rank());
      }
      return {};
    });
  });
  checks.emplace_back("delta contraction and c_i forms", [] {
    return for_each_small_shape([](const BasisShape& shape) -> std::string {
      for (Label s = 0; s < shape.size(); ++s)
        for (Label t = 0; t < shape.size(); ++t) {
          int c_sum = 0;
          for (std::uint32_t i = 1; i <= shape.d(); ++i) {
            const int c = c_element(i, s, t, shape);
            if (alpha_element(i, s, t, shape) * c != (s == t ? 1 : 0)) return "contraction";
            if (c != c_element_from_alpha(i, s, t, shape)) return "c_i forms disagree";
            c_sum += c;
          }
          const std::uint32_t agree = agreement(s, t, shape);
          const int expected = s == t ? static_cast<int>(shape.d()) : (agree + 1 == shape.d() ? 1 : 0);
          if (c_sum != expected) return "piecewise c_st";
        }
      return {};
    });
  });
  return checks;
}

std::vector<std::pair<std::string, Check>> basis_checks() {
  std::vector<std::pair<std::string, Check>> checks;
  checks.emplace_back("orthonormality r,s < 20 (order 128)", [] {
    const BoxGeometry geom(1.0);
    double worst = 0.0;
    for (std::uint32_t r = 0; r < 20; ++r)
      for (std::uint32_t s = 0; s < 20; ++s) {
        const double v = quad_inner([&](double x) { return phi(r, x, geom); },
                                    [&](double x) { return phi(s, x, geom); }, 128, geom);
        worst = std::max(worst, std::abs(v - (r == s ? 1.0 : 0.0)));
      }
    return Outcome{worst < 1e-10, "max deviation " + sci(worst)};
  });
  checks.emplace_back("kinetic eigenrelation r < 10", [] {
    const BoxGeometry geom(1.0);
    // -hbar^2/2m d^2/dx^2 in units of eps = pi^2 hbar^2 / (8 m L^2) is -(4 L^2/pi^2) d^2/dx^2.
    const double to_eps = 4.0 / (std::numbers::pi * std::numbers::pi);
    double worst = 0.0;
    for (std::uint32_t r = 0; r < 10; ++r) {
      const double v = quad_inner([&](double x) { return phi(r, x, geom); },
                                  [&](double x) { return -to_eps * phi_second_derivative(r, x, geom); },
                                  128, geom);
      const double expected = (r + 1.0) * (r + 1.0);
      worst = std::max(worst, std::abs(v - expected) / expected);
    }
    return Outcome{worst < 1e-8, "max relative deviation " + sci(worst)};
  });
  checks.emplace_back("parity and literal form", [] {
    const BoxGeometry geom(1.7);
    double worst_parity = 0.0, worst_literal = 0.0;
    for (std::uint32_t r = 0; r < 20; ++r)
      for (int k = -50; k <= 50; ++k) {
        const double x = 1.7 * k / 50.0;
        const double sign = r % 2 == 0 ? 1.0 : -1.0;
        worst_parity = std::max(worst_parity, std::abs(phi(r, -x, geom) - sign * phi(r, x, geom)));
        worst_literal = std::max(worst_literal, std::abs(phi(r, x, geom) - phi_literal(r, x, geom)));
      }
    return Outcome{worst_parity < 1e-14 && worst_literal < 1e-14,
                   "parity " + sci(worst_parity) + ", literal " + sci(worst_literal)};
  });
  return checks;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  return v;
}

double relative_difference(std::span<const double> a, std::span<const double> b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(a[i]));
  }
  return diff / std::max(scale, 1e-300);
}

std::vector<std::pair<std::string, Check>> hamiltonian_checks() {
  std::vector<std::pair<std::string, Check>> checks;
  checks.emplace_back("potential elements vs quadrature (d=1, N=12)", [] {
    const double half_width = 1.3;
    const BoxGeometry geom(half_width);
    const OscillatorConfig cfg(1, 12, 1.0);
    // m omega^2 x^2 / 2 in units of eps is lambda^2 pi^2 x^2 / (16 L^2).
    const double scale = std::numbers::pi * std::numbers::pi / (16.0 * half_width * half_width);
    double worst = 0.0, worst_magnitude = 0.0;
    std::size_t sign_flips = 0;
    for (Label s = 0; s < 12; ++s)
      for (Label t = 0; t < 12; ++t) {
        const auto a = static_cast<std::uint32_t>(s);
        const auto b = static_cast<std::uint32_t>(t);
        const double q = scale * quad_inner([&](double x) { return phi(a, x, geom); },
                                            [&](double x) { return x * x * phi(b, x, geom); },
                                            128, geom);
        const double v = v_element(s, t, cfg);
        worst = std::max(worst, std::abs(v - q));
        worst_magnitude = std::max(worst_magnitude, std::abs(std::abs(v) - std::abs(q)));
        sign_flips += std::abs(v - q) > 1e-9 && std::abs(v + q) <= 1e-9;
      }
    return Outcome{worst < 1e-9, "max |closed - quadrature| " + sci(worst) +
                                     ", max ||closed| - |quadrature|| " + sci(worst_magnitude) +
                                     ", opposite-sign elements " + std::to_string(sign_flips)};
  });
  checks.emplace_back("Kronecker sum (d=2, N=8)", [] {
    const OscillatorConfig one(1, 8, 1.0), two(2, 8, 1.0);
    const auto h1 = assemble_dense(one);
    const auto h2 = assemble_dense(two);
    double worst = 0.0;
    for (std::size_t s = 0; s < 64; ++s)
      for (std::size_t t = 0; t < 64; ++t) {
        const std::size_t s1 = s / 8, s2 = s % 8, t1 = t / 8, t2 = t % 8;
        const double expected = (s2 == t2 ? h1.dense()(s1, t1) : 0.0) +
                                (s1 == t1 ? h1.dense()(s2, t2) : 0.0);
        worst = std::max(worst, std::abs(h2.dense()(s, t) - expected));
      }
    return Outcome{worst < 1e-13, "max deviation " + sci(worst)};
  });
  checks.emplace_back("symmetry and sparsity soundness", [] {
    for (auto [d, n] : {std::pair{1u, 9u}, {2u, 6u}, {3u, 4u}}) {
      const OscillatorConfig cfg(d, n, 1.0);
      for (Label s = 0; s < cfg.size(); ++s) {
        const auto row = row_pattern(s, cfg);
        for (Label t = 0; t < cfg.size(); ++t) {
          const double h = h_element(s, t, cfg);
          if (h != h_element(t, s, cfg)) return Outcome{false, "asymmetric element"};
          const bool in_pattern = std::binary_search(row.begin(), row.end(), t);
          if ((h != 0.0) != in_pattern) return Outcome{false, "pattern mismatch"};
        }
      }
    }
    return Outcome{true, "d=1 N=9, d=2 N=6, d=3 N=4"};
  });
  checks.emplace_back("storage backends agree", [] {
    double worst = 0.0;
    for (auto [d, n] : {std::pair{1u, 11u}, {2u, 7u}, {3u, 5u}}) {
      const OscillatorConfig cfg(d, n, 1.7);
      const auto x = random_vector(static_cast<std::size_t>(cfg.size()), 7);
      const auto yd = assemble_dense(cfg).matvec(x);
      worst = std::max(worst, relative_difference(yd, assemble_sparse(cfg).matvec(x)));
      worst = std::max(worst, relative_difference(yd, make_matrix_free(cfg).matvec(x)));
    }
    return Outcome{worst < 1e-13, "max relative deviation " + sci(worst)};
  });
  return checks;
}

std::vector<std::pair<std::string, Check>> eigensolve_checks() {
  std::vector<std::pair<std::string, Check>> checks;
  checks.emplace_back("lambda = 0 spectrum (d=2, N=6)", [] {
    const OscillatorConfig cfg(2, 6, 0.0);
    const auto spec = dense_eigen(assemble_dense(cfg), false);
    std::vector<double> expected;
    for (std::uint32_t a = 1; a <= 6; ++a)
      for (std::uint32_t b = 1; b <= 6; ++b) expected.push_back(a * a + b * b);
    std::sort(expected.begin(), expected.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i)
      worst = std::max(worst, std::abs(spec.eigenvalues[i] - expected[i]));
    const auto levels = group_degenerate(spec.eigenvalues);
    const bool doublet = levels.size() > 1 && std::abs(levels[1].energy - 5.0) < 1e-12 &&
                         levels[1].multiplicity == 2;
    return Outcome{worst < 1e-12 && doublet, "max deviation " + sci(worst)};
  });
  checks.emplace_back("Lanczos vs dense (d=2, N=10, k=5)", [] {
    const OscillatorConfig cfg(2, 10, 1.0);
    const auto dense = dense_eigen(assemble_dense(cfg), false);
    LanczosOptions options;
    options.k = 5;
    const auto lanczos = lanczos_lowest(assemble_sparse(cfg), options);
    double worst = 0.0, residual = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      worst = std::max(worst, std::abs(lanczos.eigenvalues[i] - dense.eigenvalues[i]));
      residual = std::max(residual, lanczos.residuals[i]);
    }
    return Outcome{lanczos.metadata.converged && worst < 1e-8 && residual < 1e-8,
                   "max deviation " + sci(worst) + ", max residual " + sci(residual)};
  });
  checks.emplace_back("unconfined limit (d=1, N=200, lambda=100)", [] {
    const OscillatorConfig cfg(1, 200, 100.0);
    const auto spec = dense_eigen(assemble_dense(cfg), false);
    double worst = 0.0;
    for (std::size_t r = 0; r < 3; ++r) {
      const double expected = 100.0 * (r + 0.5);
      worst = std::max(worst, std::abs(spec.eigenvalues[r] - expected) / expected);
    }
    return Outcome{worst < 1e-3, "max relative deviation " + sci(worst)};
  });
  checks.emplace_back("variational monotonicity in N", [] {
    double previous = INFINITY;
    for (std::uint32_t n : {4u, 8u, 16u, 32u}) {
      const double ground = dense_eigen(assemble_dense(OscillatorConfig(1, n, 2.0)), false).eigenvalues[0];
      if (ground > previous) return Outcome{false, "increase at N=" + std::to_string(n)};
      previous = ground;
    }
    return Outcome{true, "d=1 lambda=2, N in {4,8,16,32}"};
  });
  return checks;
}

std::vector<std::pair<std::string, Check>> perturbation_checks() {
  std::vector<std::pair<std::string, Check>> checks;
  checks.emplace_back("second order closed form vs direct sum", [] {
    for (std::uint32_t r : {0u, 1u, 2u, 5u, 10u}) {
      const auto direct = e2_direct(r, 1.0, 100000);
      const double diff = std::abs(direct.value - e2_closed(r, 1.0));
      if (diff > direct.error_bound + e2_closed_rounding(r, 1.0))
        return Outcome{false, "r=" + std::to_string(r) + " diff " + sci(diff)};
    }
    return Outcome{true, "r in {0,1,2,5,10}, cutoff 1e5"};
  });
  checks.emplace_back("third order closed form vs direct sum", [] {
    for (std::uint32_t r : {0u, 1u, 2u, 5u}) {
      const auto direct = e3_direct(r, 1.0, 10000);
      const double diff = std::abs(direct.value - e3_closed(r, 1.0));
      if (diff > direct.error_bound + e3_closed_rounding(r, 1.0))
        return Outcome{false, "r=" + std::to_string(r) + " diff " + sci(diff)};
    }
    return Outcome{true, "r in {0,1,2,5}, cutoff 1e4"};
  });
  checks.emplace_back("even/odd level closed forms", [] {
    for (std::uint32_t r = 0; r < 6; ++r) {
      const auto even = e2_direct(2 * r, 1.0, 100000);
      const auto odd = e2_direct(2 * r + 1, 1.0, 100000);
      const double de = std::abs(even.value - e2_even_level_closed(r, 1.0));
      const double dodd = std::abs(odd.value - e2_odd_level_closed(r, 1.0));
      if (de > even.error_bound + e2_closed_rounding(2 * r, 1.0) ||
          dodd > odd.error_bound + e2_closed_rounding(2 * r + 1, 1.0))
        return Outcome{false, "r=" + std::to_string(r)};
    }
    return Outcome{true, "levels 0..11"};
  });
  checks.emplace_back("unified series reproduces the corrections", [] {
    double worst = 0.0;
    for (double lambda : {0.1, 1.0, 3.0})
      for (std::uint32_t r = 0; r < 50; ++r) {
        const double parts = e0(r) + e1(r, lambda) + e2_closed(r, lambda) + e3_closed(r, lambda);
        worst = std::max(worst, std::abs(energy_series(r, lambda, 3) - parts) / std::abs(parts));
      }
    return Outcome{worst <= 1e-14, "max relative deviation " + sci(worst)};
  });
  return checks;
}

std::vector<std::pair<std::string, Check>> checks_for(std::string_view suite) {
  if (suite == "algebra") return algebra_checks();
  if (suite == "basis") return basis_checks();
  if (suite == "hamiltonian") return hamiltonian_checks();
  if (suite == "eigensolve") return eigensolve_checks();
  if (suite == "perturbation") return perturbation_checks();
  throw std::invalid_argument("unknown verification suite '" + std::string(suite) + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "basis", "hamiltonian", "eigensolve",
                                              "perturbation"};
  return names;
}

std::vector<CheckResult> run_suite(std::string_view name) {
  std::vector<CheckResult> results;
  const std::vector<std::string> suites =
      name == "all" ? suite_names() : std::vector<std::string>{std::string(name)};
  for (const auto& suite : suites) {
    for (auto& [check_name, check] : checks_for(suite)) {
      CheckResult result{suite, check_name, false, {}};
      try {
        const Outcome outcome = check();
        result.passed = outcome.passed;
        result.detail = outcome.detail;
      } catch (const std::exception& e) {
        result.detail = std::string("exception: ") + e.what();
      }
      results.push_back(std::move(result));
    }
  }
  return results;
}

}  // namespace cho
