#pragma once

// Rayleigh-Schroedinger corrections for the one-dimensional confined
// oscillator, treating the harmonic potential as a perturbation of the box.
// Closed forms are infinite-basis results; the *_direct functions sum the
// defining series up to a cutoff and report a rigorous error bound.

#include <array>
#include <cstdint>
#include <functional>
#include <utility>

namespace cho {

/// Riemann zeta at the even arguments the series needs; zeta(0) = -1/2 by
/// analytic continuation.
struct ZetaValues {
  static constexpr double zeta0 = -0.5;
  static constexpr double zeta2 = 1.6449340668482264365;   // pi^2 / 6
  static constexpr double zeta4 = 1.0823232337111381915;   // pi^4 / 90
  static constexpr double zeta6 = 1.0173430619844491397;   // pi^6 / 945

  /// Throws std::out_of_range unless m is one of 0, 2, 4, 6.
  static double even(int m);
};

/// Integer coefficients c_n^(m), m = 0..3, n = 0..m, of the unified series.
struct PerturbationTable {
  static constexpr int max_order = 3;
  static constexpr std::array<std::array<int, 4>, 4> c{{
      {-1, 0, 0, 0},
      {1, -2, 0, 0},
      {1, 5, -14, 0},
      {1, 60, 186, -484},
  }};

  /// Throws std::out_of_range outside 0 <= n <= m <= 3.
  static int coefficient(int m, int n);
};

/// A truncated series value with a bound on |value - infinite sum| covering
/// both the discarded tail and floating-point rounding.
struct SumEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  double tail_bound = 0.0;
  std::uint64_t terms = 0;
};

/// eps_rs = eps_r - eps_s = eps (r + s + 2)(r - s).
double energy_gap(std::uint32_t r, std::uint32_t s, double epsilon = 1.0);

double e0(std::uint32_t r, double epsilon = 1.0);
double e1(std::uint32_t r, double lambda, double epsilon = 1.0);

/// 2 lambda^2 eps^3 (r+1)(s+1) / eps_rs^2 for r - s even, else 0.
/// Throws cho::contract_error when r == s.
double v_offdiag(std::uint32_t r, std::uint32_t s, double lambda, double epsilon = 1.0);

/// Second-order correction summed over 0 <= s <= cutoff, s != r.
/// Throws std::invalid_argument unless cutoff > r.
SumEstimate e2_direct(std::uint32_t r, double lambda, std::uint64_t cutoff,
                      double epsilon = 1.0);
double e2_closed(std::uint32_t r, double lambda, double epsilon = 1.0);
/// Bound on the rounding error of e2_closed (its terms partially cancel).
double e2_closed_rounding(std::uint32_t r, double lambda, double epsilon = 1.0);

/// Third-order correction with both sums truncated at cutoff; the inner
/// double sum includes s == t terms with the diagonal V_ss.
SumEstimate e3_direct(std::uint32_t r, double lambda, std::uint64_t cutoff,
                      double epsilon = 1.0);
double e3_closed(std::uint32_t r, double lambda, double epsilon = 1.0);
double e3_closed_rounding(std::uint32_t r, double lambda, double epsilon = 1.0);

/// Sum of the corrections through order m (0..3) from the coefficient table.
/// Throws std::out_of_range for m > 3.
double energy_series(std::uint32_t r, double lambda, int order, double epsilon = 1.0);

/// (sum of f(2s) for s = 0..(M - M mod 2)/2, sum of f(2s+1) for s = 0..(M + M mod 2)/2 - 1).
std::pair<double, double> parity_split(const std::function<double(std::uint64_t)>& f,
                                       std::uint64_t m);

// Level-parity decomposition of the second-order sum. For level q the sum is
// split into A_q (s < q) and B_q (s > q) over same-parity s only, written
// with r = floor(q / 2).

/// Raw second-order summand (s+1)^2 / ((q-s)^5 (q+s+2)^5) for q - s even, else 0.
double level_summand(std::uint32_t q, std::uint64_t s);

/// Reduced summand after keeping only same-parity s: for q = 2r,
/// (2s+1)^2 / (2^10 (r-s)^5 (r+s+1)^5); for q = 2r+1, 4 (s+1)^2 / (2^10 (r-s)^5 (r+s+2)^5).
double reduced_summand(std::uint32_t q, std::uint64_t s);

/// The single expression covering both parities:
/// (2s+1+q mod 2)^2 / ((2r-2s)^5 (q+2s+2+q mod 2)^5).
double unified_summand(std::uint32_t q, std::uint64_t s);

/// E^(2) of level 2r and level 2r+1 as closed forms in r.
double e2_even_level_closed(std::uint32_t r, double lambda, double epsilon = 1.0);
double e2_odd_level_closed(std::uint32_t r, double lambda, double epsilon = 1.0);

/// 4 lambda^4 eps (q+1)^2 (A_q + B_q) using the unified summand, B_q truncated
/// at reduced index cutoff.
SumEstimate e2_from_level_split(std::uint32_t q, double lambda, std::uint64_t cutoff,
                                double epsilon = 1.0);

}  // namespace cho
