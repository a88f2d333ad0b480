#include "cho/perturbation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cho/error.hpp"
#include "cho/hamiltonian.hpp"
#include "cho/summation.hpp"

namespace cho {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

double pow5(double x) {
  const double x2 = x * x;
  return x2 * x2 * x;
}

double inverse_power(double base, int exponent) {
  double result = 1.0;
  for (int i = 0; i < exponent; ++i) result /= base;
  return result;
}

void check_cutoff(std::uint32_t r, std::uint64_t cutoff) {
  if (cutoff <= r)
    throw std::invalid_argument("summation cutoff " + std::to_string(cutoff) +
                                " must exceed the level " + std::to_string(r));
}

}  // namespace

double ZetaValues::even(int m) {
  switch (m) {
    case 0: return zeta0;
    case 2: return zeta2;
    case 4: return zeta4;
    case 6: return zeta6;
    default: throw std::out_of_range("zeta(" + std::to_string(m) + ") is not tabulated");
  }
}

int PerturbationTable::coefficient(int m, int n) {
  if (m < 0 || m > max_order || n < 0 || n > m)
    throw std::out_of_range("no coefficient c_" + std::to_string(n) + "^(" + std::to_string(m) +
                            ")");
  return c[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
}

double energy_gap(std::uint32_t r, std::uint32_t s, double epsilon) {
  const std::int64_t sum = static_cast<std::int64_t>(r) + s + 2;
  const std::int64_t diff = static_cast<std::int64_t>(r) - s;
  return epsilon * static_cast<double>(sum * diff);
}

double e0(std::uint32_t r, double epsilon) { return epsilon * (r + 1.0) * (r + 1.0); }

double e1(std::uint32_t r, double lambda, double epsilon) {
  const double q = r + 1.0;
  return lambda * lambda * epsilon / 8.0 * (ZetaValues::zeta2 - 1.0 / (q * q));
}

double v_offdiag(std::uint32_t r, std::uint32_t s, double lambda, double epsilon) {
  if (r == s) throw contract_error("v_offdiag requires r != s");
  if ((r % 2) != (s % 2)) return 0.0;
  const double gap = energy_gap(r, s, epsilon);
  return 2.0 * lambda * lambda * epsilon * epsilon * epsilon * (r + 1.0) * (s + 1.0) /
         (gap * gap);
}

SumEstimate e2_direct(std::uint32_t r, double lambda, std::uint64_t cutoff, double epsilon) {
  check_cutoff(r, cutoff);
  CompensatedSum below, above;
  SumEstimate out;
  for (std::uint64_t s = r % 2; s <= cutoff; s += 2) {
    if (s == r) continue;
    const double num = (s + 1.0) * (s + 1.0);
    const double term = num / (pow5(static_cast<double>(r) - static_cast<double>(s)) *
                               pow5(static_cast<double>(r) + static_cast<double>(s) + 2.0));
    (s < r ? below : above).add(term);
    ++out.terms;
  }
  const double prefactor = 4.0 * std::pow(lambda, 4) * epsilon * (r + 1.0) * (r + 1.0);
  const double sum = below.value() + above.value();
  out.value = prefactor * sum;
  // Same-parity tail s > cutoff: each term is below 1/(s-r)^8.
  const double gap = static_cast<double>(cutoff - r);
  out.tail_bound = prefactor * inverse_power(gap, 7) / 7.0;
  const double rounding = 32.0 * kUnitRoundoff * prefactor * (below.magnitude() + above.magnitude()) +
                          4.0 * kUnitRoundoff * std::abs(out.value);
  out.error_bound = out.tail_bound + rounding;
  return out;
}

double e2_closed(std::uint32_t r, double lambda, double epsilon) {
  const double q = r + 1.0;
  const double q2 = q * q;
  return std::pow(lambda, 4) * epsilon / 128.0 *
         (ZetaValues::zeta4 / q2 - 5.0 * ZetaValues::zeta2 / (q2 * q2) + 7.0 / (q2 * q2 * q2));
}

double e2_closed_rounding(std::uint32_t r, double lambda, double epsilon) {
  const double q2 = (r + 1.0) * (r + 1.0);
  const double magnitude =
      ZetaValues::zeta4 / q2 + 5.0 * ZetaValues::zeta2 / (q2 * q2) + 7.0 / (q2 * q2 * q2);
  return 16.0 * kUnitRoundoff * std::pow(lambda, 4) * epsilon / 128.0 * magnitude;
}

SumEstimate e3_direct(std::uint32_t r, double lambda, std::uint64_t cutoff, double epsilon) {
  check_cutoff(r, cutoff);
  if (cutoff > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("third-order cutoff too large");

  // Only levels of r's parity couple to r.
  std::vector<std::uint32_t> levels;
  std::vector<double> weight;  // w_s = V_rs / eps_rs
  for (std::uint64_t s = r % 2; s <= cutoff; s += 2) {
    if (s == r) continue;
    const auto su = static_cast<std::uint32_t>(s);
    levels.push_back(su);
    weight.push_back(v_element_1d(r, su, lambda, epsilon) / energy_gap(r, su, epsilon));
  }

  // sum_s sum_t f_st = sum_s f_ss + sum_{s<t} (f_st + f_ts), f symmetric here.
  CompensatedSum triple;
  const std::size_t count = levels.size();
  for (std::size_t i = 0; i < count; ++i) {
    const double wi = weight[i];
    triple.add(wi * wi * v_element_1d(levels[i], levels[i], lambda, epsilon));
    CompensatedSum row;
    for (std::size_t j = i + 1; j < count; ++j)
      row.add(weight[j] * v_element_1d(levels[i], levels[j], lambda, epsilon));
    triple.add(2.0 * wi * row.value());
  }

  CompensatedSum squares;
  double weight_magnitude = 0.0;
  for (double w : weight) {
    squares.add(w * w);
    weight_magnitude += std::abs(w);
  }
  const double v_rr = v_element_1d(r, r, lambda, epsilon);

  SumEstimate out;
  out.terms = static_cast<std::uint64_t>(count) * count + count;
  out.value = triple.value() - v_rr * squares.value();

  // |V_st| <= lambda^2 eps pi^2/48 for all s, t; |w_s| <= 2 lambda^2 (r+1) / (s-r)^5 for s > r.
  const double coupling = lambda * lambda * epsilon;
  const double v_max = coupling * 0.20561675835602830;  // pi^2 / 48
  const double gap = static_cast<double>(cutoff - r);
  const double weight_tail = 2.0 * lambda * lambda * (r + 1.0) * inverse_power(gap, 4) / 4.0;
  const double square_tail =
      4.0 * std::pow(lambda, 4) * (r + 1.0) * (r + 1.0) * inverse_power(gap, 9) / 9.0;
  out.tail_bound = v_max * weight_tail * (2.0 * weight_magnitude + weight_tail) +
                   std::abs(v_rr) * square_tail;
  const double magnitude = v_max * weight_magnitude * weight_magnitude +
                           std::abs(v_rr) * squares.magnitude();
  out.error_bound = out.tail_bound + 64.0 * kUnitRoundoff * magnitude +
                    4.0 * kUnitRoundoff * std::abs(out.value);
  return out;
}

double e3_closed(std::uint32_t r, double lambda, double epsilon) {
  const double q = r + 1.0;
  const double q2 = q * q;
  const double q4 = q2 * q2;
  return std::pow(lambda, 6) * epsilon / 2048.0 *
         (ZetaValues::zeta6 / q4 - 60.0 * ZetaValues::zeta4 / (q4 * q2) +
          186.0 * ZetaValues::zeta2 / (q4 * q4) - 242.0 / (q4 * q4 * q2));
}

double e3_closed_rounding(std::uint32_t r, double lambda, double epsilon) {
  const double q2 = (r + 1.0) * (r + 1.0);
  const double q4 = q2 * q2;
  const double magnitude = ZetaValues::zeta6 / q4 + 60.0 * ZetaValues::zeta4 / (q4 * q2) +
                           186.0 * ZetaValues::zeta2 / (q4 * q4) + 242.0 / (q4 * q4 * q2);
  return 16.0 * kUnitRoundoff * std::pow(lambda, 6) * epsilon / 2048.0 * magnitude;
}

double energy_series(std::uint32_t r, double lambda, int order, double epsilon) {
  if (order < 0 || order > PerturbationTable::max_order)
    throw std::out_of_range("perturbation order " + std::to_string(order) +
                            " unsupported: coefficients are known only through order 3");
  const double q2 = (r + 1.0) * (r + 1.0);
  double total = 0.0;
  for (int m = 0; m <= order; ++m) {
    const double prefactor = std::pow(lambda, 2 * m) * epsilon / std::ldexp(1.0, 4 * m - 1);
    double inner = 0.0;
    for (int n = 0; n <= m; ++n) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      const int exponent = m + n - 1;
      const double scale = exponent >= 0 ? inverse_power(q2, exponent) : q2;
      inner += sign * ZetaValues::even(2 * m - 2 * n) * PerturbationTable::coefficient(m, n) * scale;
    }
    total += prefactor * inner;
  }
  return total;
}

std::pair<double, double> parity_split(const std::function<double(std::uint64_t)>& f,
                                       std::uint64_t m) {
  const std::uint64_t parity = m % 2;
  double even = 0.0;
  for (std::uint64_t s = 0; s <= (m - parity) / 2; ++s) even += f(2 * s);
  double odd = 0.0;
  for (std::uint64_t s = 0; s < (m + parity) / 2; ++s) odd += f(2 * s + 1);
  return {even, odd};
}

double level_summand(std::uint32_t q, std::uint64_t s) {
  if (s == q) throw contract_error("the second-order summand excludes s == q");
  const auto sd = static_cast<double>(s);
  if ((s % 2) != (q % 2)) return 0.0;
  return (sd + 1.0) * (sd + 1.0) / (pow5(q - sd) * pow5(q + sd + 2.0));
}

double reduced_summand(std::uint32_t q, std::uint64_t s) {
  const std::uint32_t r = q / 2;
  if (s == r) throw contract_error("the reduced summand excludes s == floor(q/2)");
  const auto sd = static_cast<double>(s);
  const double rd = r;
  if (q % 2 == 0)
    return (2.0 * sd + 1.0) * (2.0 * sd + 1.0) /
           (1024.0 * pow5(rd - sd) * pow5(rd + sd + 1.0));
  return 4.0 * (sd + 1.0) * (sd + 1.0) / (1024.0 * pow5(rd - sd) * pow5(rd + sd + 2.0));
}

double unified_summand(std::uint32_t q, std::uint64_t s) {
  const std::uint32_t r = q / 2;
  if (s == r) throw contract_error("the unified summand excludes s == floor(q/2)");
  const auto sd = static_cast<double>(s);
  const double odd = q % 2;
  const double num = 2.0 * sd + 1.0 + odd;
  return num * num / (pow5(2.0 * r - 2.0 * sd) * pow5(q + 2.0 * sd + 2.0 + odd));
}

double e2_even_level_closed(std::uint32_t r, double lambda, double epsilon) {
  const double q = 2.0 * r + 1.0;
  const double q2 = q * q;
  return std::pow(lambda, 4) * epsilon / 128.0 *
         (ZetaValues::zeta4 / q2 - 5.0 * ZetaValues::zeta2 / (q2 * q2) + 7.0 / (q2 * q2 * q2));
}

double e2_odd_level_closed(std::uint32_t r, double lambda, double epsilon) {
  const double q = 2.0 * r + 2.0;
  const double q2 = q * q;
  return std::pow(lambda, 4) * epsilon / 128.0 *
         (ZetaValues::zeta4 / q2 - 5.0 * ZetaValues::zeta2 / (q2 * q2) + 7.0 / (q2 * q2 * q2));
}

SumEstimate e2_from_level_split(std::uint32_t q, double lambda, std::uint64_t cutoff,
                                double epsilon) {
  const std::uint32_t r = q / 2;
  check_cutoff(r, cutoff);
  CompensatedSum a, b;
  for (std::uint64_t s = 0; s < r; ++s) a.add(unified_summand(q, s));
  for (std::uint64_t s = r + 1; s <= cutoff; ++s) b.add(unified_summand(q, s));
  SumEstimate out;
  out.terms = cutoff;
  const double prefactor = 4.0 * std::pow(lambda, 4) * epsilon * (q + 1.0) * (q + 1.0);
  out.value = prefactor * (a.value() + b.value());
  // Each reduced term with u = s - r is at most 1/(256 u^8).
  out.tail_bound = prefactor * inverse_power(static_cast<double>(cutoff - r), 7) / (256.0 * 7.0);
  out.error_bound = out.tail_bound +
                    32.0 * kUnitRoundoff * prefactor * (a.magnitude() + b.magnitude()) +
                    4.0 * kUnitRoundoff * std::abs(out.value);
  return out;
}

}  // namespace cho
