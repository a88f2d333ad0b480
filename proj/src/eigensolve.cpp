#include "cho/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "cho/error.hpp"

namespace cho {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Householder reduction of the row-major symmetric matrix v (n x n) to
// tridiagonal form. On return v holds the accumulated orthogonal transform
// (columns), d the diagonal and e the subdiagonal with e[0] = 0.
void householder_tridiagonalize(std::vector<double>& v, std::size_t n, std::vector<double>& d,
                                std::vector<double>& e) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return v[i * n + j]; };
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) d[j] = at(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
        at(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        at(j, i) = f;
        g = e[j] + at(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += at(k, j) * d[k];
          e[k] += at(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) at(k, j) -= (f * e[k] + g * d[k]);
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  // Accumulate transformations.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    at(n - 1, i) = at(i, i);
    at(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = at(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += at(k, i + 1) * at(k, j);
        for (std::size_t k = 0; k <= i; ++k) at(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) at(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = at(n - 1, j);
    at(n - 1, j) = 0.0;
  }
  at(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

std::vector<double> transpose(const std::vector<double>& a, std::size_t n) {
  std::vector<double> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[j * n + i] = a[i * n + j];
  return t;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::vector<double> v(n);
  // Explicit 53-bit mapping; std::uniform_real_distribution is not portable bit-for-bit.
  for (auto& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  return v;
}

// Classical Gram-Schmidt against the stored rows, applied twice.
void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) {
      const double c = dot(q, w);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
    }
}

}  // namespace

std::vector<DegenerateLevel> group_degenerate(std::span<const double> ascending, double rel_gap) {
  std::vector<DegenerateLevel> levels;
  double sum = 0.0;
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    const double e = ascending[i];
    const bool new_level =
        levels.empty() ||
        e - ascending[i - 1] > rel_gap * std::max(1.0, std::abs(e));
    if (new_level) {
      if (!levels.empty()) levels.back().energy = sum / levels.back().multiplicity;
      levels.push_back({e, i, 0});
      sum = 0.0;
    }
    ++levels.back().multiplicity;
    sum += e;
  }
  if (!levels.empty()) levels.back().energy = sum / levels.back().multiplicity;
  return levels;
}

std::vector<std::size_t> multiplicity_per_value(std::span<const double> ascending,
                                                double rel_gap) {
  std::vector<std::size_t> out(ascending.size());
  for (const auto& level : group_degenerate(ascending, rel_gap))
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(level.first), level.multiplicity,
                level.multiplicity);
  return out;
}

std::size_t tridiagonal_ql(std::vector<double>& d, std::vector<double> off,
                           std::vector<double>* vectors) {
  const std::size_t n = d.size();
  if (n == 0) return 0;
  if (off.size() + 1 != n) throw std::invalid_argument("off-diagonal must have n - 1 entries");
  if (vectors && vectors->size() != n * n)
    throw std::invalid_argument("eigenvector buffer must hold n * n entries");
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());

  auto row = [&](std::size_t i) { return vectors->data() + i * n; };
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t iteration_cap = 60;
  std::size_t total = 0;
  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      std::size_t iter = 0;
      do {
        if (++iter > iteration_cap)
          throw convergence_error("implicit QL did not converge for eigenvalue index " +
                                  std::to_string(l));
        ++total;
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (vectors) {
            double* vi = row(i);
            double* vi1 = row(i + 1);
            for (std::size_t k = 0; k < n; ++k) {
              h = vi1[k];
              vi1[k] = s * vi[k] + c * h;
              vi[k] = c * vi[k] - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  // Ascending order; stable so exact ties keep their original order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = d[order[i]];
  d = std::move(sorted);
  if (vectors) {
    std::vector<double> v(n * n);
    for (std::size_t i = 0; i < n; ++i)
      std::copy_n(row(order[i]), n, v.begin() + static_cast<std::ptrdiff_t>(i * n));
    *vectors = std::move(v);
  }
  return total;
}

double residual_norm(const LinearOperator& op, std::span<const double> v, double e) {
  std::vector<double> hv(v.size());
  op(v, hv);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = hv[i] - e * v[i];
    s += r * r;
  }
  return std::sqrt(s);
}

Spectrum dense_eigen(const DenseMatrix& h, bool want_vectors) {
  const std::size_t n = h.rows();
  Spectrum spec;
  spec.dimension = n;
  spec.metadata.solver = "dense-householder-ql";
  if (n == 0) return spec;

  std::vector<double> v(h.data().begin(), h.data().end());
  std::vector<double> d, e;
  householder_tridiagonalize(v, n, d, e);
  std::vector<double> off(e.begin() + 1, e.end());
  std::vector<double> rows;
  if (want_vectors) rows = transpose(v, n);
  spec.metadata.iterations = tridiagonal_ql(d, std::move(off), want_vectors ? &rows : nullptr);
  spec.eigenvalues = std::move(d);
  if (want_vectors) {
    spec.eigenvectors = std::move(rows);
    const LinearOperator op = [&h](std::span<const double> x, std::span<double> y) {
      h.multiply(x, y);
    };
    spec.residuals.resize(n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      spec.residuals[i] = residual_norm(op, spec.eigenvector(i), spec.eigenvalues[i]);
      worst = std::max(worst, spec.residuals[i]);
    }
    spec.metadata.tol = worst;
  }
  return spec;
}

Spectrum dense_eigen(const HamiltonianMatrix& h, bool want_vectors) {
  return dense_eigen(h.dense(), want_vectors);
}

namespace {

long double rayleigh_numerator(const HamiltonianMatrix& h, std::span<const double> v) {
  const std::size_t n = v.size();
  if (const auto* dense = std::get_if<DenseMatrix>(&h.storage())) {
    long double total = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      long double row = 0.0L;
      for (std::size_t j = 0; j < n; ++j)
        row += static_cast<long double>((*dense)(i, j)) * v[j];
      total += row * v[i];
    }
    return total;
  }
  if (const auto* sparse = std::get_if<SymmetricSparseMatrix>(&h.storage())) {
    const auto start = sparse->row_start();
    const auto cols = sparse->columns();
    const auto vals = sparse->values();
    long double total = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = start[i]; k < start[i + 1]; ++k) {
        const long double term = static_cast<long double>(vals[k]) * v[i] * v[cols[k]];
        total += cols[k] == i ? term : 2.0L * term;
      }
    return total;
  }
  std::vector<double> hv(n);
  h.multiply(v, hv);
  long double total = 0.0L;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<long double>(hv[i]) * v[i];
  return total;
}

}  // namespace

void refine_rayleigh(const HamiltonianMatrix& h, Spectrum& spectrum, std::size_t count) {
  if (!spectrum.has_eigenvectors())
    throw std::invalid_argument("Rayleigh refinement needs eigenvectors");
  if (count > spectrum.eigenvalues.size() || spectrum.dimension != h.rows())
    throw std::invalid_argument("Rayleigh refinement count or dimension mismatch");
  for (std::size_t i = 0; i < count; ++i) {
    const auto v = spectrum.eigenvector(i);
    long double norm = 0.0L;
    for (double x : v) norm += static_cast<long double>(x) * x;
    spectrum.eigenvalues[i] = static_cast<double>(rayleigh_numerator(h, v) / norm);
  }
  // Refinement can reorder members of a degenerate group by an ulp.
  for (std::size_t i = 1; i < count; ++i)
    for (std::size_t j = i; j > 0 && spectrum.eigenvalues[j] < spectrum.eigenvalues[j - 1]; --j) {
      std::swap(spectrum.eigenvalues[j], spectrum.eigenvalues[j - 1]);
      if (j < spectrum.residuals.size()) std::swap(spectrum.residuals[j], spectrum.residuals[j - 1]);
      auto a = spectrum.eigenvectors.begin() + static_cast<std::ptrdiff_t>(j * spectrum.dimension);
      std::swap_ranges(a, a + static_cast<std::ptrdiff_t>(spectrum.dimension),
                       a - static_cast<std::ptrdiff_t>(spectrum.dimension));
    }
}

Spectrum lanczos_lowest(const LinearOperator& op, std::size_t n, const LanczosOptions& options) {
  if (options.k < 1 || options.k > n)
    throw std::invalid_argument("Lanczos needs 1 <= k <= N^d (k = " +
                                std::to_string(options.k) + ", N^d = " + std::to_string(n) +
                                ")");
  if (!(options.tol > 0.0)) throw std::invalid_argument("Lanczos tolerance must be positive");
  const std::size_t check_interval = std::max<std::size_t>(1, options.check_interval);

  std::mt19937_64 rng(options.seed);
  std::vector<std::vector<double>> locked;
  std::vector<double> locked_values;
  std::size_t applications = 0;
  bool converged = true;

  // Each pass runs a fresh Krylov sequence in the complement of the locked
  // vectors and locks its lowest Ritz pair; this recovers every copy of a
  // degenerate level, which a single Krylov sequence cannot.
  while (locked.size() < options.k && converged) {
    std::vector<double> q = random_vector(n, rng);
    orthogonalize(q, locked);
    double qn = norm2(q);
    if (qn < 1e-8) break;  // complement exhausted
    for (auto& x : q) x /= qn;

    std::vector<std::vector<double>> basis{std::move(q)};
    std::vector<double> alpha, beta;
    std::vector<double> w(n);
    const std::size_t room = n - locked.size();
    bool locked_one = false;

    while (!locked_one) {
      if (applications >= options.max_iter) {
        converged = false;
        break;
      }
      const auto& qj = basis.back();
      op(qj, w);
      ++applications;
      const double a = dot(qj, w);
      alpha.push_back(a);
      for (std::size_t i = 0; i < n; ++i) w[i] -= a * qj[i];
      if (basis.size() > 1) {
        const auto& qprev = basis[basis.size() - 2];
        for (std::size_t i = 0; i < n; ++i) w[i] -= beta.back() * qprev[i];
      }
      orthogonalize(w, locked);
      orthogonalize(w, basis);
      const double b = norm2(w);

      const std::size_t m = alpha.size();
      const bool invariant = b <= 1e-12 * std::max(1.0, std::abs(a)) || m == room;
      if (invariant || m % check_interval == 0) {
        std::vector<double> theta = alpha;
        std::vector<double> y(m * m, 0.0);
        for (std::size_t i = 0; i < m; ++i) y[i * m + i] = 1.0;
        tridiagonal_ql(theta, beta, &y);
        const double estimate = invariant ? 0.0 : b * std::abs(y[m - 1]);
        if (estimate <= options.tol * std::max(1.0, std::abs(theta[0]))) {
          std::vector<double> x(n, 0.0);
          for (std::size_t j = 0; j < m; ++j) {
            const double c = y[j];
            const auto& qb = basis[j];
            for (std::size_t i = 0; i < n; ++i) x[i] += c * qb[i];
          }
          orthogonalize(x, locked);
          const double xn = norm2(x);
          for (auto& xi : x) xi /= xn;
          std::vector<double> hx(n);
          op(x, hx);
          ++applications;
          locked_values.push_back(dot(x, hx));
          locked.push_back(std::move(x));
          locked_one = true;
          break;
        }
      }
      beta.push_back(b);
      std::vector<double> next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / b;
      basis.push_back(std::move(next));
    }
  }

  std::vector<std::size_t> order(locked.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return locked_values[a] < locked_values[b];
  });

  Spectrum spec;
  spec.dimension = n;
  spec.metadata = {"lanczos-full-reorth", options.seed, applications, options.tol,
                   converged && locked.size() == options.k};
  for (std::size_t idx : order) {
    spec.eigenvalues.push_back(locked_values[idx]);
    spec.eigenvectors.insert(spec.eigenvectors.end(), locked[idx].begin(), locked[idx].end());
    spec.residuals.push_back(residual_norm(op, locked[idx], locked_values[idx]));
  }
  return spec;
}

Spectrum lanczos_lowest(const HamiltonianMatrix& h, const LanczosOptions& options) {
  const LinearOperator op = [&h](std::span<const double> x, std::span<double> y) {
    h.multiply(x, y);
  };
  return lanczos_lowest(op, h.rows(), options);
}

}  // namespace cho
