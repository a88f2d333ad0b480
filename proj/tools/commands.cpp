#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cho/error.hpp"
#include "cho/matrix_market.hpp"
#include "cho/perturbation.hpp"
#include "cho/verify.hpp"

namespace cho::cli {

namespace {

std::string format_double(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// Writes to --output when given, otherwise to `out`.
void emit(const RunConfig& run, std::ostream& out, const std::string& text) {
  if (run.output.empty() || run.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(run.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + run.output);
  file << text;
  if (!file) throw std::runtime_error("failed writing " + run.output);
}

bool writes_to_stdout(const RunConfig& run) { return run.output.empty() || run.output == "-"; }

OscillatorConfig make_config(const RunConfig& run, std::uint32_t n) {
  return OscillatorConfig(run.d, n, run.effective_lambda());
}

// Size check before anything is allocated.
void check_budget(const OscillatorConfig& cfg, bool dense, const RunConfig& run,
                  std::ostream& err) {
  const std::uint64_t bytes = dense ? dense_bytes(cfg) : sparse_bytes(cfg);
  err << "# N^d = " << cfg.size() << ", estimated " << (dense ? "dense" : "sparse")
      << " storage " << bytes << " bytes\n";
  if (dense && cfg.size() > run.dense_cap)
    throw size_error("N^d = " + std::to_string(cfg.size()) + " exceeds the dense cap " +
                     std::to_string(run.dense_cap) + "; use --solver lanczos");
  if (bytes > run.memory_budget_bytes)
    throw size_error("estimated " + std::to_string(bytes) + " bytes exceeds the memory budget " +
                     std::to_string(run.memory_budget_bytes));
}

Spectrum solve(const OscillatorConfig& cfg, const RunConfig& run, std::size_t k,
               std::ostream& err) {
  if (run.solver == "dense") {
    check_budget(cfg, true, run, err);
    Spectrum spec = dense_eigen(assemble_dense(cfg, run.limits()), true);
    if (k < spec.eigenvalues.size()) {
      spec.eigenvalues.resize(k);
      spec.residuals.resize(k);
      spec.eigenvectors.resize(k * spec.dimension);
    }
    return spec;
  }
  if (run.solver == "lanczos") {
    LanczosOptions options;
    options.k = std::min<std::size_t>(k, static_cast<std::size_t>(cfg.size()));
    options.tol = run.tol;
    options.max_iter = run.max_iter;
    options.seed = run.seed;
    if (run.matrix_free) {
      err << "# N^d = " << cfg.size() << ", matrix-free operator\n";
      return lanczos_lowest(make_matrix_free(cfg), options);
    }
    check_budget(cfg, false, run, err);
    return lanczos_lowest(assemble_sparse(cfg, run.limits()), options);
  }
  throw std::invalid_argument("unknown solver '" + run.solver + "' (dense|lanczos)");
}

std::string spectrum_csv(const Spectrum& spec, const RunConfig& run) {
  std::ostringstream out;
  const auto multiplicity = multiplicity_per_value(spec.eigenvalues);
  out << "index,energy,multiplicity,residual";
  if (run.physical) out << ",energy_physical";
  out << '\n';
  const double scale = run.physical ? run.physical->epsilon() : 1.0;
  for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
    out << i << ',' << format_double(spec.eigenvalues[i]) << ',' << multiplicity[i] << ','
        << (i < spec.residuals.size() ? format_double(spec.residuals[i]) : "");
    if (run.physical) out << ',' << format_double(spec.eigenvalues[i] * scale);
    out << '\n';
  }
  return out.str();
}

}  // namespace

PhysicalUnits parse_physical(const std::string& spec) {
  PhysicalUnits units{NAN, NAN, NAN, NAN};
  std::istringstream in(spec);
  for (std::string item; std::getline(in, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value in --physical");
    const std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number in --physical: " + item);
    }
    if (key == "hbar") units.hbar = value;
    else if (key == "m") units.mass = value;
    else if (key == "L") units.half_width = value;
    else if (key == "omega") units.omega = value;
    else throw std::invalid_argument("unknown --physical key '" + key + "'");
  }
  if (std::isnan(units.hbar) || std::isnan(units.mass) || std::isnan(units.half_width) ||
      std::isnan(units.omega))
    throw std::invalid_argument("--physical needs hbar, m, L and omega");
  units.epsilon();  // validates
  return units;
}

nlohmann::ordered_json spectrum_to_json(const Spectrum& spec, const OscillatorConfig& cfg,
                                        const RunConfig& run) {
  nlohmann::ordered_json j;
  j["config"] = {{"d", cfg.d()},
                 {"N", cfg.n()},
                 {"lambda", cfg.lambda()},
                 {"epsilon", cfg.epsilon()}};
  j["eigenvalues"] = spec.eigenvalues;
  j["multiplicities"] = multiplicity_per_value(spec.eigenvalues);
  j["residuals"] = spec.residuals;
  j["solver_metadata"] = {{"solver", spec.metadata.solver},
                          {"seed", spec.metadata.seed},
                          {"iterations", spec.metadata.iterations},
                          {"tol", spec.metadata.tol},
                          {"converged", spec.metadata.converged}};
  if (run.physical) {
    const double eps = run.physical->epsilon();
    std::vector<double> physical;
    for (double e : spec.eigenvalues) physical.push_back(e * eps);
    j["physical"] = {{"hbar", run.physical->hbar},
                     {"m", run.physical->mass},
                     {"L", run.physical->half_width},
                     {"omega", run.physical->omega},
                     {"epsilon", eps},
                     {"lambda", run.physical->lambda()},
                     {"eigenvalues", physical}};
  }
  if (run.timestamp) j["timestamp"] = utc_timestamp();
  return j;
}

int cmd_eigs(const RunConfig& run, std::ostream& out, std::ostream& err) {
  const OscillatorConfig cfg = make_config(run, run.n());
  const std::size_t k = run.k == 0 ? static_cast<std::size_t>(cfg.size()) : run.k;
  const Spectrum spec = solve(cfg, run, k, err);

  const std::string format = run.format.empty() ? "json" : run.format;
  std::string text;
  if (format == "json")
    text = spectrum_to_json(spec, cfg, run).dump(2) + "\n";
  else if (format == "csv")
    text = spectrum_csv(spec, run);
  else
    throw std::invalid_argument("eigs supports --format json|csv");
  emit(run, out, text);

  if (!writes_to_stdout(run)) {
    const double scale = run.physical ? run.physical->epsilon() : 1.0;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
      out << "E_" << i << " = " << format_double(spec.eigenvalues[i]) << " eps";
      if (run.physical) out << " = " << format_double(spec.eigenvalues[i] * scale);
      out << '\n';
    }
  }
  if (!spec.metadata.converged) {
    err << "error: Lanczos did not converge within " << run.max_iter << " operator applications ("
        << spec.eigenvalues.size() << " of " << k << " pairs found)\n";
    return kSolverFailure;
  }
  return kSuccess;
}

int cmd_perturb(const RunConfig& run, std::ostream& out, std::ostream& err) {
  if (run.d != 1) {
    err << "error: perturbative spectra are one-dimensional only (got --d " << run.d << ")\n";
    return kUsage;
  }
  if (!run.format.empty() && run.format != "csv")
    throw std::invalid_argument("perturb writes --format csv only");
  const OscillatorConfig cfg = make_config(run, run.n());
  if (run.levels > cfg.size())
    throw std::invalid_argument("--levels exceeds the basis size N");
  check_budget(cfg, true, run, err);
  const HamiltonianMatrix h = assemble_dense(cfg, run.limits());
  Spectrum spec = dense_eigen(h, true);
  refine_rayleigh(h, spec, run.levels);
  const double lambda = cfg.lambda();

  std::ostringstream csv;
  csv << "r,E0,E1,E2,E3,series,dense,difference\n";
  for (std::uint32_t r = 0; r < run.levels; ++r) {
    const double series = energy_series(r, lambda, 3);
    csv << r << ',' << format_double(e0(r)) << ',' << format_double(e1(r, lambda)) << ','
        << format_double(e2_closed(r, lambda)) << ',' << format_double(e3_closed(r, lambda)) << ','
        << format_double(series) << ',' << format_double(spec.eigenvalues[r]) << ','
        << format_double(series - spec.eigenvalues[r]) << '\n';
  }
  emit(run, out, csv.str());
  return kSuccess;
}

int cmd_verify(const RunConfig& run, std::ostream& out, std::ostream&) {
  const auto results = run_suite(run.suite);
  std::size_t failures = 0;
  for (const auto& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.suite << " / " << r.name << ": " << r.detail
        << '\n';
    failures += !r.passed;
  }
  out << results.size() - failures << " of " << results.size() << " checks passed\n";
  return failures == 0 ? kSuccess : kVerificationFailure;
}

int cmd_converge(const RunConfig& run, std::ostream& out, std::ostream& err) {
  if (!run.format.empty() && run.format != "csv")
    throw std::invalid_argument("converge writes --format csv only");
  const std::size_t levels = std::max<std::size_t>(1, run.levels);
  std::ostringstream csv;
  csv << "N";
  for (std::size_t i = 0; i < levels; ++i) csv << ",E" << i << ",delta" << i;
  csv << '\n';

  std::vector<double> previous;
  bool monotone = true;
  for (std::uint32_t n : run.n_values) {
    const OscillatorConfig cfg = make_config(run, n);
    if (levels > cfg.size())
      throw std::invalid_argument("--levels exceeds N^d for N = " + std::to_string(n));
    const Spectrum spec = solve(cfg, run, levels, err);
    if (spec.eigenvalues.size() < levels || !spec.metadata.converged) {
      err << "error: solver failed for N = " << n << '\n';
      return kSolverFailure;
    }
    csv << n;
    for (std::size_t i = 0; i < levels; ++i) {
      csv << ',' << format_double(spec.eigenvalues[i]) << ',';
      if (!previous.empty()) {
        const double delta = spec.eigenvalues[i] - previous[i];
        csv << format_double(delta);
        // Small positive steps within rounding of the level are not violations.
        if (delta > 1e-12 * std::max(1.0, std::abs(spec.eigenvalues[i]))) monotone = false;
      }
    }
    csv << '\n';
    previous.assign(spec.eigenvalues.begin(), spec.eigenvalues.begin() + static_cast<long>(levels));
  }
  emit(run, out, csv.str());
  err << "# monotone non-increasing: " << (monotone ? "yes" : "no") << '\n';
  return kSuccess;
}

int cmd_export(const RunConfig& run, std::ostream& out, std::ostream& err) {
  if (!run.format.empty() && run.format != "matrixmarket")
    throw std::invalid_argument("export writes --format matrixmarket only");
  const OscillatorConfig cfg = make_config(run, run.n());
  check_budget(cfg, false, run, err);
  const HamiltonianMatrix h = assemble_sparse(cfg, run.limits());
  std::ostringstream text;
  text.precision(17);
  std::ostringstream comment;
  comment.precision(17);
  comment << "confined harmonic oscillator: d=" << cfg.d() << " N=" << cfg.n()
          << " lambda=" << cfg.lambda() << ", entries in units of epsilon";
  write_matrix_market(text, h.sparse(), comment.str());
  emit(run, out, text.str());
  return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of the d-dimensional confined harmonic oscillator", "cho-spectra"};
  app.require_subcommand(1);
  RunConfig config;
  std::string physical;
  double budget_mb = static_cast<double>(config.memory_budget_bytes) / (1024.0 * 1024.0);
  bool no_timestamp = false;

  auto add_system = [&](CLI::App* sub, bool many_n) {
    sub->add_option("--d", config.d, "Dimension d")->check(CLI::Range(1u, 64u));
    if (many_n)
      sub->add_option("--N", config.n_values, "Per-axis basis sizes")->expected(1, -1);
    else
      sub->add_option("--N", config.n_values, "Per-axis basis size N")->expected(1);
    sub->add_option("--lambda", config.lambda, "Coupling lambda = hbar omega / eps")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--physical", physical, "hbar=..,m=..,L=..,omega=.. (overrides --lambda)");
    sub->add_option("--output", config.output, "Output path (default stdout)");
    sub->add_option("--format", config.format, "json|csv|matrixmarket");
    sub->add_option("--dense-cap", config.dense_cap, "Largest N^d for dense storage");
    sub->add_option("--memory-budget-mb", budget_mb, "Storage budget in MiB")
        ->check(CLI::PositiveNumber);
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--solver", config.solver, "dense|lanczos")
        ->check(CLI::IsMember({"dense", "lanczos"}));
    sub->add_option("--tol", config.tol, "Lanczos residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", config.max_iter, "Lanczos operator-application cap");
    sub->add_option("--seed", config.seed, "Lanczos start-vector seed");
    sub->add_flag("--matrix-free", config.matrix_free, "Lanczos without storing H");
  };

  auto* eigs = app.add_subcommand("eigs", "Assemble and diagonalize H");
  add_system(eigs, false);
  add_solver(eigs);
  eigs->add_option("--k", config.k, "Number of lowest levels (0 = all, dense only)");
  eigs->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp field");

  auto* perturb = app.add_subcommand("perturb", "Perturbative vs diagonalized 1-D levels");
  add_system(perturb, false);
  perturb->add_option("--levels", config.levels, "Number of levels r = 0..levels-1");

  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("--suite", config.suite, "all|algebra|basis|hamiltonian|eigensolve|perturbation");

  auto* converge = app.add_subcommand("converge", "Levels vs basis size N");
  add_system(converge, true);
  add_solver(converge);
  converge->add_option("--levels", config.levels, "Number of levels per N");

  auto* exporter = app.add_subcommand("export", "Write H as Matrix Market");
  add_system(exporter, false);

  // Command-specific defaults.
  perturb->preparse_callback([&](std::size_t) { config.n_values = {60}; });
  converge->preparse_callback([&](std::size_t) {
    config.n_values = {4, 8, 16, 32};
    config.levels = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    config.timestamp = !no_timestamp;
    config.memory_budget_bytes = static_cast<std::uint64_t>(budget_mb * 1024.0 * 1024.0);
    if (!physical.empty()) config.physical = parse_physical(physical);
    if (config.n_values.empty() || config.n_values.front() < 1)
      throw std::invalid_argument("--N must be >= 1");
    for (auto n : config.n_values)
      if (n < 1) throw std::invalid_argument("--N must be >= 1");

    if (eigs->parsed()) return cmd_eigs(config, out, err);
    if (perturb->parsed()) return cmd_perturb(config, out, err);
    if (verify->parsed()) return cmd_verify(config, out, err);
    if (converge->parsed()) return cmd_converge(config, out, err);
    if (exporter->parsed()) return cmd_export(config, out, err);
  } catch (const size_error& e) {
    err << "size error: " << e.what() << '\n';
    return kSizeBudget;
  } catch (const convergence_error& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}

}  // namespace cho::cli
