#include "xls/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "xls/rng.hpp"
#include "xls/sampling.hpp"

namespace xls {

namespace {

std::string format_double(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::string opt_cell(const std::optional<double>& x) { return x ? format_double(*x) : "NA"; }

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  }
  for (auto& worker : pool) worker.join();
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace

int SampleCountRule::count(int basis_size) const {
  const double n = basis_size;
  double s = 0.0;
  switch (kind) {
    case Kind::Linear: s = factor * n; break;
    case Kind::LogLinear: s = factor * n * std::log(n); break;
    case Kind::LogLinearMax: s = factor * n * std::max(std::log(n), 1.0); break;
  }
  // Every study needs S >= N at every degree; clamping keeps that true at
  // the N = 1 edge where log N vanishes.
  return std::max(basis_size, static_cast<int>(std::ceil(s)));
}

std::string SampleCountRule::str() const {
  switch (kind) {
    case Kind::Linear: return "linear:" + format_double(factor);
    case Kind::LogLinear: return "loglinear:" + format_double(factor);
    case Kind::LogLinearMax: return "loglinearmax:" + format_double(factor);
  }
  return "?";
}

SampleCountRule SampleCountRule::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  SampleCountRule rule;
  if (name == "linear") rule.kind = Kind::Linear;
  else if (name == "loglinear") rule.kind = Kind::LogLinear;
  else if (name == "loglinearmax") rule.kind = Kind::LogLinearMax;
  else throw std::invalid_argument("samples: unknown rule '" + std::string(text) + "'");
  rule.factor = colon == std::string_view::npos ? 1.0 : std::stod(std::string(text.substr(colon + 1)));
  if (!(rule.factor > 0.0)) throw std::invalid_argument("samples: factor must be positive");
  return rule;
}

std::vector<std::pair<std::string, SampleCountRule>> sample_count_presets() {
  return {
      {"linear2", {SampleCountRule::Kind::Linear, 2.0}},
      {"loglinear1.5", {SampleCountRule::Kind::LogLinear, 1.5}},
      {"loglinear1", {SampleCountRule::Kind::LogLinear, 1.0}},
      {"loglinear2", {SampleCountRule::Kind::LogLinear, 2.0}},
  };
}

MultiIndexSet ExperimentSpec::make_index_set(int degree) const {
  if (index_kind == MultiIndexSet::Kind::LpBall) return MultiIndexSet::lp_ball(dim, lp_exponent, degree);
  return MultiIndexSet::total_degree(dim, degree);
}

TensorBasis ExperimentSpec::make_basis(int degree) const {
  return TensorBasis::isotropic(family, make_index_set(degree));
}

TargetFunction ExperimentSpec::make_target() const {
  TargetFunction f;
  if (target == "gaussian-bump") f = f_gaussian_bump(dim);
  else if (target == "exponential") f = f_exponential(dim);
  else if (target == "diffusion")
    f = build_diffusion(dim, diffusion_abar, diffusion_sigma, diffusion_lc, diffusion_nx);
  else if (target == "resistor") {
    if (dim % 2 != 0) throw std::invalid_argument("target resistor: d must be even (2 per stage)");
    f = build_resistor_network(dim / 2, resistor_v0);
  } else {
    throw std::invalid_argument("target: unknown function '" + target + "'");
  }
  return f;
}

ExperimentSpec ExperimentSpec::parse_config(std::istream& in) {
  ExperimentSpec spec;
  spec.degrees.clear();
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto is_space = [](unsigned char c) { return std::isspace(c); };
    line.erase(line.begin(), std::find_if_not(line.begin(), line.end(), is_space));
    line.erase(std::find_if_not(line.rbegin(), line.rend(), is_space).base(), line.end());
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument("config: duplicate key '" + key + "'");
  }

  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto v = take("kind")) {
    if (*v == "condition") spec.kind = ExperimentKind::ConditionStudy;
    else if (*v == "convergence") spec.kind = ExperimentKind::ConvergenceStudy;
    else if (*v == "diagnostics") spec.kind = ExperimentKind::DiagnosticsSweep;
    else if (*v == "sampler-check") spec.kind = ExperimentKind::SamplerCheck;
    else throw std::invalid_argument("config: unknown kind '" + *v + "'");
  } else {
    throw std::invalid_argument("config: missing kind");
  }
  if (auto v = take("family")) spec.family = PolynomialFamily::parse(*v);
  if (auto v = take("d")) spec.dim = std::stoi(*v);
  if (auto v = take("degrees")) {
    const auto colon = v->find(':');
    if (colon != std::string::npos) {
      const int lo = std::stoi(v->substr(0, colon));
      const int hi = std::stoi(v->substr(colon + 1));
      for (int k = lo; k <= hi; ++k) spec.degrees.push_back(k);
    } else {
      std::istringstream vs(*v);
      std::string tok;
      while (std::getline(vs, tok, ',')) spec.degrees.push_back(std::stoi(tok));
    }
  }
  if (auto v = take("index")) {
    if (*v == "total") spec.index_kind = MultiIndexSet::Kind::TotalDegree;
    else if (*v == "lp") spec.index_kind = MultiIndexSet::Kind::LpBall;
    else throw std::invalid_argument("config: index must be total or lp");
  }
  if (auto v = take("p")) spec.lp_exponent = Rational::parse(*v);
  if (auto v = take("samples")) {
    bool preset = false;
    for (const auto& [name, rule] : sample_count_presets()) {
      if (*v == name) {
        spec.samples = rule;
        preset = true;
        break;
      }
    }
    if (!preset) spec.samples = SampleCountRule::parse(*v);
  }
  if (auto v = take("ensemble")) spec.ensemble_size = std::stoi(*v);
  if (auto v = take("error-samples")) spec.error_samples = std::stoi(*v);
  if (auto v = take("seed")) spec.base_seed = std::stoull(*v);
  if (auto v = take("target")) spec.target = *v;
  if (auto v = take("out")) spec.output_path = *v;
  if (auto v = take("truncate")) spec.truncate_limit = std::stod(*v);
  if (auto v = take("threads")) spec.threads = std::stoi(*v);
  if (auto v = take("sampler-count")) spec.sampler_count = std::stoi(*v);
  if (auto v = take("abar")) spec.diffusion_abar = std::stod(*v);
  if (auto v = take("sigma-a")) spec.diffusion_sigma = std::stod(*v);
  if (auto v = take("l-c")) spec.diffusion_lc = std::stod(*v);
  if (auto v = take("n-x")) spec.diffusion_nx = std::stoi(*v);
  if (auto v = take("v0")) spec.resistor_v0 = std::stod(*v);
  if (!kv.empty()) throw std::invalid_argument("config: unknown key '" + kv.begin()->first + "'");

  if (spec.kind != ExperimentKind::SamplerCheck) {
    if (spec.degrees.empty()) throw std::invalid_argument("config: degrees must be nonempty");
    if (!std::is_sorted(spec.degrees.begin(), spec.degrees.end()) ||
        std::adjacent_find(spec.degrees.begin(), spec.degrees.end()) != spec.degrees.end())
      throw std::invalid_argument("config: degrees must be strictly increasing");
  }
  if (spec.ensemble_size < 1) throw std::invalid_argument("config: ensemble must be >= 1");
  if (spec.dim < 1) throw std::invalid_argument("config: d must be >= 1");
  return spec;
}

std::string ExperimentSpec::canonical() const {
  std::ostringstream out;
  const char* kind_name = "condition";
  if (kind == ExperimentKind::ConvergenceStudy) kind_name = "convergence";
  else if (kind == ExperimentKind::DiagnosticsSweep) kind_name = "diagnostics";
  else if (kind == ExperimentKind::SamplerCheck) kind_name = "sampler-check";
  out << "kind=" << kind_name << "\n";
  out << "family=" << family.str() << "\n";
  out << "d=" << dim << "\n";
  out << "degrees=";
  for (std::size_t i = 0; i < degrees.size(); ++i) out << (i ? "," : "") << degrees[i];
  out << "\n";
  out << "index=" << (index_kind == MultiIndexSet::Kind::LpBall ? "lp" : "total") << "\n";
  out << "p=" << lp_exponent.str() << "\n";
  out << "samples=" << samples.str() << "\n";
  out << "ensemble=" << ensemble_size << "\n";
  out << "error-samples=" << error_samples << "\n";
  out << "seed=" << base_seed << "\n";
  out << "target=" << target << "\n";
  out << "truncate=" << format_double(truncate_limit) << "\n";
  out << "sampler-count=" << sampler_count << "\n";
  if (target == "diffusion") {
    out << "abar=" << format_double(diffusion_abar) << " sigma-a=" << format_double(diffusion_sigma)
        << " l-c=" << format_double(diffusion_lc) << " n-x=" << diffusion_nx << "\n";
  }
  if (target == "resistor") out << "v0=" << format_double(resistor_v0) << "\n";
  return out.str();
}

std::uint64_t ExperimentSpec::config_hash() const { return fnv1a(canonical()); }

std::uint64_t cell_seed(std::uint64_t base, const std::string& method, int degree, int run) {
  return derive_seed(base, method + "/k=" + std::to_string(degree) + "/r=" + std::to_string(run));
}

bool ExperimentResult::any_flagged() const {
  for (const auto& row : study_rows)
    if (row.flagged) return true;
  return false;
}

void ExperimentResult::write_csv(std::ostream& out, bool with_timestamp) const {
  const char* kind_name = "condition";
  if (kind == ExperimentKind::ConvergenceStudy) kind_name = "convergence";
  else if (kind == ExperimentKind::DiagnosticsSweep) kind_name = "diagnostics";
  else if (kind == ExperimentKind::SamplerCheck) kind_name = "sampler-check";
  out << "# xls kind=" << kind_name << " seed=" << base_seed << " spec=" << std::hex << spec_hash
      << std::dec << "\n";
  if (with_timestamp) {
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%FT%TZ", std::gmtime(&now));
    out << "# generated=" << stamp << "\n";
  }
  switch (kind) {
    case ExperimentKind::ConditionStudy:
    case ExperimentKind::ConvergenceStudy:
      out << "method,k,N,S,mean_cond,mean_err,failures\n";
      for (const auto& row : study_rows) {
        out << row.method << ',' << row.degree << ',' << row.basis_size << ',' << row.sample_count
            << ',' << opt_cell(row.mean_condition) << ',' << opt_cell(row.mean_error) << ','
            << row.failures << "\n";
      }
      break;
    case ExperimentKind::DiagnosticsSweep:
      out << "family,k,N,lambda_min,lambda_max,kappa,frob_dist,stability_factor,status\n";
      for (const auto& row : diagnostics_rows) {
        out << row.family << ',' << row.degree << ',' << row.basis_size << ','
            << opt_cell(row.lambda_min) << ',' << opt_cell(row.lambda_max) << ','
            << opt_cell(row.kappa) << ',' << opt_cell(row.frobenius_dist) << ','
            << opt_cell(row.stability) << ','
            << (row.error.empty() ? (row.converged ? "ok" : "unconverged") : "error:" + row.error)
            << "\n";
      }
      break;
    case ExperimentKind::SamplerCheck:
      out << "rule,d,S,statistic,value,threshold,pass\n";
      for (const auto& row : sampler_rows) {
        out << row.rule << ',' << row.dim << ',' << row.count << ',' << row.statistic << ','
            << format_double(row.value) << ',' << format_double(row.threshold) << ','
            << (row.pass ? "1" : "0") << "\n";
      }
      break;
  }
}

double estimate_error(const LsSolution& solution, const TargetFunction& f, const TensorBasis& basis,
                      int n_err, std::uint64_t seed, double truncate_limit) {
  const SampleEnsemble points = sample_orthogonality(basis, n_err, seed);
  Eigen::VectorXd predicted = evaluate_expansion(basis, solution.coefficients, points.points);
  if (truncate_limit > 0.0) predicted = truncate(predicted, truncate_limit);
  double acc = 0.0;
  for (int s = 0; s < n_err; ++s) {
    const double diff = f.evaluate(points.points.row(s).transpose()) - predicted[s];
    acc += diff * diff;
  }
  return std::sqrt(acc / static_cast<double>(n_err));
}

namespace {

struct CellOutcome {
  bool ok = false;
  double condition = 0.0;
  double error = 0.0;
  int resamples = 0;
};

struct MethodPlan {
  std::string name;     // "MC" or "CLS"
  bool christoffel = false;
};

SampleEnsemble draw_for_method(const ExperimentSpec& spec, const TensorBasis& basis,
                               const MethodPlan& method, int count, std::uint64_t seed) {
  if (!method.christoffel) return sample_orthogonality(basis, count, seed);
  if (basis.all_bounded()) return sample_equilibrium_cube(basis.dim(), count, seed);
  const int k = std::max(1, basis.indices().max_degree());
  if (basis.all_hermite()) return sample_equilibrium_hermite(basis.dim(), k, count, seed);
  if (basis.all_laguerre()) return sample_equilibrium_laguerre(basis.dim(), k, count, seed);
  throw std::invalid_argument("CLS requires all-bounded, all-Hermite, or all-Laguerre families");
}

std::vector<MethodPlan> method_plans() {
  return {{"MC", false}, {"CLS", true}};
}

} // namespace

ExperimentResult run_condition_study(const ExperimentSpec& spec) {
  ExperimentResult result;
  result.kind = ExperimentKind::ConditionStudy;
  result.base_seed = spec.base_seed;
  result.spec_hash = spec.config_hash();

  const auto methods = method_plans();
  std::vector<TensorBasis> bases;
  bases.reserve(spec.degrees.size());
  for (int k : spec.degrees) bases.push_back(spec.make_basis(k));

  struct Cell {
    int method_index;
    int degree_index;
    int run;
  };
  std::vector<Cell> cells;
  for (int m = 0; m < static_cast<int>(methods.size()); ++m)
    for (int d = 0; d < static_cast<int>(spec.degrees.size()); ++d)
      for (int r = 0; r < spec.ensemble_size; ++r) cells.push_back({m, d, r});
  std::vector<CellOutcome> outcomes(cells.size());

  parallel_for(static_cast<int>(cells.size()), spec.threads, [&](int i) {
    const Cell& cell = cells[static_cast<std::size_t>(i)];
    const auto& method = methods[static_cast<std::size_t>(cell.method_index)];
    const auto& basis = bases[static_cast<std::size_t>(cell.degree_index)];
    const int degree = spec.degrees[static_cast<std::size_t>(cell.degree_index)];
    const int count = spec.samples.count(basis.size());
    CellOutcome& outcome = outcomes[static_cast<std::size_t>(i)];
    try {
      const std::uint64_t seed = cell_seed(spec.base_seed, method.name, degree, cell.run);
      const SampleEnsemble ensemble = draw_for_method(spec, basis, method, count, seed);
      const Eigen::VectorXd weights = method.christoffel
                                          ? christoffel_weights(basis, ensemble)
                                          : Eigen::VectorXd::Ones(count);
      outcome.condition = weighted_condition_number(basis, ensemble, weights);
      outcome.ok = std::isfinite(outcome.condition);
    } catch (const std::exception&) {
      outcome.ok = false;
    }
  });

  for (int m = 0; m < static_cast<int>(methods.size()); ++m) {
    for (int d = 0; d < static_cast<int>(spec.degrees.size()); ++d) {
      StudyRow row;
      row.method = methods[static_cast<std::size_t>(m)].name;
      row.degree = spec.degrees[static_cast<std::size_t>(d)];
      row.basis_size = bases[static_cast<std::size_t>(d)].size();
      row.sample_count = spec.samples.count(row.basis_size);
      double sum = 0.0;
      int ok_count = 0;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].method_index != m || cells[i].degree_index != d) continue;
        if (outcomes[i].ok) {
          sum += outcomes[i].condition;
          ++ok_count;
        } else {
          ++row.failures;
        }
      }
      if (ok_count > 0) row.mean_condition = sum / ok_count;
      row.flagged = row.failures * 10 > spec.ensemble_size;
      result.study_rows.push_back(std::move(row));
    }
  }
  return result;
}

ExperimentResult run_convergence_study(const ExperimentSpec& spec) {
  ExperimentResult result;
  result.kind = ExperimentKind::ConvergenceStudy;
  result.base_seed = spec.base_seed;
  result.spec_hash = spec.config_hash();

  const TargetFunction target = spec.make_target();
  if (target.dim != spec.dim) throw std::invalid_argument("convergence: target dimension mismatch");
  const std::uint64_t eval_seed = derive_seed(spec.base_seed, "error-eval");

  const auto methods = method_plans();
  std::vector<TensorBasis> bases;
  for (int k : spec.degrees) bases.push_back(spec.make_basis(k));

  struct Cell {
    int method_index;
    int degree_index;
    int run;
  };
  std::vector<Cell> cells;
  for (int m = 0; m < static_cast<int>(methods.size()); ++m)
    for (int d = 0; d < static_cast<int>(spec.degrees.size()); ++d)
      for (int r = 0; r < spec.ensemble_size; ++r) cells.push_back({m, d, r});
  std::vector<CellOutcome> outcomes(cells.size());

  parallel_for(static_cast<int>(cells.size()), spec.threads, [&](int i) {
    const Cell& cell = cells[static_cast<std::size_t>(i)];
    const auto& method = methods[static_cast<std::size_t>(cell.method_index)];
    const auto& basis = bases[static_cast<std::size_t>(cell.degree_index)];
    const int degree = spec.degrees[static_cast<std::size_t>(cell.degree_index)];
    const int count = spec.samples.count(basis.size());
    CellOutcome& outcome = outcomes[static_cast<std::size_t>(i)];
    const std::uint64_t seed = cell_seed(spec.base_seed, method.name, degree, cell.run);
    // A model evaluation can reject an extreme draw; resample the whole
    // ensemble from a derived seed and account for it.
    for (int attempt = 0; attempt <= 4; ++attempt) {
      try {
        const std::uint64_t attempt_seed =
            attempt == 0 ? seed : derive_seed(seed, "retry/" + std::to_string(attempt));
        const SampleEnsemble ensemble = draw_for_method(spec, basis, method, count, attempt_seed);
        LsProblem problem{basis, ensemble, {}, {}};
        problem.rhs.resize(count);
        for (int s = 0; s < count; ++s)
          problem.rhs[s] = target.evaluate(ensemble.points.row(s).transpose());
        problem.weights = method.christoffel ? christoffel_weights(basis, ensemble)
                                             : Eigen::VectorXd::Ones(count);
        const LsSolution solution = solve(problem);
        outcome.condition = solution.condition_number;
        outcome.error = estimate_error(solution, target, basis, spec.error_samples, eval_seed,
                                       spec.truncate_limit);
        outcome.ok = std::isfinite(outcome.error);
        break;
      } catch (const ModelError&) {
        ++outcome.resamples;
      } catch (const std::exception&) {
        break;
      }
    }
  });

  for (int m = 0; m < static_cast<int>(methods.size()); ++m) {
    for (int d = 0; d < static_cast<int>(spec.degrees.size()); ++d) {
      StudyRow row;
      row.method = methods[static_cast<std::size_t>(m)].name;
      row.degree = spec.degrees[static_cast<std::size_t>(d)];
      row.basis_size = bases[static_cast<std::size_t>(d)].size();
      row.sample_count = spec.samples.count(row.basis_size);
      double cond_sum = 0.0, err_sum = 0.0;
      int ok_count = 0;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].method_index != m || cells[i].degree_index != d) continue;
        if (outcomes[i].ok) {
          cond_sum += outcomes[i].condition;
          err_sum += outcomes[i].error;
          ++ok_count;
        } else {
          ++row.failures;
        }
      }
      if (ok_count > 0) {
        row.mean_condition = cond_sum / ok_count;
        row.mean_error = err_sum / ok_count;
      }
      row.flagged = row.failures * 10 > spec.ensemble_size;
      result.study_rows.push_back(std::move(row));
    }
  }
  return result;
}

ExperimentResult run_diagnostics_sweep(const ExperimentSpec& spec) {
  if (spec.dim != 1) throw std::invalid_argument("diagnostics: one-dimensional families only");
  ExperimentResult result;
  result.kind = ExperimentKind::DiagnosticsSweep;
  result.base_seed = spec.base_seed;
  result.spec_hash = spec.config_hash();

  for (int k : spec.degrees) {
    DiagnosticsRow row;
    row.family = spec.family.str();
    row.degree = k;
    try {
      const MultiIndexSet set = spec.make_index_set(k);
      row.basis_size = set.size();
      const DiscrepancyReport report = spec.family.bounded() ? r_matrix_bounded(spec.family, set)
                                                             : r_matrix_unbounded(spec.family, set);
      row.lambda_min = report.lambda_min;
      row.lambda_max = report.lambda_max;
      row.kappa = report.kappa;
      row.frobenius_dist = report.frobenius_dist_to_identity;
      row.converged = report.quadrature_converged;
      if (spec.family.bounded()) row.stability = stability_factor(spec.family, k);
    } catch (const std::exception& err) {
      row.error = err.what();
    }
    result.diagnostics_rows.push_back(std::move(row));
  }
  return result;
}

namespace {

void moment_check(std::vector<SamplerRow>& rows, const std::string& rule, int dim, int count,
                  const std::string& name, double sum, double sum_sq, double target_mean,
                  double target_var) {
  // Two-sided z-test on the sample mean at the 1% level.
  const double mean = sum / count;
  const double z = (mean - target_mean) / std::sqrt(target_var / count);
  rows.push_back({rule, dim, count, name, std::abs(z), 2.5758, std::abs(z) < 2.5758});
  (void)sum_sq;
}

double ks_statistic(std::vector<double>& draws, const std::function<double(double)>& cdf) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d_max = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = cdf(draws[i]);
    d_max = std::max(d_max, std::abs(f - static_cast<double>(i) / n));
    d_max = std::max(d_max, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d_max;
}

} // namespace

ExperimentResult run_sampler_check(const ExperimentSpec& spec) {
  ExperimentResult result;
  result.kind = ExperimentKind::SamplerCheck;
  result.base_seed = spec.base_seed;
  result.spec_hash = spec.config_hash();
  auto& rows = result.sampler_rows;

  const int count = spec.sampler_count;
  const double ks_threshold = 1.6276 / std::sqrt(static_cast<double>(count));

  for (int dim : {1, 2, 4}) {
    // Cube: per-coordinate arcsine. Moment E[z^2] = 1/2 (var of z^2 is 1/8)
    // and a KS test of the first coordinate at d = 1.
    {
      const auto ens = sample_equilibrium_cube(dim, count, spec.base_seed);
      double sum = 0.0;
      for (int s = 0; s < count; ++s) sum += ens.points(s, 0) * ens.points(s, 0);
      moment_check(rows, "eq-cube", dim, count, "E[z1^2]=1/2", sum, 0.0, 0.5, 0.125);
      if (dim == 1) {
        std::vector<double> draws(static_cast<std::size_t>(count));
        for (int s = 0; s < count; ++s) draws[static_cast<std::size_t>(s)] = ens.points(s, 0);
        const double d_stat =
            ks_statistic(draws, [](double z) { return 1.0 - std::acos(z) / M_PI; });
        rows.push_back({"eq-cube", dim, count, "KS(arcsine)", d_stat, ks_threshold,
                        d_stat < ks_threshold});
      }
    }
    // Ball: |z|^2 ~ Beta(d/2, 1/2).
    {
      const auto ens = sample_equilibrium_ball(dim, count, spec.base_seed);
      const double a = 0.5 * dim, b = 0.5;
      double sum = 0.0;
      for (int s = 0; s < count; ++s) sum += ens.points.row(s).squaredNorm();
      const double mean = a / (a + b);
      const double var = a * b / ((a + b) * (a + b) * (a + b + 1.0));
      moment_check(rows, "eq-ball", dim, count, "E[|z|^2]", sum, 0.0, mean, var);
    }
    // Simplex: sum z_j ~ Beta(d/2, 3/2).
    {
      const auto ens = sample_equilibrium_simplex(dim, count, spec.base_seed);
      const double a = 0.5 * dim, b = 1.5;
      double sum = 0.0;
      for (int s = 0; s < count; ++s) sum += ens.points.row(s).sum();
      const double mean = a / (a + b);
      const double var = a * b / ((a + b) * (a + b) * (a + b + 1.0));
      moment_check(rows, "eq-simplex", dim, count, "E[sum z]", sum, 0.0, mean, var);
    }
    // Hermite (pre-scaling, k = 1): |Z|^2 / 2 ~ Beta(d/2, d/2 + 1).
    {
      const auto ens = sample_equilibrium_hermite(dim, 1, count, spec.base_seed);
      const double a = 0.5 * dim, b = 0.5 * dim + 1.0;
      double sum = 0.0;
      for (int s = 0; s < count; ++s) sum += 0.5 * ens.points.row(s).squaredNorm();
      const double mean = a / (a + b);
      const double var = a * b / ((a + b) * (a + b) * (a + b + 1.0));
      moment_check(rows, "eq-hermite", dim, count, "E[|Z|^2/2]", sum, 0.0, mean, var);
    }
    // Laguerre (pre-scaling, k = 1): sum Z_j / 4 ~ Beta(d/2, d/2 + 1), and
    // at d = 1 a KS test against the closed-form CDF of the density
    // (1/2pi) sqrt((4-y)/y):  F(y) = (2/pi)(asin(sqrt(y)/2) + (sqrt(y)/2) sqrt(1-y/4)).
    {
      const auto ens = sample_equilibrium_laguerre(dim, 1, count, spec.base_seed);
      const double a = 0.5 * dim, b = 0.5 * dim + 1.0;
      double sum = 0.0;
      for (int s = 0; s < count; ++s) sum += 0.25 * ens.points.row(s).sum();
      const double mean = a / (a + b);
      const double var = a * b / ((a + b) * (a + b) * (a + b + 1.0));
      moment_check(rows, "eq-laguerre", dim, count, "E[sum Z/4]", sum, 0.0, mean, var);
      if (dim == 1) {
        std::vector<double> draws(static_cast<std::size_t>(count));
        for (int s = 0; s < count; ++s) draws[static_cast<std::size_t>(s)] = ens.points(s, 0);
        const double d_stat = ks_statistic(draws, [](double y) {
          const double r = 0.5 * std::sqrt(y);
          return (2.0 / M_PI) * (std::asin(r) + r * std::sqrt(1.0 - 0.25 * y));
        });
        rows.push_back({"eq-laguerre", dim, count, "KS(mp-density)", d_stat, ks_threshold,
                        d_stat < ks_threshold});
      }
    }
    // Orthogonality rules with standard generators.
    {
      const auto basis = TensorBasis::isotropic(PolynomialFamily::legendre(),
                                                MultiIndexSet::total_degree(dim, 0));
      const auto ens = sample_orthogonality(basis, count, spec.base_seed);
      double sum = 0.0;
      for (int s = 0; s < count; ++s) sum += ens.points(s, 0) * ens.points(s, 0);
      moment_check(rows, "orthogonality(legendre)", dim, count, "E[z1^2]=1/3", sum, 0.0, 1.0 / 3.0,
                   4.0 / 45.0); // var(z^2) = 1/5 - 1/9
    }
    {
      const auto basis = TensorBasis::isotropic(PolynomialFamily::hermite(),
                                                MultiIndexSet::total_degree(dim, 0));
      const auto ens = sample_orthogonality(basis, count, spec.base_seed);
      double sum = 0.0;
      for (int s = 0; s < count; ++s) sum += ens.points(s, 0) * ens.points(s, 0);
      moment_check(rows, "orthogonality(hermite)", dim, count, "E[z1^2]=1/2", sum, 0.0, 0.5, 0.5);
      // var(z^2) for N(0, 1/2): E z^4 - (E z^2)^2 = 3/4 - 1/4
    }
    {
      const auto basis = TensorBasis::isotropic(PolynomialFamily::laguerre(),
                                                MultiIndexSet::total_degree(dim, 0));
      const auto ens = sample_orthogonality(basis, count, spec.base_seed);
      double sum = 0.0;
      for (int s = 0; s < count; ++s) sum += ens.points(s, 0);
      moment_check(rows, "orthogonality(laguerre)", dim, count, "E[z1]=1", sum, 0.0, 1.0, 1.0);
    }
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::ConditionStudy: return run_condition_study(spec);
    case ExperimentKind::ConvergenceStudy: return run_convergence_study(spec);
    case ExperimentKind::DiagnosticsSweep: return run_diagnostics_sweep(spec);
    case ExperimentKind::SamplerCheck: return run_sampler_check(spec);
  }
  throw std::logic_error("run_experiment: unreachable");
}

} // namespace xls
