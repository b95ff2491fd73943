#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xls/diagnostics.hpp"
#include "xls/lstsq.hpp"
#include "xls/models.hpp"
#include "xls/multiindex.hpp"
#include "xls/orthopoly.hpp"

namespace xls {

enum class ExperimentKind { ConditionStudy, ConvergenceStudy, DiagnosticsSweep, SamplerCheck };

// Sample count as a function of the basis dimension N.
struct SampleCountRule {
  enum class Kind { Linear, LogLinear, LogLinearMax };
  Kind kind = Kind::LogLinear;
  double factor = 1.0;

  int count(int basis_size) const; // always >= basis_size
  std::string str() const;
  static SampleCountRule parse(std::string_view text); // "linear:2", "loglinear:1.5", "loglinearmax:1"
};

// Named presets matching the sampling rates used by the condition and
// convergence figures.
std::vector<std::pair<std::string, SampleCountRule>> sample_count_presets();

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::ConditionStudy;
  PolynomialFamily family = PolynomialFamily::legendre();
  int dim = 1;
  std::vector<int> degrees;
  MultiIndexSet::Kind index_kind = MultiIndexSet::Kind::TotalDegree;
  Rational lp_exponent{1, 1};
  SampleCountRule samples;
  int ensemble_size = 100;
  int error_samples = 10000;
  std::uint64_t base_seed = 0;
  std::string target;         // convergence studies: target function name
  std::string output_path;    // empty = stdout
  double truncate_limit = 0.0; // 0 = off
  int threads = 1;             // 0 = hardware concurrency
  int sampler_count = 100000;  // sampler checks

  // model parameters (diffusion / resistor targets)
  double diffusion_abar = 1.0;
  double diffusion_sigma = 0.1;
  double diffusion_lc = 1.0;
  int diffusion_nx = 1025;
  double resistor_v0 = 1.0;

  MultiIndexSet make_index_set(int degree) const;
  TensorBasis make_basis(int degree) const;
  TargetFunction make_target() const;

  // Flat key=value text, '#' comments. Unknown keys are an error.
  static ExperimentSpec parse_config(std::istream& in);
  std::string canonical() const;    // normalized key=value dump
  std::uint64_t config_hash() const;
};

// One output row; inapplicable cells are emitted as NA.
struct StudyRow {
  std::string method;
  int degree = 0;
  int basis_size = 0;
  int sample_count = 0;
  std::optional<double> mean_condition;
  std::optional<double> mean_error;
  int failures = 0;
  bool flagged = false; // > 10% of the ensemble failed
};

struct DiagnosticsRow {
  std::string family;
  int degree = 0;
  int basis_size = 0;
  std::optional<double> lambda_min, lambda_max, kappa, frobenius_dist, stability;
  bool converged = true;
  std::string error;
};

struct SamplerRow {
  std::string rule;
  int dim = 0;
  int count = 0;
  std::string statistic; // which functional was tested
  double value = 0.0;
  double threshold = 0.0;
  bool pass = true;
};

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::ConditionStudy;
  std::vector<StudyRow> study_rows;
  std::vector<DiagnosticsRow> diagnostics_rows;
  std::vector<SamplerRow> sampler_rows;
  std::uint64_t base_seed = 0;
  std::uint64_t spec_hash = 0;

  bool any_flagged() const;
  // Deterministic except for the optional timestamp comment line.
  void write_csv(std::ostream& out, bool with_timestamp = true) const;
};

// Seed for ensemble cell (method, degree, run) derived from the base seed;
// the derivation is derive_seed(base, "<method>/k=<degree>/r=<run>").
std::uint64_t cell_seed(std::uint64_t base, const std::string& method, int degree, int run);

// Root-mean-square error of the fitted expansion against f over n_err fresh
// draws from the orthogonality density. A fixed evaluation seed shared
// across methods and degrees keeps error curves comparable. truncate_limit
// > 0 applies T_L to the predictions.
double estimate_error(const LsSolution& solution, const TargetFunction& f, const TensorBasis& basis,
                      int n_err, std::uint64_t seed, double truncate_limit = 0.0);

ExperimentResult run_condition_study(const ExperimentSpec& spec);
ExperimentResult run_convergence_study(const ExperimentSpec& spec);
ExperimentResult run_diagnostics_sweep(const ExperimentSpec& spec);
ExperimentResult run_sampler_check(const ExperimentSpec& spec);
ExperimentResult run_experiment(const ExperimentSpec& spec);

} // namespace xls
