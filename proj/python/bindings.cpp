// Python bindings for the core operations: index sets, bases, samplers,
// the MC/CLS solvers, and the diagnostics.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "xls/diagnostics.hpp"
#include "xls/experiment.hpp"
#include "xls/lstsq.hpp"
#include "xls/models.hpp"
#include "xls/multiindex.hpp"
#include "xls/orthopoly.hpp"
#include "xls/quadrature.hpp"
#include "xls/sampling.hpp"

namespace py = pybind11;
using namespace xls;

namespace {

TargetFunction wrap_callable(const std::string& name, int dim, const py::function& fn) {
  TargetFunction f;
  f.name = name;
  f.dim = dim;
  f.domain = DomainTag::Cube;
  f.evaluate = [fn](const Eigen::VectorXd& z) { return fn(z).cast<double>(); };
  return f;
}

} // namespace

PYBIND11_MODULE(_xls, m) {
  m.doc() = "Christoffel-weighted least-squares polynomial approximation";

  py::class_<Rational>(m, "Rational")
      .def(py::init([](long long num, long long den) {
             return Rational::parse(std::to_string(num) + "/" + std::to_string(den));
           }),
           py::arg("num"), py::arg("den") = 1)
      .def_static("parse", [](const std::string& s) { return Rational::parse(s); })
      .def("__repr__", [](const Rational& r) { return "Rational(" + r.str() + ")"; })
      .def_property_readonly("value", &Rational::value);

  py::class_<MultiIndexSet>(m, "MultiIndexSet")
      .def_static("total_degree", &MultiIndexSet::total_degree, py::arg("dim"), py::arg("degree"))
      .def_static("lp_ball", &MultiIndexSet::lp_ball, py::arg("dim"), py::arg("p"), py::arg("degree"))
      .def_static("explicit_set", &MultiIndexSet::explicit_set, py::arg("dim"), py::arg("indices"))
      .def_property_readonly("dim", &MultiIndexSet::dim)
      .def("__len__", &MultiIndexSet::size)
      .def("max_degree", &MultiIndexSet::max_degree)
      .def("indices", &MultiIndexSet::indices)
      .def("contains", &MultiIndexSet::contains)
      .def("zero_index_missing", &MultiIndexSet::zero_index_missing)
      .def("__str__", [](const MultiIndexSet& s) {
        std::ostringstream out;
        s.write(out);
        return out.str();
      })
      .def_static("from_string", [](const std::string& text) {
        std::istringstream in(text);
        return MultiIndexSet::read(in);
      });

  py::class_<PolynomialFamily>(m, "PolynomialFamily")
      .def_static("legendre", &PolynomialFamily::legendre)
      .def_static("chebyshev", &PolynomialFamily::chebyshev)
      .def_static("jacobi", &PolynomialFamily::jacobi, py::arg("a"), py::arg("b"))
      .def_static("hermite", &PolynomialFamily::hermite)
      .def_static("laguerre", &PolynomialFamily::laguerre)
      .def_static("parse", [](const std::string& s) { return PolynomialFamily::parse(s); })
      .def_property_readonly("bounded", &PolynomialFamily::bounded)
      .def("weight_density", &PolynomialFamily::weight_density)
      .def("__repr__", [](const PolynomialFamily& f) { return "PolynomialFamily(" + f.str() + ")"; })
      .def("__str__", &PolynomialFamily::str);

  py::class_<TensorBasis>(m, "TensorBasis")
      .def(py::init<std::vector<PolynomialFamily>, MultiIndexSet>())
      .def_static("isotropic", &TensorBasis::isotropic, py::arg("family"), py::arg("indices"))
      .def_property_readonly("dim", &TensorBasis::dim)
      .def("__len__", &TensorBasis::size)
      .def_property_readonly("indices", &TensorBasis::indices);

  m.def("eval_univariate", &eval_univariate, py::arg("family"), py::arg("max_degree"),
        py::arg("points"));
  m.def("scaled_family_eval", &scaled_family_eval, py::arg("family"), py::arg("scale_degree"),
        py::arg("max_degree"), py::arg("points"));
  m.def("vandermonde", &vandermonde, py::arg("basis"), py::arg("points"));
  m.def("kernel_diagonal", &kernel_diagonal, py::arg("basis"), py::arg("points"));
  m.def("evaluate_expansion", &evaluate_expansion, py::arg("basis"), py::arg("coefficients"),
        py::arg("points"));

  py::class_<SampleEnsemble>(m, "SampleEnsemble")
      .def_readonly("points", &SampleEnsemble::points)
      .def_readonly("seed", &SampleEnsemble::seed)
      .def("__len__", &SampleEnsemble::count)
      .def("to_csv", [](const SampleEnsemble& e) {
        std::ostringstream out;
        e.write_csv(out);
        return out.str();
      });

  m.def("sample_orthogonality", &sample_orthogonality, py::arg("basis"), py::arg("count"),
        py::arg("seed"));
  m.def("sample_equilibrium_cube", &sample_equilibrium_cube, py::arg("dim"), py::arg("count"),
        py::arg("seed"));
  m.def("sample_equilibrium_ball", &sample_equilibrium_ball, py::arg("dim"), py::arg("count"),
        py::arg("seed"));
  m.def("sample_equilibrium_simplex", &sample_equilibrium_simplex, py::arg("dim"), py::arg("count"),
        py::arg("seed"));
  m.def("sample_equilibrium_hermite", &sample_equilibrium_hermite, py::arg("dim"),
        py::arg("scale_degree"), py::arg("count"), py::arg("seed"));
  m.def("sample_equilibrium_laguerre", &sample_equilibrium_laguerre, py::arg("dim"),
        py::arg("scale_degree"), py::arg("count"), py::arg("seed"));

  m.def("christoffel_weights", &christoffel_weights, py::arg("basis"), py::arg("ensemble"));

  py::enum_<RankFlag>(m, "RankFlag")
      .value("FullRank", RankFlag::FullRank)
      .value("RankDeficient", RankFlag::RankDeficient);

  py::class_<LsSolution>(m, "LsSolution")
      .def_readonly("coefficients", &LsSolution::coefficients)
      .def_readonly("condition_number", &LsSolution::condition_number)
      .def_readonly("residual_norm", &LsSolution::residual_norm)
      .def_readonly("rank_flag", &LsSolution::rank_flag);

  m.def(
      "run_mc",
      [](const TensorBasis& basis, const py::function& f, int count, std::uint64_t seed) {
        return run_mc(basis, wrap_callable("f", basis.dim(), f).evaluate, count, seed);
      },
      py::arg("basis"), py::arg("f"), py::arg("count"), py::arg("seed"));
  m.def(
      "run_cls_bounded",
      [](const TensorBasis& basis, const py::function& f, int count, std::uint64_t seed) {
        return run_cls_bounded(basis, wrap_callable("f", basis.dim(), f).evaluate, count, seed);
      },
      py::arg("basis"), py::arg("f"), py::arg("count"), py::arg("seed"));
  m.def(
      "run_cls_unbounded",
      [](const TensorBasis& basis, const py::function& f, int count, std::uint64_t seed) {
        return run_cls_unbounded(basis, wrap_callable("f", basis.dim(), f).evaluate, count, seed);
      },
      py::arg("basis"), py::arg("f"), py::arg("count"), py::arg("seed"));
  m.def("truncate", &xls::truncate, py::arg("values"), py::arg("limit"));

  m.def("stability_factor", &stability_factor, py::arg("family"), py::arg("degree"));

  py::class_<DiscrepancyReport>(m, "DiscrepancyReport")
      .def_readonly("r_matrix", &DiscrepancyReport::r_matrix)
      .def_readonly("lambda_min", &DiscrepancyReport::lambda_min)
      .def_readonly("lambda_max", &DiscrepancyReport::lambda_max)
      .def_readonly("kappa", &DiscrepancyReport::kappa)
      .def_readonly("frobenius_dist_to_identity", &DiscrepancyReport::frobenius_dist_to_identity)
      .def_readonly("quadrature_converged", &DiscrepancyReport::quadrature_converged);

  m.def("r_matrix_bounded", &r_matrix_bounded, py::arg("family"), py::arg("index_set"));
  m.def("r_matrix_unbounded", &r_matrix_unbounded, py::arg("family"), py::arg("index_set"));

  py::class_<ProjectionDiscrepancy>(m, "ProjectionDiscrepancy")
      .def_readonly("data_discrepancy", &ProjectionDiscrepancy::data_discrepancy)
      .def_readonly("delta", &ProjectionDiscrepancy::delta)
      .def_readonly("delta_defined", &ProjectionDiscrepancy::delta_defined)
      .def_readonly("quadrature_converged", &ProjectionDiscrepancy::quadrature_converged);

  m.def(
      "projection_discrepancy",
      [](const py::function& f, const std::vector<double>& breakpoints,
         const PolynomialFamily& family, const MultiIndexSet& set) {
        Function1d wrapped{[f](double z) { return f(z).cast<double>(); }, breakpoints};
        return projection_discrepancy(wrapped, family, set);
      },
      py::arg("f"), py::arg("breakpoints"), py::arg("family"), py::arg("index_set"));

  m.def("test_function_fq", [](int q) {
    auto f = test_function_fq(q);
    return py::cpp_function([f](double z) { return f.eval(z); });
  });

  py::class_<TargetFunction>(m, "TargetFunction")
      .def_readonly("name", &TargetFunction::name)
      .def_readonly("dim", &TargetFunction::dim)
      .def("__call__", [](const TargetFunction& f, const Eigen::VectorXd& z) {
        return f.evaluate(z);
      });

  m.def("f_gaussian_bump", &f_gaussian_bump, py::arg("dim"));
  m.def("f_exponential", &f_exponential, py::arg("dim"));

  py::class_<DiffusionModel>(m, "DiffusionModel")
      .def(py::init<int, double, double, double, int>(), py::arg("kl_terms") = 2,
           py::arg("abar") = 1.0, py::arg("sigma_a") = 0.1, py::arg("l_c") = 1.0,
           py::arg("n_x") = 1025)
      .def("__call__", &DiffusionModel::evaluate)
      .def("solve_profile", &DiffusionModel::solve_profile)
      .def_property_readonly("kl_eigenvalues", &DiffusionModel::kl_eigenvalues)
      .def_property_readonly("kl_eigenfunctions", &DiffusionModel::kl_eigenfunctions)
      .def_property_readonly("covariance_trace", &DiffusionModel::covariance_trace)
      .def_property_readonly("grid", &DiffusionModel::grid)
      .def("kl_csv", [](const DiffusionModel& model) {
        std::ostringstream out;
        model.write_kl_csv(out);
        return out.str();
      });
  m.def("build_diffusion", &build_diffusion, py::arg("kl_terms") = 2, py::arg("abar") = 1.0,
        py::arg("sigma_a") = 0.1, py::arg("l_c") = 1.0, py::arg("n_x") = 1025);
  m.def("build_resistor_network", &build_resistor_network, py::arg("stages") = 3,
        py::arg("v0") = 1.0);

  m.def(
      "estimate_error",
      [](const LsSolution& solution, const TargetFunction& f, const TensorBasis& basis, int n_err,
         std::uint64_t seed, double truncate_limit) {
        return estimate_error(solution, f, basis, n_err, seed, truncate_limit);
      },
      py::arg("solution"), py::arg("f"), py::arg("basis"), py::arg("n_err") = 10000,
      py::arg("seed") = 0, py::arg("truncate_limit") = 0.0);

  m.def("run_experiment_csv", [](const std::string& config_text) {
    std::istringstream in(config_text);
    const ExperimentSpec spec = ExperimentSpec::parse_config(in);
    const ExperimentResult result = run_experiment(spec);
    std::ostringstream out;
    result.write_csv(out, /*with_timestamp=*/false);
    return out.str();
  });
}
