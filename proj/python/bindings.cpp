#include <memory>
#include <vector>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bal/aggregate.hpp"
#include "bal/estimator.hpp"
#include "bal/eval.hpp"
#include "bal/experiment.hpp"
#include "bal/linesearch.hpp"
#include "bal/problem.hpp"

namespace py = pybind11;
using namespace bal;

namespace {

using InstancePtr = std::shared_ptr<ProblemInstance>;

InstancePtr make(const std::string& family, int d, double alpha, double lambda, double kappa,
                 double c, std::optional<double> c_eff, bool noiseless, double offset,
                 std::vector<double> slopes, std::optional<double> amplitude, std::uint64_t seed) {
  InstanceDescriptor desc;
  desc.family = boundary_family_from_string(family);
  desc.d = d;
  desc.alpha = alpha;
  desc.lambda = lambda;
  desc.kappa = kappa;
  desc.c = c;
  desc.c_eff = c_eff;
  desc.noiseless = noiseless;
  desc.offset = offset;
  desc.slopes = std::move(slopes);
  desc.amplitude = amplitude;
  desc.seed = seed;
  return std::make_shared<ProblemInstance>(make_instance(desc));
}

py::dict row_dict(const SweepRow& r) {
  py::dict out;
  out["n"] = r.n;
  out["seed"] = r.seed;
  out["sup_error"] = r.sup_error;
  out["excess_risk"] = r.excess_risk;
  out["labels_used"] = r.labels_used;
  out["wall_time_ms"] = r.wall_time_ms;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Active learning of smooth decision boundaries";

  py::register_exception<BudgetExhausted>(m, "BudgetExhausted");

  py::class_<ProblemInstance, InstancePtr>(m, "Instance")
      .def(py::init(&make), py::arg("family") = "affine", py::arg("d") = 2,
           py::arg("alpha") = 1.0, py::arg("lambda_") = 1.0, py::arg("kappa") = 1.5,
           py::arg("c") = 0.4, py::arg("c_eff") = py::none(), py::arg("noiseless") = false,
           py::arg("offset") = 0.5, py::arg("slopes") = std::vector<double>{},
           py::arg("amplitude") = py::none(), py::arg("seed") = 0)
      .def_property_readonly("dims", &ProblemInstance::dims)
      .def("g_star", [](const ProblemInstance& p, std::vector<double> xt) { return p.g_star(xt); })
      .def("eta", [](const ProblemInstance& p, std::vector<double> x) { return p.eta(x); })
      .def("bayes", [](const ProblemInstance& p, std::vector<double> x) { return p.bayes(x); });

  py::class_<ThresholdEstimate>(m, "ThresholdEstimate")
      .def_readonly("T", &ThresholdEstimate::T)
      .def_readonly("L", &ThresholdEstimate::L)
      .def_readonly("R", &ThresholdEstimate::R)
      .def_readonly("N", &ThresholdEstimate::N)
      .def_readonly("completed", &ThresholdEstimate::completed);

  m.def(
      "line_search",
      [](InstancePtr inst, std::vector<double> anchor, double epsilon, double delta,
         std::uint64_t seed, std::uint64_t cap) {
        LabelOracle oracle(std::move(inst), seed, cap);
        LineOracle line(oracle, std::move(anchor));
        return run_line_search(line, epsilon, delta);
      },
      py::arg("instance"), py::arg("anchor"), py::arg("epsilon"), py::arg("delta"),
      py::arg("seed") = 0, py::arg("cap") = ~std::uint64_t{0});

  m.def("sample_complexity_bound", &sample_complexity_bound, py::arg("kappa"), py::arg("c"),
        py::arg("epsilon"), py::arg("delta"));

  py::class_<LabeledRegions>(m, "LabeledRegions")
      .def("lower", [](const LabeledRegions& r, std::vector<double> xt) { return r.lower(xt); })
      .def("upper", [](const LabeledRegions& r, std::vector<double> xt) { return r.upper(xt); })
      .def_property_readonly("vacuous", &LabeledRegions::is_vacuous)
      .def_property_readonly("margin", &LabeledRegions::margin)
      .def_property_readonly("depth", &LabeledRegions::depth);

  m.def(
      "subroutine",
      [](InstancePtr inst, std::uint64_t n, double delta, double lambda_, double alpha,
         std::uint64_t seed) {
        LabelOracle oracle(std::move(inst), seed, n);
        auto res = run_subroutine(oracle, n, delta, lambda_, alpha);
        return py::make_tuple(res.regions, res.l_star, res.labels_used);
      },
      py::arg("instance"), py::arg("n"), py::arg("delta"), py::arg("lambda_"), py::arg("alpha"),
      py::arg("seed") = 0);

  py::class_<AdaptiveResult, std::shared_ptr<AdaptiveResult>>(m, "AdaptiveResult")
      .def("g_hat", [](const AdaptiveResult& r, std::vector<double> xt) { return r.g_hat(xt); })
      .def("classify",
           [](const AdaptiveResult& r, std::vector<double> x) { return r.classify(x); })
      .def("envelope",
           [](const AdaptiveResult& r, std::vector<double> xt) {
             const auto e = r.envelope(xt);
             return py::make_tuple(e.lower, e.upper);
           })
      .def_property_readonly("vacuous", &AdaptiveResult::is_vacuous)
      .def_property_readonly("labels_used", &AdaptiveResult::labels_used)
      .def_property_readonly("iterations", [](const AdaptiveResult& r) { return r.records().size(); });

  m.def(
      "adaptive",
      [](InstancePtr inst, std::uint64_t n, double delta, double lambda_, std::uint64_t seed) {
        OracleFactory factory = [&](std::size_t i, std::uint64_t cap) {
          return LabelOracle(inst, derive_seed(seed, n, i + 1), cap);
        };
        return std::make_shared<AdaptiveResult>(run_adaptive(factory, n, delta, lambda_));
      },
      py::arg("instance"), py::arg("n"), py::arg("delta"), py::arg("lambda_") = 1.0,
      py::arg("seed") = 0);

  m.def("correctness_margin", &correctness_margin, py::arg("n"), py::arg("delta"),
        py::arg("lambda_"), py::arg("alpha"), py::arg("kappa"), py::arg("c"), py::arg("d"));
  m.def("theoretical_exponent", &theoretical_exponent, py::arg("alpha"), py::arg("kappa"),
        py::arg("d"));
  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("run"), py::arg("iteration") = 0);

  m.def(
      "run_cell",
      [](const std::string& config_json, std::uint64_t n, std::uint64_t seed) {
        return row_dict(run_cell(config_from_json(config_json), n, seed));
      },
      py::arg("config_json"), py::arg("n"), py::arg("seed"));

  m.def(
      "fit_rate",
      [](const std::vector<std::uint64_t>& ns, const std::vector<double>& errors, double alpha,
         double kappa, int d, std::size_t min_seeds) {
        if (ns.size() != errors.size()) throw std::invalid_argument("length mismatch");
        SweepResult sweep;
        for (std::size_t i = 0; i < ns.size(); ++i) {
          SweepRow row;
          row.n = ns[i];
          row.seed = i;
          row.sup_error = errors[i];
          sweep.rows.push_back(row);
        }
        const auto fit = bal::fit_rate(sweep, alpha, kappa, d, min_seeds);
        py::dict out;
        out["slope"] = fit.slope;
        out["intercept"] = fit.intercept;
        out["r2"] = fit.r2;
        out["theoretical"] = fit.theoretical;
        return out;
      },
      py::arg("n"), py::arg("sup_error"), py::arg("alpha"), py::arg("kappa"), py::arg("d"),
      py::arg("min_seeds") = 20);
}
