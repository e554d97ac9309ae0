// The extension speaks JSON text at its boundary; the Python package decodes it.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kstab/error.hpp"
#include "kstab/formulas.hpp"
#include "kstab/functionals.hpp"
#include "kstab/git.hpp"
#include "kstab/invariants.hpp"
#include "kstab/runner.hpp"
#include "kstab/toric.hpp"

namespace py = pybind11;
using namespace kstab;

namespace {

RunOptions options(const std::string& data_dir, std::optional<std::uint64_t> seed) {
  return RunOptions{data_dir.empty() ? default_data_dir() : std::filesystem::path(data_dir), seed};
}

Json row_to_json(const ReportRow& r) {
  StabilityReport one;
  one.rows.push_back(r);
  return report_to_json(one).at("rows").at(0);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact K-stability computations";

  // Messages read "Kind: detail"; the Python layer splits off the kind.
  py::register_exception<Error>(m, "KstabError", PyExc_RuntimeError);

  m.def("default_data_dir", [] { return default_data_dir().string(); });

  m.def(
      "run_case",
      [](const std::string& path, const std::string& data_dir) {
        return row_to_json(run_case(path, options(data_dir, std::nullopt))).dump();
      },
      py::arg("path"), py::arg("data_dir") = "");

  m.def(
      "run_case_json",
      [](const std::string& doc, const std::string& label, const std::string& data_dir) {
        return row_to_json(run_case_json(Json::parse(doc), label, options(data_dir, std::nullopt))).dump();
      },
      py::arg("doc"), py::arg("label") = "inline", py::arg("data_dir") = "");

  m.def(
      "run_suite",
      [](const std::string& data_dir, int jobs, std::optional<std::uint64_t> seed) {
        StabilityReport r;
        {
          py::gil_scoped_release release;
          r = run_suite(options(data_dir, seed), jobs);
        }
        return report_to_json(r).dump();
      },
      py::arg("data_dir") = "", py::arg("jobs") = 1, py::arg("seed") = py::none());

  m.def("formula_names", &formula_names);
  m.def("evaluate_formula",
        [](const std::string& name, const std::string& params) { return evaluate_formula(name, Json::parse(params)).dump(); });

  m.def("hm_weight", [](const std::string& support, long r0, long r1) {
    return hm_weight(parse_support(support), {r0, r1});
  });
  m.def(
      "find_destabilizer",
      [](const std::string& support, long bound) -> std::optional<std::tuple<long, long, long, bool>> {
        auto d = find_destabilizer(parse_support(support), bound);
        if (!d) return std::nullopt;
        return std::make_tuple(d->lambda.r0, d->lambda.r1, d->weight, d->strictly_semistable_direction);
      },
      py::arg("support"), py::arg("bound") = 5);

  m.def("invariant_dimension", &invariant_dimension);
  m.def("hilbert_prefix", &hilbert_prefix);
  m.def("peano_invariants", [](const std::string& coeffs) {
    PeanoInvariants p = peano_invariants(coefficients_from_json(Json::parse(coeffs)));
    return std::make_tuple(p.j2.str(), p.j3.str(), p.j4.str());
  });
  m.def("check_invariance", [](int trials, std::uint64_t seed) {
    InvarianceTrials t = check_invariance_trials(trials, seed);
    return std::make_pair(t.passed, t.trials);
  });

  m.def("toric_product", [](const std::string& model_path, const std::vector<int>& indices) {
    return load_model(model_path)->product(indices).str();
  });

  m.def("s_from_volume", [](const std::string& pieces, const std::string& a_top) {
    Json j = Json::parse(pieces);
    PiecewisePolynomial f;
    for (const auto& p : j) {
      f.pieces.push_back({interval_from_json(p.at("interval"), "interval"), polynomial_from_json(p.at("polynomial"), "polynomial")});
    }
    return s_from_volume(f, Rational::parse(a_top)).str();
  });
}
