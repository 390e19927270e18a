// Python bindings. Structured values cross the boundary as JSON text and are
// decoded on the Python side, so rationals stay exact strings throughout.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fcone/cli.hpp"
#include "fcone/logfano.hpp"
#include "fcone/serialize.hpp"
#include "fcone/strata.hpp"

namespace py = pybind11;
using namespace fcone;

namespace {

Sense parse_sense(const std::string& sense) {
  if (sense == "positive") return Sense::StrictlyPositive;
  if (sense == "negative") return Sense::StrictlyNegative;
  throw py::value_error("sense must be 'positive' or 'negative', got '" + sense + "'");
}

BoundaryCombo combo_from_spec(int n, const std::string& spec) { return BoundaryCombo{n, parse_combo_spec(spec)}; }

std::string verify(int n, const std::string& combo, unsigned threads) {
  PositivityOptions options;
  options.threads = threads;
  return to_json(verify_witness(combo_from_spec(n, combo), options)).dump();
}

std::string search(int n, const std::string& bounds, bool unit_box, unsigned threads) {
  std::vector<Bound> all = parse_bounds_spec(bounds);
  if (unit_box) {
    const auto box = fcone::unit_box(n);
    all.insert(all.end(), box.begin(), box.end());
  }
  PositivityOptions options;
  options.threads = threads;
  const SearchResult r = search_witness(n, all, options);
  Json j;
  Json constraints = Json::array();
  for (const auto& c : r.constraints) constraints.push_back(to_json(c));
  j["constraints"] = std::move(constraints);
  j["certificate"] = to_json(r.feasibility);
  j["certificate_valid"] = check_result(r.feasibility);
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j.dump();
}

std::string constraints(int n, bool reduced) {
  Json out = Json::array();
  for (const auto& c : generate_constraints(n, reduced)) out.push_back(to_json(c));
  return out.dump();
}

std::string fcurves(const std::string& divisor, const std::string& sense, bool strict, bool all_violations,
                    unsigned threads) {
  PositivityOptions options{strict, all_violations, threads};
  return to_json(f_positivity(mdivisor_from_json(Json::parse(divisor)), parse_sense(sense), options)).dump();
}

std::string alpha(const std::string& divisor) {
  return to_json(pullback_alpha(kdivisor_from_json(Json::parse(divisor)))).dump();
}

std::string beta(const std::string& divisor) {
  Json out = Json::object();
  for (const auto& b : pullback_beta_all(kdivisor_from_json(Json::parse(divisor)))) {
    out[std::to_string(b.i)] = to_string(b.degree);
  }
  return out.dump();
}

std::string chs(const std::string& divisor, bool anti) {
  return to_json(chs_ample(kdivisor_from_json(Json::parse(divisor)), anti ? AmpleSense::AntiAmple : AmpleSense::Ample))
      .dump();
}

std::string feasibility(const std::string& forms, const std::string& bounds) {
  std::vector<LinearForm> system;
  for (const auto& f : Json::parse(forms)) system.push_back(linear_form_from_json(f));
  const auto bound_list = parse_bounds_spec(bounds);
  Json j = to_json(solve_feasibility(system, bound_list));
  return j.dump();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_fcone, m) {
  m.doc() = "Exact divisor-class computations on moduli of pointed rational curves and maps.";

  py::register_exception<std::invalid_argument>(m, "InvalidInput", PyExc_ValueError);

  m.def("verify_witness", &verify, py::arg("n"), py::arg("combo"), py::arg("threads") = 0U,
        py::call_guard<py::gil_scoped_release>());
  m.def("search_witness", &search, py::arg("n"), py::arg("bounds") = "", py::arg("unit_box") = false,
        py::arg("threads") = 0U, py::call_guard<py::gil_scoped_release>());
  m.def("generate_constraints", &constraints, py::arg("n"), py::arg("reduced") = true);
  m.def("f_positivity", &fcurves, py::arg("divisor"), py::arg("sense") = "positive", py::arg("strict") = true,
        py::arg("all_violations") = false, py::arg("threads") = 0U, py::call_guard<py::gil_scoped_release>());
  m.def("pullback_alpha", &alpha, py::arg("divisor"));
  m.def("pullback_beta", &beta, py::arg("divisor"));
  m.def("chs_ample", &chs, py::arg("divisor"), py::arg("anti") = false, py::call_guard<py::gil_scoped_release>());
  m.def("solve_feasibility", &feasibility, py::arg("forms"), py::arg("bounds") = "");
  m.def("phi_divisor_map", [](int n) { return to_json(phi_divisor_map(n)).dump(); }, py::arg("n"));
  m.def("four_partition_count", &four_partition_count, py::arg("m"));
  m.def("run_cli", &run_cli, py::arg("args"));
}
