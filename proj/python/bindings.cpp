#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "tsd/congruence.hpp"
#include "tsd/design.hpp"
#include "tsd/errors.hpp"
#include "tsd/report.hpp"
#include "tsd/sieve.hpp"

namespace py = pybind11;
using namespace tsd;

namespace {

// All structured results cross the boundary as canonical JSON text; the
// Python package parses them so both sides agree byte for byte with the CLI.
std::string sieve_json_str(int t, long lo, long hi, const std::string& registry_path,
                           long factor_bound, int jobs) {
    Registry reg = registry_path.empty() ? Registry::prior_work()
                                         : Registry::from_file(registry_path);
    return sieve_json(run_sieve(t, lo, hi, reg, factor_bound, jobs)).dump();
}

std::string verdict_json_str(int t, long param, const std::string& registry_path,
                             long factor_bound) {
    if (t != 5 && t != 7) throw std::invalid_argument("t must be 5 or 7");
    Registry reg = registry_path.empty() ? Registry::prior_work()
                                         : Registry::from_file(registry_path);
    Verdict v = (t == 7) ? verdict7(param, reg, factor_bound)
                         : verdict5(param, reg, factor_bound);
    return verdict_json(v).dump();
}

std::vector<Scalar> parse_point(const Design& dsg, const std::vector<std::string>& coords) {
    if (static_cast<int>(coords.size()) != dsg.dim())
        throw std::invalid_argument("point has wrong dimension");
    std::vector<Scalar> out;
    out.reserve(coords.size());
    for (const auto& c : coords) out.push_back(Scalar::parse(c, dsg.disc()));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact verification and exclusion toolkit for tight spherical designs";

    py::register_exception<ParseError>(m, "ParseError");
    py::register_exception<UnsupportedInput>(m, "UnsupportedInput");
    py::register_exception<BoundExceeded>(m, "BoundExceeded");

    py::class_<Design>(m, "Design")
        .def_static("builtin", &Design::builtin, py::arg("name"))
        .def_static("load", &load_design_file, py::arg("path"))
        .def("save", [](const Design& d, const std::string& path) { save_design_file(d, path); },
             py::arg("path"))
        .def_property_readonly("n", &Design::dim)
        .def_property_readonly("norm", [](const Design& d) { return d.norm().to_string(); })
        .def_property_readonly("size", &Design::size)
        .def_property_readonly("label", &Design::label)
        .def("strength", [](const Design& d, int t) { return strength_certificate(d, t).pass; },
             py::arg("t"))
        .def("report", [](const Design& d, int t) { return design_report(d, t).body.dump(); },
             py::arg("t") = 7)
        .def("lattice_report",
             [](const Design& d, long disc_bound) {
                 return lattice_report(d, Int(disc_bound)).body.dump();
             },
             py::arg("disc_bound") = 10000)
        .def("moment_sum",
             [](const Design& d, const std::vector<std::string>& alpha, int k) {
                 if (k < 0) throw std::invalid_argument("k must be nonnegative");
                 return moment_sum(d, parse_point(d, alpha), k).to_string();
             },
             py::arg("alpha"), py::arg("k"))
        .def("__repr__", [](const Design& d) {
            return "<Design " + d.label() + " n=" + std::to_string(d.dim()) +
                   " size=" + std::to_string(d.size()) + ">";
        });

    m.def("builtin_names", [] { return Design::builtin_names(); });
    m.def("run_sieve", &sieve_json_str, py::arg("t"), py::arg("lo"), py::arg("hi"),
          py::arg("registry") = std::string(), py::arg("factor_bound") = 1000,
          py::arg("jobs") = 1);
    m.def("verdict", &verdict_json_str, py::arg("t"), py::arg("param"),
          py::arg("registry") = std::string(), py::arg("factor_bound") = 1000);
    m.def("verify_table", [] { return table_json(verify_table()).dump(); });
    m.def("classify_cell", [](int r, int delta) {
        CongruenceCase c = classify(r, delta);
        Json j;
        j["r"] = c.r;
        j["delta"] = c.delta;
        j["label"] = c.label;
        j["conclusion"] =
            (c.conclusion == CellConclusion::BEven) ? "b-even" : "contradiction";
        return j.dump();
    }, py::arg("r"), py::arg("delta"));
}
