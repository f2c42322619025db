#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modrop/sl2c.hpp"
#include "modrop/specfun.hpp"
#include "modrop/verify.hpp"

namespace py = pybind11;
using namespace modrop;

namespace {

RunConfig config_from(const std::string& text) {
    RunConfig c;
    if (!text.empty()) apply_json(nlohmann::json::parse(text), c);
    c.validate();
    return c;
}

py::dict exact_dict(const sl2c::ExactResult& r) {
    py::dict d;
    d["relation"] = r.relation;
    d["degree"] = r.degree;
    d["monomials"] = r.monomials;
    d["nonzero"] = r.nonzero;
    d["pass"] = r.pass();
    return d;
}

}  // namespace

PYBIND11_MODULE(_modrop, m) {
    m.doc() = "Bindings of the modrop core";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    m.def("version", &version);
    m.def("parse_complex", &parse_complex);
    m.def("format_complex", &format_complex);

    py::class_<ModularParams>(m, "ModularParams")
        .def_readonly("omega", &ModularParams::omega)
        .def_readonly("omega_p", &ModularParams::omega_p)
        .def_readonly("omega_pp", &ModularParams::omega_pp)
        .def_readonly("beta", &ModularParams::beta)
        .def_readonly("q", &ModularParams::q)
        .def_readonly("q_tilde", &ModularParams::q_tilde)
        .def_property_readonly("b", &ModularParams::b);
    m.def("make_params", &make_params, py::arg("b"));
    m.def("swap_omegas", &swap_omegas);

    py::class_<GammaEvaluator>(m, "GammaEvaluator")
        .def(py::init([](double b) { return GammaEvaluator(make_params(b)); }), py::arg("b") = 0.8)
        .def_property_readonly("params", &GammaEvaluator::params)
        .def("gamma", &GammaEvaluator::gamma, py::arg("z"))
        .def("gamma_estimate",
             [](const GammaEvaluator& g, cplx z) {
                 const auto e = g.gamma_estimate(z);
                 return py::make_tuple(e.value, e.rel_error);
             })
        .def("D", &GammaEvaluator::D, py::arg("a"), py::arg("z"))
        .def("A", &GammaEvaluator::A, py::arg("a"))
        .def("fourier_D", &GammaEvaluator::fourier_D, py::arg("a"), py::arg("z"), py::arg("T") = 0.0);

    m.def("relation_ids", &relation_ids);
    m.def(
        "_run_relations",
        [](const std::vector<std::string>& ids, const std::string& cfg) {
            const auto c = config_from(cfg);
            py::gil_scoped_release release;
            return report_document(run_relations(ids, c), c).dump();
        },
        py::arg("ids"), py::arg("config") = "");
    m.def(
        "_run_suite",
        [](const std::string& suite, const std::string& cfg) {
            const auto c = config_from(cfg);
            py::gil_scoped_release release;
            return report_document(run_suite(suite, c), c).dump();
        },
        py::arg("suite"), py::arg("config") = "");
    m.def(
        "_convergence_series",
        [](const std::string& id, const std::vector<double>& res, const std::string& cfg) {
            const auto c = config_from(cfg);
            ConvergenceTable t;
            {
                py::gil_scoped_release release;
                t = convergence_series(id, res, c);
            }
            py::list rows;
            for (const auto& r : t.rows) rows.append(py::make_tuple(r.resolution, r.residual, r.wall_time_ms));
            py::dict d;
            d["relation_id"] = t.relation_id;
            d["parameter"] = t.parameter;
            d["rows"] = rows;
            d["non_increasing"] = t.non_increasing;
            return d;
        },
        py::arg("relation_id"), py::arg("resolutions"), py::arg("config") = "");
    m.def("_render_table", [](const std::string& doc) { return render_table(nlohmann::json::parse(doc)); });

    auto s = m.def_submodule("sl2c", "Exact checks in the holomorphic sector");
    s.def("check_f1", [](long long u, long long v, int d) { return exact_dict(sl2c::check_f1(u, v, d)); });
    s.def("check_f2", [](long long u, long long v, int d) { return exact_dict(sl2c::check_f2(u, v, d)); });
    s.def("check_RLL", [](const std::array<long long, 4>& t, int d) { return exact_dict(sl2c::check_RLL(t, d)); });
    s.def("check_RLL_ab",
          [](const std::array<long long, 4>& t, int d) { return exact_dict(sl2c::check_RLL_ab(t, d)); });
}
