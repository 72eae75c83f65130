#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>
#include <vector>

#include "geoflow/diagnostics.hpp"
#include "geoflow/diffeo.hpp"
#include "geoflow/euler_solver.hpp"
#include "geoflow/lagrangian_solver.hpp"
#include "geoflow/mollifier.hpp"

namespace py = pybind11;
using namespace geoflow;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PeriodicField to_field(const Array& a) {
    if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array of grid samples");
    const Grid grid(static_cast<int>(a.size()));
    return PeriodicField(grid, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const PeriodicField& u) {
    const auto v = u.values();
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Array to_array(const std::vector<double>& v) {
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

template <class States, class Get>
Array stack(const States& states, Get get) {
    const py::ssize_t rows = static_cast<py::ssize_t>(states.size());
    const py::ssize_t n = rows ? static_cast<py::ssize_t>(get(states.front()).values().size()) : 0;
    Array out({rows, n});
    auto m = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < rows; ++i) {
        const auto f = get(states[static_cast<std::size_t>(i)]);
        for (py::ssize_t j = 0; j < n; ++j) m(i, j) = f[static_cast<std::size_t>(j)];
    }
    return out;
}

py::dict diagnostics_columns(const std::vector<DiagRow>& rows) {
    std::vector<double> cols[9];
    for (const auto& r : rows) {
        const double vals[9] = {r.t, r.energy_A, r.h_q_norm, r.min_ux, r.min_phix,
                                r.m_l2, r.dq_from_start, r.apriori_residual, r.chain_rule_residual};
        for (int c = 0; c < 9; ++c) cols[c].push_back(vals[c]);
    }
    static const char* names[9] = {"t", "energy_A", "h_q_norm", "min_ux", "min_phix",
                                   "m_l2", "dq_from_start", "apriori_residual", "chain_rule_residual"};
    py::dict d;
    for (int c = 0; c < 9; ++c) d[names[c]] = to_array(cols[c]);
    return d;
}

SolverConfig solver_config(const SymbolSpec& a, double dt, double t_end, int record_every, bool dealias,
                           double min_slope_floor, double norm_ceiling, double jacobian_floor) {
    SolverConfig cfg;
    cfg.symbol = a;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.record_every = record_every;
    cfg.dealias = dealias ? DealiasRule::two_thirds : DealiasRule::none;
    cfg.stop.min_slope_floor = min_slope_floor;
    cfg.stop.norm_ceiling = norm_ceiling;
    cfg.stop.jacobian_floor = jacobian_floor;
    cfg.validate();
    return cfg;
}

DiffeoMap to_diffeo(const Array& displacement) { return DiffeoMap(to_field(displacement)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral geodesic flows on the circle diffeomorphism group.";

    // translators run newest first, so the base class is registered first
    py::register_exception<Error>(m, "GeoflowError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<SymbolSpec>(m, "Symbol")
        .def_static("bessel", &SymbolSpec::bessel, py::arg("s"))
        .def_static("helmholtz_power", &SymbolSpec::helmholtz_power, py::arg("kappa"))
        .def_static("clm", &SymbolSpec::clm)
        .def_static("derivative", &SymbolSpec::derivative)
        .def_static("hilbert", &SymbolSpec::hilbert)
        .def_static("identity", &SymbolSpec::identity)
        .def_property_readonly("order", &SymbolSpec::order)
        .def_property_readonly("name", &SymbolSpec::name)
        .def("__call__", &SymbolSpec::operator(), py::arg("k"))
        .def("__repr__", [](const SymbolSpec& a) { return "Symbol(" + a.name() + ")"; });

    m.def("nodes", [](int n) {
        const Grid g(n);
        std::vector<double> x(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = g.node(j);
        return to_array(x);
    }, py::arg("n"), "Grid nodes 2 pi j / n.");

    m.def("apply_symbol", [](const SymbolSpec& a, const Array& u) { return to_array(apply_symbol(a, to_field(u))); },
          py::arg("symbol"), py::arg("u"));
    m.def("solve_symbol", [](const SymbolSpec& a, const Array& w) { return to_array(solve_symbol(a, to_field(w))); },
          py::arg("symbol"), py::arg("w"));
    m.def("derivative", [](const Array& u) { return to_array(derivative(to_field(u))); }, py::arg("u"));
    m.def("dealias", [](const Array& u) { return to_array(dealias(to_field(u))); }, py::arg("u"));
    m.def("sobolev_norm", [](const Array& u, double q) { return sobolev_norm(to_field(u), q); },
          py::arg("u"), py::arg("q"));
    m.def("energy_norm", [](const Array& u, const SymbolSpec& a) { return energy_norm(to_field(u), a); },
          py::arg("u"), py::arg("symbol"));
    m.def("euler_rhs", [](const Array& u, const SymbolSpec& a) { return to_array(euler_rhs(to_field(u), a)); },
          py::arg("u"), py::arg("symbol"));

    m.def("mollify", [](const Array& u, double eps) {
        const auto f = to_field(u);
        return to_array(mollify(f, bump_kernel(eps, f.grid())));
    }, py::arg("u"), py::arg("epsilon"));
    m.def("commutator_ratio", [](const Array& u, const Array& mm, double eps) {
        const auto f = to_field(u);
        return commutator_ratio(f, to_field(mm), bump_kernel(eps, f.grid()));
    }, py::arg("u"), py::arg("m"), py::arg("epsilon"));

    m.def("min_slope", [](const Array& u) { return min_slope(to_field(u)); }, py::arg("u"));
    m.def("kato_ponce_ratio", [](const Array& u, const Array& v, double s) {
        return kato_ponce_ratio(to_field(u), to_field(v), s);
    }, py::arg("u"), py::arg("v"), py::arg("s"));

    m.def("compose", [](const Array& w, const Array& f) { return to_array(compose(to_field(w), to_diffeo(f))); },
          py::arg("w"), py::arg("displacement"), "w o phi for phi = id + displacement.");
    m.def("invert", [](const Array& f) { return to_array(invert_diffeo(to_diffeo(f)).displacement()); },
          py::arg("displacement"), "Displacement of phi^{-1}.");
    m.def("dq_distance", [](const Array& f1, const Array& f2, double q) {
        return dq_distance(to_diffeo(f1), to_diffeo(f2), q);
    }, py::arg("displacement1"), py::arg("displacement2"), py::arg("q"));

    m.def("integrate_euler", [](const Array& u0, const SymbolSpec& a, double dt, double t_end, int record_every,
                                bool dealias, double min_slope_floor, double norm_ceiling) {
        const auto cfg = solver_config(a, dt, t_end, record_every, dealias, min_slope_floor, norm_ceiling, 1e-2);
        const auto u = to_field(u0);
        check_initial_velocity(u, a);
        EulerTrajectory tr;
        {
            py::gil_scoped_release release;
            tr = integrate_euler(u, cfg);
        }
        py::dict out;
        out["status"] = std::string(to_string(tr.status));
        out["stop_time"] = tr.stop_time;
        out["u"] = stack(tr.states, [](const EulerState& s) { return s.u; });
        out["diagnostics"] = diagnostics_columns(tr.rows);
        return out;
    }, py::arg("u0"), py::arg("symbol"), py::arg("dt"), py::arg("t_end"), py::arg("record_every") = 1,
       py::arg("dealias") = true, py::arg("min_slope_floor") = StopRules{}.min_slope_floor,
       py::arg("norm_ceiling") = StopRules{}.norm_ceiling);

    m.def("integrate_geodesic", [](const Array& v0, const SymbolSpec& a, double dt, double t_end, int record_every,
                                   double min_slope_floor, double norm_ceiling, double jacobian_floor) {
        const auto cfg = solver_config(a, dt, t_end, record_every, true, min_slope_floor, norm_ceiling,
                                       jacobian_floor);
        const auto v = to_field(v0);
        check_initial_velocity(v, a);
        LagrangianTrajectory tr;
        {
            py::gil_scoped_release release;
            tr = integrate_geodesic(DiffeoMap::identity(v.grid()), v, cfg);
        }
        py::dict out;
        out["status"] = std::string(to_string(tr.status));
        out["stop_time"] = tr.stop_time;
        out["displacement"] = stack(tr.states, [](const LagrangianState& s) { return s.phi.displacement(); });
        out["v"] = stack(tr.states, [](const LagrangianState& s) { return s.v; });
        out["diagnostics"] = diagnostics_columns(tr.rows);
        return out;
    }, py::arg("v0"), py::arg("symbol"), py::arg("dt"), py::arg("t_end"), py::arg("record_every") = 1,
       py::arg("min_slope_floor") = StopRules{}.min_slope_floor, py::arg("norm_ceiling") = StopRules{}.norm_ceiling,
       py::arg("jacobian_floor") = StopRules{}.jacobian_floor);
}
