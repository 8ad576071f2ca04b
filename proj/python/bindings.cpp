#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gpdelta/gpdelta.hpp"

namespace py = pybind11;
using namespace gpdelta;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

Field to_field(const GridSpec& g, const CArray& a) {
    if (a.ndim() != 1 || static_cast<std::size_t>(a.shape(0)) != g.size())
        throw std::invalid_argument("field must be 1-d with grid.size entries");
    return Field(g, CVec(a.data(), a.data() + a.shape(0)));
}

CArray to_array(const Field& u) {
    CArray out(static_cast<py::ssize_t>(u.size()));
    std::copy(u.values().begin(), u.values().end(), out.mutable_data());
    return out;
}

py::array_t<double> to_array(const RVec& v) { return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data()); }

StationaryState state(const std::string& kind, double gamma, double theta) {
    return {state_kind_from_string(kind), gamma, theta};
}

py::dict report_dict(const SpectralReport& r) {
    py::dict d;
    d["gamma"] = r.gamma;
    d["lminus_eigs"] = to_array(r.lminus_eigs);
    d["lplus_eigs"] = to_array(r.lplus_eigs);
    d["n_neg_minus"] = r.n_neg_minus;
    d["n_neg_plus"] = r.n_neg_plus;
    d["mu_min"] = r.mu_min;
    d["growth_rate"] = r.growth_rate;
    d["lambda_asymmetry"] = r.lambda_asymmetry;
    if (r.pair) {
        d["u"] = to_array(r.pair->u);
        d["v"] = to_array(r.pair->v);
        d["pair_residual"] = r.pair->residual;
    }
    return d;
}

EvolveConfig evolve_config(double dt, double t_end, double gamma, bool linear, int record_every) {
    EvolveConfig c;
    c.dt = dt;
    c.t_end = t_end;
    c.gamma = gamma;
    c.linear = linear;
    c.record_every = record_every;
    c.keep_snapshots = false;
    return c;
}

FlowConfig flow_config(double tau, double grad_tol, int max_iters, std::uint64_t seed, bool odd) {
    FlowConfig c;
    c.tau = tau;
    c.grad_tol = grad_tol;
    c.max_iters = max_iters;
    c.seed = seed;
    c.odd_projection = odd;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gross-Pitaevskii dark solitons with a point defect";

    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", numerical.ptr());
    py::register_exception<EigenCountExceeded>(m, "EigenCountExceeded", numerical.ptr());

    py::class_<GridSpec>(m, "Grid")
        .def(py::init(&make_grid), py::arg("L"), py::arg("M"))
        .def_static("with_spacing", &make_grid_with_spacing, py::arg("L"), py::arg("h"))
        .def_property_readonly("L", &GridSpec::L)
        .def_property_readonly("M", &GridSpec::M)
        .def_property_readonly("h", &GridSpec::h)
        .def_property_readonly("size", &GridSpec::size)
        .def("nodes", [](const GridSpec& g) { return to_array(g.nodes()); })
        .def("__repr__", [](const GridSpec& g) {
            return "Grid(L=" + std::to_string(g.L()) + ", M=" + std::to_string(g.M()) + ")";
        });

    // solitons
    m.def("theta_gamma", &theta_gamma, py::arg("gamma"));
    m.def("theta_tilde", &theta_tilde, py::arg("gamma"));
    m.def(
        "closed_form_energy",
        [](const std::string& kind, double gamma) { return closed_form_energy(state(kind, gamma, 0.0)); },
        py::arg("kind"), py::arg("gamma"));
    m.def(
        "eval_state",
        [](const std::string& kind, double gamma, const GridSpec& g, double theta) {
            return to_array(eval_state(state(kind, gamma, theta), g));
        },
        py::arg("kind"), py::arg("gamma"), py::arg("grid"), py::arg("theta") = 0.0);
    m.def(
        "minimizer_kind", [](double gamma) { return to_string(minimizer(gamma).kind); }, py::arg("gamma"));
    m.def(
        "bound_state", [](double gamma, const GridSpec& g) { return to_array(bound_state(gamma, g)); }, py::arg("gamma"),
        py::arg("grid"));

    // energy
    m.def(
        "energy_gamma",
        [](const CArray& u, double gamma, const GridSpec& g) {
            const EnergyBreakdown e = energy_gamma(to_field(g, u), gamma);
            py::dict d;
            d["kinetic"] = e.kinetic;
            d["point"] = e.point;
            d["potential"] = e.potential;
            d["total"] = e.total;
            return d;
        },
        py::arg("u"), py::arg("gamma"), py::arg("grid"));
    m.def(
        "energy_gamma_extrapolated",
        [](const CArray& u, double gamma, const GridSpec& g) { return energy_gamma_extrapolated(to_field(g, u), gamma); },
        py::arg("u"), py::arg("gamma"), py::arg("grid"));
    m.def(
        "energy_gradient",
        [](const CArray& u, double gamma, const GridSpec& g) { return to_array(energy_gradient(to_field(g, u), gamma)); },
        py::arg("u"), py::arg("gamma"), py::arg("grid"));
    m.def(
        "orbit_distance",
        [](const CArray& u, const std::string& target, double gamma, const GridSpec& g) {
            const auto r = orbit_distance(to_field(g, u), state_kind_from_string(target), gamma);
            return py::make_tuple(r.distance, r.best_phase);
        },
        py::arg("u"), py::arg("target"), py::arg("gamma"), py::arg("grid"));

    // propagator
    m.def("w_erfc", &w_erfc, py::arg("z"));
    m.def(
        "gamma_kernel",
        [](double t, double x, double y, double gamma) {
            const KernelValue v = gamma_kernel({t, x, y, gamma});
            return py::make_tuple(v.total, v.part1, v.part2);
        },
        py::arg("t"), py::arg("x"), py::arg("y"), py::arg("gamma"));
    m.def("g_func", &g_func, py::arg("t"), py::arg("rho"), py::arg("gamma"));
    m.def(
        "apply_propagator",
        [](const CArray& u0, double t, double gamma, const GridSpec& g) {
            const Field f = to_field(g, u0);
            py::gil_scoped_release nogil;
            Field r = apply_propagator(f, t, gamma);
            py::gil_scoped_acquire gil;
            return to_array(r);
        },
        py::arg("u0"), py::arg("t"), py::arg("gamma"), py::arg("grid"));

    // evolution
    m.def(
        "evolve",
        [](const CArray& u0, const GridSpec& g, double dt, double t_end, double gamma, bool linear, int record_every,
           std::optional<std::string> orbit_target) {
            const Field f = to_field(g, u0);
            const EvolveConfig c = evolve_config(dt, t_end, gamma, linear, record_every);
            std::optional<StateKind> target;
            if (orbit_target) target = state_kind_from_string(*orbit_target);
            Trajectory tr;
            {
                py::gil_scoped_release nogil;
                tr = evolve(f, c, target);
            }
            py::dict d;
            d["times"] = to_array(tr.times);
            d["energy"] = to_array(tr.energy_trace);
            if (tr.orbit_trace) d["orbit_distance"] = to_array(*tr.orbit_trace);
            d["final"] = to_array(*tr.final_state);
            return d;
        },
        py::arg("u0"), py::arg("grid"), py::arg("dt"), py::arg("t_end"), py::arg("gamma"), py::arg("linear") = false,
        py::arg("record_every") = 1, py::arg("orbit_target") = py::none());

    // spectra
    m.def(
        "eigs_below",
        [](double gamma, const GridSpec& g, const std::string& which, double edge) {
            LinearizedOp op;
            if (which == "minus") op = LinearizedOp::LMinus;
            else if (which == "plus") op = LinearizedOp::LPlus;
            else throw std::invalid_argument("which must be 'minus' or 'plus'");
            return to_array(eigs_below(build_lpm(g, gamma, op), edge));
        },
        py::arg("gamma"), py::arg("grid"), py::arg("which"), py::arg("edge"));
    m.def(
        "spectral_report", [](double gamma, const GridSpec& g) { return report_dict(spectral_report(gamma, g)); },
        py::arg("gamma"), py::arg("grid"));
    m.def(
        "instability_eigenvalue",
        [](double gamma, const GridSpec& g) {
            SpectralReport r;
            {
                py::gil_scoped_release nogil;
                r = instability_eigenvalue(gamma, g);
            }
            return report_dict(r);
        },
        py::arg("gamma"), py::arg("grid"));
    m.def(
        "lambda_curve",
        [](const std::vector<double>& gammas, const GridSpec& g) {
            py::list out;
            for (const LambdaPoint& p : lambda_curve(gammas, g)) out.append(py::make_tuple(p.gamma, p.lambda, p.absorbed));
            return out;
        },
        py::arg("gammas"), py::arg("grid"));

    // variational
    m.def(
        "gradient_flow",
        [](const CArray& u0, double gamma, const GridSpec& g, double tau, double grad_tol, int max_iters, bool odd) {
            const Field f = to_field(g, u0);
            const FlowConfig c = flow_config(tau, grad_tol, max_iters, 0, odd);
            std::optional<FlowResult> r;
            {
                py::gil_scoped_release nogil;
                r = gradient_flow(f, gamma, c);
            }
            py::dict d;
            d["u"] = to_array(r->u);
            d["iterations"] = r->iterations;
            d["energy"] = r->energy;
            d["gradient_norm"] = r->gradient_norm;
            d["converged"] = r->converged;
            d["energy_history"] = to_array(r->energy_history);
            return d;
        },
        py::arg("u0"), py::arg("gamma"), py::arg("grid"), py::arg("tau") = 100.0, py::arg("grad_tol") = 1e-8,
        py::arg("max_iters") = 100000, py::arg("odd_projection") = false);
    m.def(
        "seeded_initial_field",
        [](const GridSpec& g, std::uint64_t seed, std::uint64_t index, bool odd) {
            return to_array(seeded_initial_field(g, seed, index, odd));
        },
        py::arg("grid"), py::arg("seed"), py::arg("index"), py::arg("odd") = false);
    m.def(
        "minimize_report",
        [](double gamma, int n_starts, const GridSpec& g, std::uint64_t seed, bool odd, int jobs) {
            const FlowConfig c = flow_config(100.0, 1e-8, 100000, seed, odd);
            MinimizeReport r;
            {
                py::gil_scoped_release nogil;
                r = minimize_report(gamma, n_starts, c, g, jobs);
            }
            py::list starts;
            for (const StartSummary& s : r.starts) {
                py::dict d;
                d["index"] = s.index;
                d["energy"] = s.energy;
                d["energy_extrapolated"] = s.energy_extrapolated;
                d["distance_minimizer"] = s.distance_minimizer;
                d["distance_kink"] = s.distance_kink;
                d["iterations"] = s.iterations;
                d["converged"] = s.converged;
                d["basin"] = to_string(s.basin);
                starts.append(d);
            }
            py::dict d;
            d["gamma"] = r.gamma;
            d["closed_form_min"] = r.closed_form_min;
            d["starts"] = starts;
            return d;
        },
        py::arg("gamma"), py::arg("n_starts"), py::arg("grid"), py::arg("seed") = 0, py::arg("odd") = false,
        py::arg("jobs") = 1);
}
