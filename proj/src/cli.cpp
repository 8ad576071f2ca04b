#include "gpdelta/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "gpdelta/gpdelta.hpp"
#include "json.hpp"

#ifndef GPDELTA_VERSION
#define GPDELTA_VERSION "0.0.0"
#endif

namespace gpdelta {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitUsage = 64;

struct Options {
    std::string subcommand;
    double gamma = 1.0;
    double L = 40.0;
    double h = 0.005;
    double dt = 1e-3;
    double t_end = -1.0;  // per-subcommand default when negative
    long seed = 0;
    std::string out;
    int jobs = 1;
    std::string format = "both";
    // subcommand extras
    std::vector<double> gammas;
    int count = -1;
    double eps = 1e-4;
    bool odd = false;
    double amplitude = 0.05;
    double perturb = 0.0;
    std::string state;
    int record_every = 100;
    int lambda_points = 1201;
    double tau = 100.0;
    bool gamma_given = false, L_given = false, h_given = false;
};

// {value, provenance[, tolerance]}
json num(double v, const char* provenance) { return json{{"value", v}, {"provenance", provenance}}; }
json num(double v, const char* provenance, double tol) {
    return json{{"value", v}, {"provenance", provenance}, {"tolerance", tol}};
}

// Row label for a coupling value: shortest round-trip decimal.
std::string label(double gamma) { return "gamma=" + json(gamma).dump(); }

using Cell = std::variant<double, long, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

struct Report {
    json results = json::object();
    std::optional<Table> table;
};

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const fs::path& p, const Table& t) {
    std::ofstream f(p);
    for (std::size_t i = 0; i < t.header.size(); ++i) f << (i ? "," : "") << t.header[i];
    f << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) f << ",";
            std::visit(
                [&](const auto& c) {
                    using T = std::decay_t<decltype(c)>;
                    if constexpr (std::is_same_v<T, double>)
                        f << fmt17(c);
                    else
                        f << c;
                },
                row[i]);
        }
        f << "\n";
    }
}

GridSpec grid_of(const Options& o) { return make_grid_with_spacing(o.L, o.h); }

json grid_json(const GridSpec& g) {
    return json{{"L", g.L()}, {"M", g.M()}, {"h", g.h()}, {"nodes", g.size()}};
}

double t_end_or(const Options& o, double dflt) { return o.t_end >= 0.0 ? o.t_end : dflt; }
int count_or(const Options& o, int dflt) { return o.count > 0 ? o.count : dflt; }

std::vector<StationaryState> states_for(double gamma) {
    std::vector<StationaryState> s{{StateKind::Kink, gamma, 0.0}, {StateKind::EvenTanh, gamma, 0.0}};
    if (gamma < 0.0) s.push_back({StateKind::EvenCoth, gamma, 0.0});
    return s;
}

// ---- subcommands ---------------------------------------------------------

Report cmd_stationary(const Options& o) {
    if (o.gamma == 0.0) throw std::invalid_argument("stationary: --gamma must be nonzero");
    const GridSpec g = grid_of(o);
    Report r;
    Table t;
    t.header = {"x"};
    std::vector<Field> fields;
    json rows = json::array();
    for (const auto& s : states_for(o.gamma)) {
        const std::string k = to_string(s.kind);
        t.header.push_back("re_" + k);
        t.header.push_back("im_" + k);
        fields.push_back(eval_state(s, g));
        const EnergyBreakdown e = energy_gamma(fields.back(), o.gamma);
        json row{{"state", k},
                 {"closed_form_energy", num(closed_form_energy(s), "closed_form")},
                 {"discrete_energy", num(e.total, "discrete")},
                 {"kinetic", num(e.kinetic, "discrete")},
                 {"point", num(e.point, "discrete")},
                 {"potential", num(e.potential, "discrete")}};
        if (g.M() % 2 == 0) row["extrapolated_energy"] = num(energy_gamma_extrapolated(fields.back(), o.gamma), "discrete");
        rows.push_back(row);
    }
    for (std::size_t j = 0; j < g.size(); ++j) {
        std::vector<Cell> row{g.x(j)};
        for (const auto& f : fields) row.push_back(f[j].real()), row.push_back(f[j].imag());
        t.rows.push_back(std::move(row));
    }
    r.results = json{{"c_gamma", num(c_gamma(o.gamma), "closed_form")},
                     {"theta_gamma", num(theta_gamma(o.gamma), "closed_form")},
                     {"energies", rows}};
    if (o.gamma < 0.0) r.results["theta_tilde"] = num(theta_tilde(o.gamma), "closed_form");
    r.table = std::move(t);
    return r;
}

Report cmd_energy_table(const Options& o) {
    std::vector<double> gammas = o.gammas;
    if (gammas.empty()) gammas = o.gamma_given ? std::vector<double>{o.gamma} : std::vector<double>{-2, -1, -0.5, 0.5, 1, 2};
    const GridSpec g = grid_of(o);
    Report r;
    Table t;
    t.header = {"gamma", "state", "closed_form", "discrete", "extrapolated", "abs_error_discrete", "abs_error_extrapolated"};
    json rows = json::object();
    bool ordered_closed = true, ordered_discrete = true;
    for (double gm : gammas) {
        if (gm == 0.0) throw std::invalid_argument("energy-table: gamma values must be nonzero");
        std::map<StateKind, std::pair<double, double>> e;
        for (const auto& s : states_for(gm)) {
            const Field u = eval_state(s, g);
            const double cf = closed_form_energy(s), dis = energy_gamma(u, gm).total;
            const double ex = g.M() % 2 == 0 ? energy_gamma_extrapolated(u, gm) : dis;
            e[s.kind] = {cf, ex};
            t.rows.push_back({gm, to_string(s.kind), cf, dis, ex, std::abs(dis - cf), std::abs(ex - cf)});
            rows[label(gm)][to_string(s.kind)] = json{{"closed_form", num(cf, "closed_form")},
                                                      {"discrete", num(dis, "discrete")},
                                                      {"extrapolated", num(ex, "discrete")}};
        }
        const auto& K = e[StateKind::Kink];
        const auto& B = e[StateKind::EvenTanh];
        if (gm > 0.0) {
            ordered_closed = ordered_closed && B.first < K.first;
            ordered_discrete = ordered_discrete && B.second < K.second;
        } else {
            const auto& C = e[StateKind::EvenCoth];
            ordered_closed = ordered_closed && C.first < K.first && K.first < B.first;
            ordered_discrete = ordered_discrete && C.second < K.second && K.second < B.second;
        }
    }
    r.results = json{{"energies", rows},
                     {"ordering_closed_form", ordered_closed},
                     {"ordering_discrete", ordered_discrete}};
    r.table = std::move(t);
    return r;
}

Report cmd_kernel_check(const Options& o) {
    const int n = count_or(o, 50);
    std::mt19937_64 rng(static_cast<std::uint64_t>(o.seed));
    std::uniform_real_distribution<double> tt(0.0, 1.0), pos(-10.0, 10.0);
    const double gammas[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
    std::uniform_int_distribution<int> pick(0, 5);
    Report r;
    Table t;
    t.header = {"t", "x", "y", "gamma", "re_closed", "im_closed", "re_quadrature", "im_quadrature", "rel_error", "split_rel_error"};
    double worst = 0.0, worst_split = 0.0;
    for (int i = 0; i < n; ++i) {
        const KernelQuery q{1.0 - tt(rng), pos(rng), pos(rng), gammas[pick(rng)]};
        const KernelValue v = gamma_kernel(q);
        const cplx ref = gamma_kernel_reference(q);
        const double e = std::abs(v.total - ref) / std::abs(ref);
        double es = 0.0;
        if (v.part1) es = std::abs(*v.part1 + *v.part2 - v.total) / std::abs(v.total);
        worst = std::max(worst, e);
        worst_split = std::max(worst_split, es);
        t.rows.push_back({q.t, q.x, q.y, q.gamma, v.total.real(), v.total.imag(), ref.real(), ref.imag(), e, es});
    }
    r.results = json{{"max_rel_error_vs_quadrature", num(worst, "discrete", 1e-7)},
                     {"max_rel_error_split", num(worst_split, "discrete", 1e-10)}};
    r.table = std::move(t);
    return r;
}

Report cmd_evolve(const Options& o) {
    const GridSpec g = grid_of(o);
    StationaryState s = o.state.empty() ? minimizer(o.gamma) : StationaryState{state_kind_from_string(o.state), o.gamma, 0.0};
    validate(s);
    Field u0 = eval_state(s, g);
    if (o.perturb > 0.0) {
        Field w = seeded_perturbation(g, static_cast<std::uint64_t>(o.seed), 0);
        w *= o.perturb;
        u0 += w;
    }
    EvolveConfig c;
    c.dt = o.dt;
    c.t_end = t_end_or(o, 10.0);
    c.gamma = o.gamma;
    c.record_every = o.record_every;
    c.keep_snapshots = false;
    const Trajectory tr = evolve(u0, c, s.kind);
    Report r;
    Table t;
    t.header = {"t", "energy", "d0_orbit"};
    double drift = 0.0, sup = 0.0;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        t.rows.push_back({tr.times[k], tr.energy_trace[k], (*tr.orbit_trace)[k]});
        drift = std::max(drift, std::abs(tr.energy_trace[k] - tr.energy_trace[0]));
        sup = std::max(sup, (*tr.orbit_trace)[k]);
    }
    r.results = json{{"state", to_string(s.kind)},
                     {"initial_energy", num(tr.energy_trace.front(), "discrete")},
                     {"max_relative_energy_drift", num(drift / std::max(1e-300, std::abs(tr.energy_trace.front())), "discrete")},
                     {"sup_d0_orbit", num(sup, "discrete")},
                     {"max_fixed_point_iterations", num(tr.max_nonlinear_iterations, "discrete")}};
    r.table = std::move(t);
    return r;
}

Report cmd_stability_sweep(const Options& o) {
    if (o.gamma == 0.0) throw std::invalid_argument("stability-sweep: --gamma must be nonzero");
    const GridSpec g = grid_of(o);
    const int n = count_or(o, 10);
    EvolveConfig c;
    c.dt = o.dt;
    c.t_end = t_end_or(o, 50.0);
    c.gamma = o.gamma;
    c.record_every = o.record_every;
    c.keep_snapshots = false;
    validate(c);
    std::vector<StabilityPoint> pts(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(n));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                pts[static_cast<std::size_t>(i)] =
                    stability_run(o.gamma, g, static_cast<std::uint64_t>(o.seed), static_cast<std::uint64_t>(i), o.amplitude, c);
            } catch (...) {
                errs[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < std::min(o.jobs, n); ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    Report r;
    Table t;
    t.header = {"index", "d0_initial", "sup_d0", "relative_energy_drift"};
    double sup = 0.0, drift = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto& p = pts[static_cast<std::size_t>(i)];
        t.rows.push_back({static_cast<long>(i), p.d0_initial, p.sup_d0, p.max_relative_drift});
        sup = std::max(sup, p.sup_d0);
        drift = std::max(drift, p.max_relative_drift);
    }
    r.results = json{{"orbit", to_string(minimizer(o.gamma).kind)},
                     {"sup_d0_all_runs", num(sup, "discrete", 0.5)},
                     {"max_relative_energy_drift", num(drift, "discrete", 1e-6)}};
    r.table = std::move(t);
    return r;
}

json spectral_json(const SpectralReport& s) {
    json j{{"lminus_eigs", json::array()},
           {"lplus_eigs", json::array()},
           {"n_neg_minus", num(s.n_neg_minus, "discrete")},
           {"n_neg_plus", num(s.n_neg_plus, "discrete")}};
    for (double v : s.lminus_eigs) j["lminus_eigs"].push_back(num(v, "discrete"));
    for (double v : s.lplus_eigs) j["lplus_eigs"].push_back(num(v, "discrete"));
    if (s.mu_min) j["mu_min"] = num(*s.mu_min, "discrete");
    if (s.growth_rate) j["growth_rate"] = num(*s.growth_rate, "discrete");
    if (s.lambda_asymmetry) j["lambda_relative_asymmetry"] = num(*s.lambda_asymmetry, "discrete", 1e-10);
    if (s.pair) j["pair_residual"] = num(s.pair->residual, "discrete", 1e-6);
    return j;
}

GridSpec lambda_grid(const Options& o) {
    if (o.lambda_points < 3 || o.lambda_points % 2 == 0)
        throw std::invalid_argument("--lambda-points must be odd and >= 3");
    return make_grid(o.L, (o.lambda_points + 1) / 2);
}

Report cmd_spectrum(const Options& o) {
    const GridSpec g = grid_of(o);
    SpectralReport s = o.gamma > 0.0 ? instability_eigenvalue(o.gamma, lambda_grid(o)) : spectral_report(o.gamma, g);
    if (o.gamma > 0.0) {
        // Eigenvalue tables on the full grid; Lambda on the dense grid.
        const SpectralReport fine = spectral_report(o.gamma, g);
        s.lminus_eigs = fine.lminus_eigs;
        s.lplus_eigs = fine.lplus_eigs;
        s.n_neg_minus = fine.n_neg_minus;
        s.n_neg_plus = fine.n_neg_plus;
    }
    Report r;
    Table t;
    t.header = {"operator", "index", "eigenvalue"};
    for (std::size_t k = 0; k < s.lminus_eigs.size(); ++k) t.rows.push_back({std::string("L_minus"), static_cast<long>(k), s.lminus_eigs[k]});
    for (std::size_t k = 0; k < s.lplus_eigs.size(); ++k) t.rows.push_back({std::string("L_plus"), static_cast<long>(k), s.lplus_eigs[k]});
    r.results = spectral_json(s);
    r.table = std::move(t);
    return r;
}

Report cmd_lambda_curve(const Options& o) {
    std::vector<double> gammas = o.gammas;
    if (gammas.empty())
        for (int k = -10; k <= 10; ++k) gammas.push_back(0.005 * k);
    const GridSpec g = grid_of(o);
    const auto pts = lambda_curve(gammas, g);
    Report r;
    Table t;
    t.header = {"gamma", "lambda", "absorbed"};
    json arr = json::object();
    for (const auto& p : pts) {
        t.rows.push_back({p.gamma, p.lambda, static_cast<long>(p.absorbed)});
        arr[label(p.gamma)] = json{{"lambda", num(p.lambda, "discrete")}, {"absorbed", p.absorbed}};
    }
    r.results = json{{"points", arr}, {"slope_reference", num(3.0 * std::sqrt(2.0) / 8.0, "closed_form")}};
    const auto m = lambda_curve({-0.01, 0.01}, g);
    r.results["central_slope"] = num((m[1].lambda - m[0].lambda) / 0.02, "discrete", 1e-2);
    r.table = std::move(t);
    return r;
}

Report cmd_instability(const Options& o) {
    if (!(o.gamma > 0.0)) throw std::invalid_argument("instability: --gamma must be positive");
    const SpectralReport s = instability_eigenvalue(o.gamma, lambda_grid(o));
    if (!s.pair) throw NumericalError("instability: Lambda has no negative eigenvalue on this grid");
    const GridSpec g = grid_of(o);
    Field dir(g);
    if (o.odd) {
        dir = sample(g, [](double x) { return cplx(x * std::exp(-x * x / 4.0), 0.5 * x * std::exp(-x * x)); });
        dir[0] = dir[dir.size() - 1] = 0.0;
        dir *= 1.0 / l2_norm(dir);
    } else {
        dir = growing_mode_direction(*s.pair, g);
    }
    EvolveConfig c;
    c.dt = o.dt;
    c.t_end = t_end_or(o, 60.0);
    c.record_every = o.record_every;
    c.keep_snapshots = false;
    const InstabilityRun run = instability_run(o.gamma, o.eps, dir, c);
    Report r;
    Table t;
    t.header = {"t", "d0_kink_orbit"};
    for (std::size_t k = 0; k < run.trajectory.times.size(); ++k)
        t.rows.push_back({run.trajectory.times[k], (*run.trajectory.orbit_trace)[k]});
    r.results = spectral_json(s);
    r.results["direction"] = o.odd ? "odd" : "growing_mode";
    if (run.fit) {
        r.results["fitted_rate"] = num(run.fit->rate, "fitted");
        r.results["fit_points"] = num(run.fit->points, "fitted");
        r.results["fit_t_begin"] = num(run.fit->t_begin, "fitted");
        r.results["fit_t_end"] = num(run.fit->t_end, "fitted");
        r.results["relative_deviation"] = num(std::abs(run.fit->rate - *s.growth_rate) / *s.growth_rate, "fitted", 0.1);
    } else {
        r.results["fitted_rate"] = nullptr;
        r.results["growth_window"] = "empty";
    }
    r.table = std::move(t);
    return r;
}

Report cmd_minimize(const Options& o) {
    const GridSpec g = grid_of(o);
    FlowConfig fc;
    fc.seed = static_cast<std::uint64_t>(o.seed);
    fc.odd_projection = o.odd;
    fc.tau = o.tau;
    const MinimizeReport rep = minimize_report(o.gamma, count_or(o, 10), fc, g, o.jobs);
    Report r;
    Table t;
    t.header = {"index", "energy", "energy_extrapolated", "distance_minimizer", "distance_kink", "iterations", "converged", "basin"};
    json arr = json::array();
    for (const auto& s : rep.starts) {
        t.rows.push_back({static_cast<long>(s.index), s.energy, s.energy_extrapolated, s.distance_minimizer, s.distance_kink,
                          static_cast<long>(s.iterations), static_cast<long>(s.converged), to_string(s.basin)});
        arr.push_back(json{{"energy", num(s.energy, "discrete")},
                           {"energy_extrapolated", num(s.energy_extrapolated, "discrete")},
                           {"distance_minimizer", num(s.distance_minimizer, "discrete")},
                           {"distance_kink", num(s.distance_kink, "discrete")},
                           {"iterations", num(s.iterations, "discrete")},
                           {"converged", s.converged},
                           {"basin", to_string(s.basin)}});
    }
    r.results = json{{"closed_form_minimum", num(rep.closed_form_min, "closed_form")},
                     {"starts", arr}};
    r.table = std::move(t);
    return r;
}

// ---- plumbing ------------------------------------------------------------

json parameters_json(const Options& o) {
    json p{{"gamma", o.gamma}, {"L", o.L}, {"h", o.h}, {"dt", o.dt}, {"seed", o.seed}, {"jobs", o.jobs}, {"format", o.format}};
    if (o.t_end >= 0.0) p["t_end"] = o.t_end;
    if (!o.gammas.empty()) p["gammas"] = o.gammas;
    if (o.count > 0) p["n"] = o.count;
    if (o.subcommand == "instability") p["eps"] = o.eps, p["odd"] = o.odd, p["lambda_points"] = o.lambda_points;
    if (o.subcommand == "spectrum") p["lambda_points"] = o.lambda_points;
    if (o.subcommand == "minimize") p["odd"] = o.odd, p["tau"] = o.tau;
    if (o.subcommand == "stability-sweep") p["amplitude"] = o.amplitude;
    if (o.subcommand == "evolve") p["perturb"] = o.perturb, p["state"] = o.state;
    if (o.subcommand == "evolve" || o.subcommand == "stability-sweep" || o.subcommand == "instability")
        p["record_every"] = o.record_every;
    return p;
}

void add_common(CLI::App* sc, Options& o) {
    sc->add_option("--gamma", o.gamma, "coupling constant")->each([&o](const std::string&) { o.gamma_given = true; });
    sc->add_option("--L", o.L, "half-length of the domain")->each([&o](const std::string&) { o.L_given = true; });
    sc->add_option("--h", o.h, "grid spacing")->each([&o](const std::string&) { o.h_given = true; });
    sc->add_option("--dt", o.dt, "time step");
    sc->add_option("--t-end", o.t_end, "final time");
    sc->add_option("--seed", o.seed, "random seed");
    sc->add_option("--out", o.out, "output directory");
    sc->add_option("--jobs", o.jobs, "concurrent sweep points")->check(CLI::PositiveNumber);
    sc->add_option("--format", o.format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
}

}  // namespace

int cli_dispatch(int argc, char** argv) {
    Options o;
    CLI::App app{"gpdelta: Gross-Pitaevskii equation with a point interaction"};
    app.set_help_flag("--help", "print help and exit");
    app.set_version_flag("--version", GPDELTA_VERSION);
    app.require_subcommand(1, 1);

    struct Sub {
        const char* name;
        const char* help;
        std::function<Report(const Options&)> run;
        bool spectral_defaults;
    };
    const std::vector<Sub> subs = {
        {"stationary", "closed-form stationary states and their energies", cmd_stationary, false},
        {"energy-table", "closed-form vs discrete energies over gamma", cmd_energy_table, false},
        {"kernel-check", "correction kernel vs direct quadrature", cmd_kernel_check, false},
        {"evolve", "nonlinear evolution from a stationary state", cmd_evolve, false},
        {"stability-sweep", "seeded perturbations of the minimiser", cmd_stability_sweep, false},
        {"spectrum", "eigenvalues of the linearised operators", cmd_spectrum, true},
        {"lambda-curve", "first eigenvalue of L_+ against gamma", cmd_lambda_curve, true},
        {"instability", "unstable eigenvalue and fitted growth rate", cmd_instability, true},
        {"minimize", "seeded gradient flows", cmd_minimize, false},
    };
    std::map<std::string, CLI::App*> handles;
    for (const auto& s : subs) {
        CLI::App* sc = app.add_subcommand(s.name, s.help);
        add_common(sc, o);
        handles[s.name] = sc;
    }
    handles["energy-table"]->add_option("--gammas", o.gammas, "gamma values")->delimiter(',');
    handles["lambda-curve"]->add_option("--gammas", o.gammas, "gamma values")->delimiter(',');
    for (const char* n : {"kernel-check", "stability-sweep", "minimize"})
        handles[n]->add_option("--n", o.count, "number of queries / runs / starts")->check(CLI::PositiveNumber);
    handles["instability"]->add_option("--eps", o.eps, "perturbation size");
    handles["instability"]->add_flag("--odd", o.odd, "odd perturbation instead of the growing mode");
    handles["minimize"]->add_flag("--odd", o.odd, "odd starts with parity projection");
    handles["minimize"]->add_option("--tau", o.tau, "gradient-flow step");
    handles["stability-sweep"]->add_option("--amplitude", o.amplitude, "largest initial orbit distance");
    handles["evolve"]->add_option("--perturb", o.perturb, "L2 size of a seeded perturbation");
    handles["evolve"]->add_option("--state", o.state, "kink, even_tanh or even_coth");
    for (const char* n : {"evolve", "stability-sweep", "instability"})
        handles[n]->add_option("--record-every", o.record_every, "steps between recorded samples")->check(CLI::PositiveNumber);
    for (const char* n : {"spectrum", "instability"})
        handles[n]->add_option("--lambda-points", o.lambda_points, "interior nodes of the dense Lambda grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }

    const Sub* chosen = nullptr;
    for (const auto& s : subs)
        if (handles[s.name]->parsed()) chosen = &s;
    o.subcommand = chosen->name;
    if (chosen->spectral_defaults) {
        if (!o.L_given) o.L = 30.0;
        if (!o.h_given) o.h = 0.01;
    }
    if (o.out.empty()) {
        const char* env = std::getenv("GPDELTA_OUT");
        o.out = env && *env ? env : "gpdelta_out";
    }

    const auto t0 = std::chrono::steady_clock::now();
    json manifest{{"subcommand", o.subcommand}, {"parameters", parameters_json(o)}, {"tool_version", GPDELTA_VERSION}};
    int code = kExitOk;
    std::string diagnostic;
    Report rep;
    try {
        manifest["grid"] = grid_json(make_grid_with_spacing(o.L, o.h));
        rep = chosen->run(o);
    } catch (const std::invalid_argument& e) {
        code = kExitValidation;
        diagnostic = e.what();
    } catch (const std::domain_error& e) {
        code = kExitValidation;
        diagnostic = e.what();
    } catch (const std::exception& e) {
        code = kExitNumerical;
        diagnostic = e.what();
    }

    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec) {
        std::cerr << "gpdelta: cannot create output directory " << o.out << ": " << ec.message() << "\n";
        return kExitValidation;
    }
    std::vector<std::string> outputs;
    const fs::path dir(o.out);
    if (code == kExitOk) {
        if (rep.table && o.format != "json") {
            const fs::path p = dir / (o.subcommand + ".csv");
            write_csv(p, *rep.table);
            outputs.push_back(p.string());
        }
        if (o.format != "csv") outputs.push_back((dir / (o.subcommand + ".json")).string());
    }
    outputs.push_back((dir / "manifest.json").string());
    manifest["outputs"] = outputs;
    manifest["status"] = code == kExitOk ? "ok" : code == kExitValidation ? "validation_failure" : "numerical_failure";
    if (!diagnostic.empty()) manifest["diagnostic"] = diagnostic;

    if (code == kExitOk && o.format != "csv") {
        std::ofstream f(dir / (o.subcommand + ".json"));
        f << json{{"manifest", manifest}, {"results", rep.results}}.dump(2) << "\n";
    }
    json full = manifest;
    full["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ofstream(dir / "manifest.json") << full.dump(2) << "\n";
    if (code != kExitOk) std::cerr << "gpdelta " << o.subcommand << ": " << diagnostic << "\n";
    return code;
}

}  // namespace gpdelta
