#include "geoflow/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "geoflow/euler_solver.hpp"
#include "geoflow/lagrangian_solver.hpp"

namespace geoflow::cli {

namespace {

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::filesystem::path output_file(const RunConfig& cfg, Frame frame, const char* suffix) {
    return cfg.resolved_output_dir() / (cfg.label + "_" + std::string(to_string(frame)) + suffix);
}

std::vector<double> values_of(const PeriodicField& f) { return {f.values().begin(), f.values().end()}; }

FinalState base_final_state(const RunConfig& cfg, Frame frame) {
    FinalState s;
    s.label = cfg.label;
    s.frame = std::string(to_string(frame));
    s.symbol = cfg.solver.symbol.name();
    s.n = cfg.n;
    return s;
}

}  // namespace

bool SimulationResult::any_blow_up() const {
    return std::any_of(frames.begin(), frames.end(), [](const FrameResult& f) { return is_blow_up(f.status); });
}

SimulationResult run_simulation(const RunConfig& cfg) {
    cfg.validate();
    const PeriodicField u0 = cfg.initial_velocity();
    SimulationResult result;

    std::optional<EulerTrajectory> euler;
    std::optional<LagrangianTrajectory> lagrange;

    if (cfg.frame != Frame::lagrangian) {
        euler = integrate_euler(u0, cfg.solver);
        FrameResult fr;
        fr.frame = Frame::eulerian;
        fr.status = euler->status;
        fr.stop_time = euler->stop_time;
        fr.rows = euler->rows;
        fr.csv_path = output_file(cfg, Frame::eulerian, ".csv");
        fr.json_path = output_file(cfg, Frame::eulerian, "_final.json");
        write_diagnostics_csv(fr.csv_path, fr.rows);
        FinalState fs = base_final_state(cfg, Frame::eulerian);
        fs.status = fr.status;
        fs.t = euler->states.back().t;
        fs.u = values_of(euler->states.back().u);
        write_final_state_json(fr.json_path, fs);
        result.frames.push_back(std::move(fr));
    }
    if (cfg.frame != Frame::eulerian) {
        lagrange = integrate_geodesic(DiffeoMap::identity(Grid(cfg.n)), u0, cfg.solver);
        FrameResult fr;
        fr.frame = Frame::lagrangian;
        fr.status = lagrange->status;
        fr.stop_time = lagrange->stop_time;
        fr.rows = lagrange->rows;
        fr.csv_path = output_file(cfg, Frame::lagrangian, ".csv");
        fr.json_path = output_file(cfg, Frame::lagrangian, "_final.json");
        write_diagnostics_csv(fr.csv_path, fr.rows);
        const LagrangianState& last = lagrange->states.back();
        FinalState fs = base_final_state(cfg, Frame::lagrangian);
        fs.status = fr.status;
        fs.t = last.t;
        try {
            fs.u = values_of(eulerian_velocity(last));
        } catch (const Error&) {
            fs.u.clear();  // degenerate final map; u is not recoverable
        }
        fs.displacement = values_of(last.phi.displacement());
        fs.v = values_of(last.v);
        write_final_state_json(fr.json_path, fs);
        result.frames.push_back(std::move(fr));
    }

    if (euler && lagrange) {
        // last time recorded by both frames
        for (auto it = lagrange->states.rbegin(); it != lagrange->states.rend(); ++it) {
            auto match = std::find_if(euler->states.begin(), euler->states.end(),
                                      [&](const EulerState& e) { return std::abs(e.t - it->t) < 1e-12; });
            if (match == euler->states.end()) continue;
            try {
                result.frame_gap = sobolev_norm(match->u - eulerian_velocity(*it), 0.0);
                result.frame_gap_time = it->t;
                break;
            } catch (const Error&) {
                continue;
            }
        }
    }
    return result;
}

int simulate_command(const RunConfig& cfg, std::ostream& out) {
    out << "# resolved configuration\n" << cfg.echo() << "\n";
    const SimulationResult result = run_simulation(cfg);
    for (const auto& f : result.frames) {
        out << to_string(f.frame) << ": status=" << to_string(f.status) << " t=" << format_cell(f.stop_time)
            << " rows=" << f.rows.size() << " csv=" << f.csv_path.string() << " json=" << f.json_path.string()
            << "\n";
    }
    if (result.frame_gap) {
        out << "frame-consistency: t=" << format_cell(result.frame_gap_time)
            << " l2_gap=" << format_cell(*result.frame_gap) << "\n";
    }
    return result.any_blow_up() ? kExitBlowUp : kExitOk;
}

std::vector<double> parse_param_list(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError("--param: expected s=<list>");
    std::string name = spec.substr(0, eq);
    name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
    if (name != "s") throw ConfigError("--param: only the bessel exponent 's' can be swept");
    std::string list = spec.substr(eq + 1);
    std::replace(list.begin(), list.end(), '[', ' ');
    std::replace(list.begin(), list.end(), ']', ' ');
    std::vector<double> values;
    std::istringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const std::string token = item.substr(b, item.find_last_not_of(" \t") - b + 1);
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size()) throw ConfigError("--param: '" + token + "' is not a number");
        values.push_back(v);
    }
    if (values.empty()) throw ConfigError("--param: empty parameter list");
    return values;
}

std::vector<SweepRow> run_sweep(const RunConfig& base, const std::vector<double>& s_values, int jobs) {
    if (s_values.empty()) throw ConfigError("--param: empty parameter list");
    std::vector<SweepRow> rows(s_values.size());

    auto run_child = [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.s = s_values[i];
        try {
            RunConfig cfg = base;
            cfg.solver.symbol = SymbolSpec::bessel(row.s);
            cfg.label = base.label + "_s" + format_cell(row.s);
            const SimulationResult r = run_simulation(cfg);
            const FrameResult& f = r.frames.front();
            row.status = std::string(to_string(f.status));
            if (is_blow_up(f.status)) row.stop_time = f.stop_time;
            double e0 = kMissing, e1 = kMissing;
            for (const auto& d : f.rows) {
                if (std::isfinite(d.min_ux)) row.max_abs_min_ux = std::max(row.max_abs_min_ux, std::abs(d.min_ux));
                if (std::isfinite(d.energy_A)) {
                    if (std::isnan(e0)) e0 = d.energy_A;
                    e1 = d.energy_A;
                }
            }
            row.energy_drift = e0 > 0.0 ? std::abs(e1 - e0) / e0 : 0.0;
        } catch (const std::exception& e) {
            row.status = "error";
            row.error = e.what();
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, s_values.size());
    if (workers == 1) {
        for (std::size_t i = 0; i < s_values.size(); ++i) run_child(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < s_values.size(); i = next++) run_child(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    return rows;
}

int sweep_command(const RunConfig& base, const std::vector<double>& s_values, int jobs, std::ostream& out) {
    const auto rows = run_sweep(base, s_values, jobs);
    const auto path = base.resolved_output_dir() / (base.label + "_sweep.csv");
    write_sweep_summary(path, rows);
    for (const auto& r : rows) {
        out << "s=" << format_cell(r.s) << " status=" << r.status;
        if (r.stop_time) out << " stop_time=" << format_cell(*r.stop_time);
        if (!r.error.empty()) out << " error=\"" << r.error << "\"";
        out << "\n";
    }
    out << "summary: " << path.string() << "\n";
    return kExitOk;
}

int verify_command(const VerifyOptions& options, std::ostream& out) {
    const auto results = run_verification(options);
    int failed = 0;
    for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << "\n";
        if (!r.passed) ++failed;
    }
    out << (failed ? "verify: " + std::to_string(failed) + " propert" + (failed == 1 ? "y" : "ies") + " failed"
                   : std::string("verify: all ") + std::to_string(results.size()) + " properties passed")
        << "\n";
    return failed ? kExitVerifyFailed : kExitOk;
}

int info_command(std::ostream& out) {
    const Grid g(256);
    out << "geoflow " << GEOFLOW_VERSION << "\n";
    out << "build: C++" << __cplusplus / 100 % 100 << ", FFTW3 backend\n\n";
    out << "symbols (a(k), declared order r, invertible on, sup_k |a(k)|/(1+k^2)^{r/2} at n = 256):\n";
    struct Row { SymbolSpec s; const char* formula; };
    const Row table[] = {
        {SymbolSpec::bessel(1.0), "(1+k^2)^s, r = 2s  [shown: s = 1]"},
        {SymbolSpec::helmholtz_power(2), "(1+k^2)^kappa, r = 2 kappa  [shown: kappa = 2]"},
        {SymbolSpec::clm(), "|k|, r = 1"},
        {SymbolSpec::identity(), "1, r = 0"},
        {SymbolSpec::derivative(), "ik, r = 1 (utility, not an inertia operator)"},
        {SymbolSpec::hilbert(), "-i sign(k), r = 0 (utility, not an inertia operator)"},
    };
    for (const auto& row : table) {
        out << "  " << row.s.name() << ": " << row.formula << "; "
            << (row.s.invertible_on() == Invertibility::all_modes ? "all_modes" : "mean_zero_only")
            << "; C = " << fmt("%.6g", order_constant(row.s, g)) << "\n";
    }
    out << "  custom: table a(0..K) with declared order and invertible_on\n\n";
    const SolverConfig d;
    out << "defaults:\n";
    out << "  solver.scheme = rk4, solver.dealias = two_thirds, solver.record_every = 1, solver.frame = eulerian\n";
    out << "  solver.q_work = order + 1\n";
    out << "  stop.min_slope_floor = " << format_cell(d.stop.min_slope_floor) << "\n";
    out << "  stop.norm_ceiling = " << format_cell(d.stop.norm_ceiling) << "\n";
    out << "  stop.jacobian_floor = " << format_cell(d.stop.jacobian_floor) << "\n";
    out << "  output.dir = out, output.label = run (" << kOutputRootEnv << " overrides the output root)\n";
    out << "\nexit codes: 0 ok, 1 internal error, 2 configuration error, 3 run stopped with blow-up status, "
           "4 verification failed\n";
    return kExitOk;
}

int run(int argc, char** argv) {
    CLI::App app{"Geodesic flows on the circle diffeomorphism group with Fourier-multiplier inertia operators"};
    app.require_subcommand(1);

    std::string sim_config;
    auto* simulate = app.add_subcommand("simulate", "Integrate one configuration and write diagnostics");
    simulate->add_option("config", sim_config, "Run configuration file")->required();

    std::string sweep_config;
    std::string sweep_param;
    int jobs = 1;
    auto* sweep = app.add_subcommand("sweep", "Run the configuration for a list of bessel exponents s");
    sweep->add_option("config", sweep_config, "Base run configuration file")->required();
    sweep->add_option("--param", sweep_param, "Parameter list, e.g. s=1,1.5,2")->required();
    sweep->add_option("--jobs", jobs, "Concurrent child runs")->check(CLI::PositiveNumber);

    VerifyOptions verify_options;
    auto* verify = app.add_subcommand("verify", "Run the built-in property suite");
    verify->add_flag("--corrupt-symbol", verify_options.corrupt_symbol,
                     "Test hook: corrupt a symbol table to exercise the failure path");

    auto* info = app.add_subcommand("info", "Print build information, symbol table and defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (simulate->parsed()) return simulate_command(parse_config(sim_config), std::cout);
        if (sweep->parsed()) {
            const RunConfig base = parse_config(sweep_config);
            return sweep_command(base, parse_param_list(sweep_param), jobs, std::cout);
        }
        if (verify->parsed()) return verify_command(verify_options, std::cout);
        if (info->parsed()) return info_command(std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace geoflow::cli
