#include "netsync/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

namespace netsync::cli {

namespace {

Netlist load_input(const RunConfig& cfg) {
    if (cfg.n) {
        if (!cfg.input.empty()) {
            throw InvalidParams("--input and --n are mutually exclusive");
        }
        return star_with_load(*cfg.n, SeriesRlc{cfg.r_net, cfg.l_net, std::nullopt},
                              SeriesRlc{cfg.r_load, cfg.l_load, std::nullopt});
    }
    if (cfg.input.empty()) {
        throw InvalidParams("--input is required");
    }
    return load_netlist(cfg.input);
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw InvalidParams("cannot write '" + path + "'");
    }
    f << text;
}

OrderedJson boundary_names(const Netlist& net) {
    return std::vector<std::string>(net.nodes.begin(), net.nodes.begin() + static_cast<long>(net.n_boundary));
}

}  // namespace

int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
    const Tolerances tol = Tolerances::from_environment();
    const Netlist net = load_input(cfg);
    OrderedJson doc;
    doc["boundary"] = boundary_names(net);
    if (cfg.omega) {
        const Complex s{0.0, *cfg.omega};
        const KronResult k = kron_reduce(eval_admittance(assemble_admittance(net), s, tol), net.n_boundary, tol);
        doc["omega"] = *cfg.omega;
        const OrderedJson m = complex_matrix_to_json(k.y);
        for (const auto& [key, value] : m.items()) doc[key] = value;
    } else if (!net.has_shunts() && has_uniform_lines(net, tol)) {
        const UniformReduction u = kron_reduce_uniform(net, tol);
        doc["form"] = "uniform";
        doc["y_series"] = rf_to_json(u.y_series);
        doc["laplacian"] = real_matrix_to_json(u.laplacian);
    } else {
        const SymbolicAdmittance y = kron_reduce_symbolic(assemble_admittance(net), net.n_boundary);
        doc["form"] = "symbolic";
        doc["dim"] = y.dim();
        OrderedJson rows = OrderedJson::array();
        for (std::size_t i = 0; i < y.dim(); ++i) {
            OrderedJson row = OrderedJson::array();
            for (std::size_t j = 0; j < y.dim(); ++j) row.push_back(rf_to_json(cancel_common_roots(y(i, j))));
            rows.push_back(row);
        }
        doc["entries"] = rows;
    }
    write_text(cfg.output, dump_json(doc) + "\n", out);
    return 0;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const Tolerances tol = Tolerances::from_environment();
    const Netlist net = load_input(cfg);
    const NetworkClass cls = classify(net, kDefaultProbeOmegas, tol);
    OrderedJson doc = class_to_json(cls);
    doc["boundary"] = boundary_names(net);
    write_text(cfg.output, dump_json(doc) + "\n", out);
    return 0;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
    const Tolerances tol = Tolerances::from_environment();
    const Netlist net = load_input(cfg);
    const NetworkClass cls = classify(net, kDefaultProbeOmegas, tol);
    const OscillatorModel osc = make_oscillator(net.oscillator);
    const GainReport report = certify(cls, osc, cfg.sweep, tol);
    write_text(cfg.output, dump_json(report_to_json(report)) + "\n", out);
    return report.passed() ? 0 : 1;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    const Tolerances tol = Tolerances::from_environment();
    const Netlist net = load_input(cfg);
    const NetworkClass cls = classify(net, kDefaultProbeOmegas, tol);
    const OscillatorModel osc = make_oscillator(net.oscillator);
    const CoupledSystem sys = make_coupled_system(cls, osc, tol);
    const Trajectory traj = integrate(sys, default_initial_state(sys, cfg.ic_base, cfg.ic_spread), cfg.integrate);
    const SyncSummary summary = summarize(traj, cfg.integrate);

    OrderedJson doc = summary_to_json(summary);
    OrderedJson meta;
    meta["kind"] = std::string(kind_name(cls.kind));
    meta["n"] = cls.n;
    meta["coupling_states"] = sys.coupling.state_count;
    meta["ic_base"] = cfg.ic_base;
    meta["ic_spread"] = cfg.ic_spread;
    meta["stride"] = cfg.integrate.stride;
    if (cfg.integrate.method == Method::rk4) {
        meta["dt"] = cfg.integrate.dt;
    } else {
        meta["rtol"] = cfg.integrate.rtol;
        meta["atol"] = cfg.integrate.atol;
    }
    if (cfg.n) {
        meta["z_net"] = {{"r", cfg.r_net}, {"l", cfg.l_net}};
        meta["z_load"] = {{"r", cfg.r_load}, {"l", cfg.l_load}};
    }
    doc["metadata"] = meta;
    const std::string summary_text = dump_json(doc) + "\n";

    if (!cfg.output.empty()) {
        write_text(cfg.output, trajectory_csv(traj), out);
        write_text(cfg.summary.empty() ? cfg.output + ".summary.json" : cfg.summary, summary_text, out);
        out << summary_text;
    } else {
        if (!cfg.summary.empty()) write_text(cfg.summary, summary_text, out);
        out << summary_text;
    }
    return 0;
}

int cmd_surface(const RunConfig& cfg, std::ostream& out) {
    const Tolerances tol = Tolerances::from_environment();
    OscillatorConfig osc_cfg;
    if (!cfg.input.empty()) {
        osc_cfg = load_netlist(cfg.input).oscillator;
    }
    const OscillatorModel osc = make_oscillator(osc_cfg);
    if (cfg.bode_r || cfg.bode_l) {
        if (!cfg.bode_r || !cfg.bode_l) {
            throw InvalidParams("--bode-r and --bode-l must be given together");
        }
        write_text(cfg.output, bode_csv(*cfg.bode_r, *cfg.bode_l, osc, cfg.sweep.grid(), tol), out);
        return 0;
    }
    if (!(cfg.r_min > 0.0) || !(cfg.r_max >= cfg.r_min) || !(cfg.l_min > 0.0) || !(cfg.l_max >= cfg.l_min)) {
        throw InvalidParams("surface bounds need 0 < min <= max");
    }
    if (cfg.grid == 0) {
        throw InvalidParams("--grid must be positive");
    }
    const auto r = log_grid(cfg.r_min, cfg.r_max, cfg.grid);
    const auto l = log_grid(cfg.l_min, cfg.l_max, cfg.grid);
    write_text(cfg.output, surface_csv(xi_surface(r, l, osc, cfg.sweep, tol)), out);
    return 0;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "reduce") return cmd_reduce(cfg, out);
        if (cfg.command == "classify") return cmd_classify(cfg, out);
        if (cfg.command == "certify") return cmd_certify(cfg, out);
        if (cfg.command == "simulate") return cmd_simulate(cfg, out);
        if (cfg.command == "surface") return cmd_surface(cfg, out);
        throw InvalidParams("unknown command '" + cfg.command + "'");
    } catch (const std::exception& e) {
        err << "netsync: " << e.what() << '\n';
    }
    return 2;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Synchronization certificates for oscillators coupled through passive networks", "netsync"};
    app.fallthrough();
    app.require_subcommand(1);
    RunConfig cfg;

    app.add_option("--input", cfg.input, "netlist JSON file");
    app.add_option("--output", cfg.output, "output file (stdout when omitted)");
    app.add_option("--omega-min", cfg.sweep.omega_min, "sweep lower frequency [rad/s]");
    app.add_option("--omega-max", cfg.sweep.omega_max, "sweep upper frequency [rad/s]");
    app.add_option("--points", cfg.sweep.points, "sweep points");
    app.add_option("--t-end", cfg.integrate.t_end, "simulation horizon [s]");
    std::string method = "rk45";
    app.add_option("--method", method, "rk45 or rk4")->check(CLI::IsMember({"rk45", "rk4"}));
    app.add_option("--dt", cfg.integrate.dt, "rk4 step [s]");
    app.add_option("--stride", cfg.integrate.stride, "output interval [s]");
    app.add_option("--rtol", cfg.integrate.rtol, "rk45 relative tolerance");
    app.add_option("--atol", cfg.integrate.atol, "rk45 absolute tolerance");
    app.add_option("--ic-base", cfg.ic_base, "v_a of the first circuit");
    app.add_option("--ic-spread", cfg.ic_spread, "v_a increment per circuit");
    app.add_option("--summary", cfg.summary, "simulate: summary JSON path");
    app.add_option("--r-min", cfg.r_min);
    app.add_option("--r-max", cfg.r_max);
    app.add_option("--l-min", cfg.l_min);
    app.add_option("--l-max", cfg.l_max);
    app.add_option("--grid", cfg.grid, "surface points per axis");
    double bode_r = 0.0, bode_l = 0.0;
    auto* opt_bode_r = app.add_option("--bode-r", bode_r, "surface: |F| vs omega at this R_net");
    auto* opt_bode_l = app.add_option("--bode-l", bode_l, "surface: |F| vs omega at this L_net");
    std::size_t n = 0;
    auto* opt_n = app.add_option("--n", n, "star-with-load shortcut with N boundary nodes");
    app.add_option("--r-net", cfg.r_net, "star spoke resistance");
    app.add_option("--l-net", cfg.l_net, "star spoke inductance");
    app.add_option("--r-load", cfg.r_load, "star load resistance");
    app.add_option("--l-load", cfg.l_load, "star load inductance");
    double omega = 0.0;
    auto* opt_omega = app.add_option("--omega", omega, "reduce: evaluate at s = j omega");

    for (const char* name : {"reduce", "classify", "certify", "simulate", "surface"}) {
        app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.integrate.method = parse_method(method);
    if (*opt_bode_r) cfg.bode_r = bode_r;
    if (*opt_bode_l) cfg.bode_l = bode_l;
    if (*opt_n) cfg.n = n;
    if (*opt_omega) cfg.omega = omega;
    return run(cfg, std::cout, std::cerr);
}

}  // namespace netsync::cli
