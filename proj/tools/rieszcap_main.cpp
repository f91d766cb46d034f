// Command-line front end: capacity / curve / equilibrium / validate / figure1.
//
// Exit codes: 0 success, 1 failed validation, 2 argument errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rieszcap/analysis.hpp"
#include "rieszcap/set_io.hpp"

namespace {

using namespace rieszcap;
using ordered_json = nlohmann::ordered_json;

struct CommonOpts {
    std::string set_arg;
    std::vector<int> ladder{256};
    std::string scheme = "native";
    std::string diag;  // "", "exclude", or "self-cell[:sigma]"
    double tol = 1e-8;
    int max_iters = 5000;
    std::string out;
    std::string format;
    int verbosity = 0;
};

SetSpec load_set(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return set_spec_from_json(arg);
    return set_spec_from_file(arg);
}

Scheme parse_scheme(const std::string& s) {
    if (s == "grid") return Scheme::grid;
    if (s == "boundary") return Scheme::boundary;
    if (s == "native") return Scheme::native;
    throw CLI::ValidationError("--scheme", "expected grid|boundary|native");
}

std::optional<DiagonalMode> parse_diag(const std::string& s) {
    if (s.empty()) return std::nullopt;  // regime default
    if (s == "exclude") return DiagonalMode::exclude();
    if (s == "self-cell") return DiagonalMode::self_cell();
    const std::string prefix = "self-cell:";
    if (s.rfind(prefix, 0) == 0) {
        const double sigma = std::stod(s.substr(prefix.size()));
        return DiagonalMode::self_cell(sigma);
    }
    throw CLI::ValidationError("--diag", "expected exclude|self-cell[:sigma]");
}

SolverConfig solver_config(const CommonOpts& o) {
    SolverConfig cfg;
    cfg.max_iters = o.max_iters;
    cfg.gap_tol = o.tol;
    cfg.diag = parse_diag(o.diag);
    return cfg;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        if (payload.empty() || payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << payload;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_set) {
    if (with_set)
        cmd->add_option("--set", o.set_arg,
                        "set file path or inline JSON spec")
            ->required();
    cmd->add_option("--ladder", o.ladder,
                    "refinement ladder of node counts (comma list)")
        ->delimiter(',');
    cmd->add_option("--scheme", o.scheme, "grid|boundary|native");
    cmd->add_option("--diag", o.diag,
                    "exclude|self-cell[:sigma] (default: regime-dependent)");
    cmd->add_option("--tol", o.tol, "solver gap tolerance (relative)");
    cmd->add_option("--max-iters", o.max_iters, "solver iteration budget");
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "csv|json");
    cmd->add_flag("-v,--verbose", o.verbosity, "verbose progress on stderr");
}

std::string check_format(const std::string& fmt, const std::string& dflt) {
    const std::string f = fmt.empty() ? dflt : fmt;
    if (f != "csv" && f != "json")
        throw CLI::ValidationError("--format", "expected csv|json");
    return f;
}

int run_capacity(const CommonOpts& o, double p) {
    const SetSpec spec = load_set(o.set_arg);
    const auto res = estimate_capacity(spec, p, o.ladder, parse_scheme(o.scheme),
                                       solver_config(o));
    if (o.verbosity > 0) {
        for (const auto& l : res.levels)
            std::cerr << "N=" << l.nodes << " capacity=" << l.capacity
                      << " gap=" << l.gap << " iters=" << l.iterations << '\n';
    }
    const std::string fmt = check_format(o.format, "json");
    if (fmt == "json") {
        emit(to_json_string(res), o.out);
    } else {
        std::ostringstream os;
        os << "p,capacity,capacity_finest,extrapolated\n"
           << format_double(res.p) << ',' << format_double(res.capacity) << ','
           << format_double(res.capacity_finest) << ','
           << (res.extrapolated ? 1 : 0) << '\n';
        emit(os.str(), o.out);
    }
    return 0;
}

int run_curve(const CommonOpts& o, const std::vector<double>& p_grid) {
    const SetSpec spec = load_set(o.set_arg);
    const auto table = capacity_curve(spec, p_grid, o.ladder,
                                      parse_scheme(o.scheme), solver_config(o));
    if (o.verbosity > 0)
        std::cerr << "curve: " << table.rows.size() << " rows for "
                  << table.set_desc << '\n';
    const std::string fmt = check_format(o.format, "csv");
    emit(fmt == "csv" ? curve_to_csv(table) : curve_to_json(table), o.out);
    return 0;
}

int run_equilibrium(const CommonOpts& o, double p) {
    const SetSpec spec = load_set(o.set_arg);
    auto [dspec, dscheme] =
        resolve_discretization(spec, p, parse_scheme(o.scheme));
    const NodeCloud cloud = discretize(dspec, o.ladder.back(), dscheme);
    const auto sol = solve_equilibrium(RieszExponent(p), cloud, solver_config(o));

    std::size_t support = 0;
    double wmin = 1.0, wmax = 0.0;
    for (std::size_t i = 0; i < sol.weights.size(); ++i) {
        const double w = sol.weights[i];
        if (w > 1e-6) ++support;
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
    }

    ordered_json j;
    j["set"] = spec.describe();
    j["p"] = p;
    j["N"] = cloud.size();
    j["energy"] = sol.energy.is_finite() ? ordered_json(sol.energy.value())
                                         : ordered_json("inf");
    j["capacity"] = capacity_from_energy(RieszExponent(p), sol.energy);
    j["gap"] = sol.gap;
    j["iterations"] = sol.iterations;
    j["converged"] = sol.converged;
    j["nonunique_regime"] = sol.nonunique_regime;
    j["support"] = {{"count", support}, {"w_min", wmin}, {"w_max", wmax}};
    // headline fidelity number: L1 distance between solved cell masses and the
    // closed-form equilibrium density integrated per cell, when one exists
    if (const auto masses = equilibrium_cell_masses(spec, cloud, p)) {
        double l1 = 0.0;
        for (std::size_t i = 0; i < cloud.size(); ++i)
            l1 += std::abs(sol.weights[i] - (*masses)[i]);
        j["density_l1"] = l1;
    }
    j["weights"] = sol.weights.values();

    const std::string fmt = check_format(o.format, "json");
    if (fmt == "json") {
        emit(j.dump(2), o.out);
    } else {
        std::ostringstream os;
        os << "i";
        for (int k = 0; k < cloud.dim; ++k) os << ",x" << k;
        os << ",weight\n";
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            os << i;
            for (int k = 0; k < cloud.dim; ++k)
                os << ',' << format_double(cloud.node(i)[k]);
            os << ',' << format_double(sol.weights[i]) << '\n';
        }
        emit(os.str(), o.out);
    }
    return 0;
}

int run_validate(const CommonOpts& o) {
    const auto rep = run_validation();
    const std::string fmt = check_format(o.format, "json");
    if (fmt == "json" && !o.out.empty()) {
        emit(to_json_string(rep), o.out);
    }
    for (const auto& c : rep.checks) {
        std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << '\n';
    }
    std::cout << (rep.all_passed ? "validate: all checks passed\n"
                                 : "validate: FAILURES\n");
    return rep.all_passed ? 0 : 1;
}

int run_figure1(const CommonOpts& o, double p_lo, double p_hi, double step) {
    // four-curve ball capacity table over a p-grid for n in {1,2,3,4};
    // capacities are 0 for p >= n
    std::ostringstream os;
    os << "p,cap_n1,cap_n2,cap_n3,cap_n4\n";
    const long steps = std::lround((p_hi - p_lo) / step);
    for (long k = 0; k <= steps; ++k) {
        const double p = p_lo + k * step;
        os << format_double(p);
        for (int n = 1; n <= 4; ++n) {
            double cap = 0.0;
            if (p < n) cap = n == 1 ? interval_capacity(p) : ball_capacity(n, p);
            os << ',' << format_double(cap);
        }
        os << '\n';
    }
    emit(os.str(), o.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riesz capacities, energies and equilibrium measures"};
    app.require_subcommand(1);

    CommonOpts o;
    double p = 1.0;
    std::vector<double> p_grid;
    double fig_lo = -6.0, fig_hi = 3.98, fig_step = 0.02;

    auto* c_cap = app.add_subcommand("capacity", "estimate the capacity at one exponent");
    add_common(c_cap, o, true);
    c_cap->add_option("--p", p, "kernel exponent")->required();

    auto* c_curve = app.add_subcommand("curve", "capacity table over a p grid");
    add_common(c_curve, o, true);
    c_curve->add_option("--p-grid", p_grid, "strictly increasing exponents (comma list)")
        ->delimiter(',')
        ->required();

    auto* c_eqm = app.add_subcommand(
        "equilibrium", "solved weights, support summary and density comparison");
    add_common(c_eqm, o, true);
    c_eqm->add_option("--p", p, "kernel exponent")->required();

    auto* c_val = app.add_subcommand("validate", "closed-form identity suite");
    add_common(c_val, o, false);

    auto* c_fig = app.add_subcommand(
        "figure1", "closed-form ball capacity curves for n = 1..4");
    add_common(c_fig, o, false);
    c_fig->add_option("--p-lo", fig_lo, "grid start");
    c_fig->add_option("--p-hi", fig_hi, "grid end");
    c_fig->add_option("--p-step", fig_step, "grid step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_cap->parsed()) return run_capacity(o, p);
        if (c_curve->parsed()) return run_curve(o, p_grid);
        if (c_eqm->parsed()) return run_equilibrium(o, p);
        if (c_val->parsed()) return run_validate(o);
        if (c_fig->parsed()) return run_figure1(o, fig_lo, fig_hi, fig_step);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
