/// @file mlsw_cli.cpp
/// @brief Command-line driver: run, eoc, eigen, bench and check subcommands.

#include <mlsw/analysis.hpp>
#include <mlsw/config.hpp>
#include <mlsw/io.hpp>
#include <mlsw/scenarios.hpp>
#include <mlsw/splitting.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace mlsw;

constexpr int exit_config = 1;
constexpr int exit_invariant = 2;

/// Options shared by every subcommand that builds a scenario.
struct Common {
    std::string scenario;
    std::vector<std::string> positional;  ///< optional config path followed by key=value
    std::vector<std::string> sets;
    int cells = 0;
    int ny = 0;
    int layers = 0;
    double t_final = -1.0;
    std::string scheme, exchange, subcycling, wb;

    void add_to(CLI::App* app) {
        app->add_option("--scenario", scenario, "scenario name");
        app->add_option("--cells", cells, "cells in x");
        app->add_option("--ny", ny, "cells in y (2D scenarios)");
        app->add_option("--layers", layers, "number of layers");
        app->add_option("--t-final", t_final, "final time (s)");
        app->add_option("--scheme", scheme, "split|unsplit")->check(CLI::IsMember({"split", "unsplit"}));
        app->add_option("--exchange", exchange, "explicit|implicit")
            ->check(CLI::IsMember({"explicit", "implicit"}));
        app->add_option("--subcycling", subcycling, "on|off")->check(CLI::IsMember({"on", "off"}));
        app->add_option("--wb-geostrophic", wb, "on|off")->check(CLI::IsMember({"on", "off"}));
        app->add_option("--set", sets, "override key=value (repeatable)");
        app->add_option("args", positional, "[config] [key=value ...]");
    }

    [[nodiscard]] ScenarioSpec spec() const {
        ScenarioSpec s;
        std::vector<std::string> overrides = sets;
        for (const auto& a : positional) {
            if (a.find('=') == std::string::npos)
                s = load_config(a);
            else
                overrides.push_back(a);
        }
        if (!scenario.empty()) s.name = scenario;
        if (s.name.empty()) throw ConfigError("missing scenario.name");
        if (cells) apply_override(s, "scenario.nx", std::to_string(cells));
        if (ny) apply_override(s, "scenario.ny", std::to_string(ny));
        if (layers) apply_override(s, "scenario.layers", std::to_string(layers));
        if (t_final >= 0.0) s.t_final = t_final;
        if (!scheme.empty()) apply_override(s, "scheme.kind", scheme);
        if (!exchange.empty()) apply_override(s, "scheme.exchange", exchange);
        if (!subcycling.empty()) apply_override(s, "scheme.subcycling", subcycling);
        if (!wb.empty()) apply_override(s, "scheme.wb_geostrophic", wb);
        for (const auto& o : overrides) {
            const auto eq = o.find('=');
            if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + o + "'");
            apply_override(s, o.substr(0, eq), o.substr(eq + 1));
        }
        return s;
    }
};

std::vector<double> split_reals(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    for (std::string t; std::getline(ss, t, ',');) v.push_back(parse_real(t));
    return v;
}

std::vector<int> split_ints(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    for (std::string t; std::getline(ss, t, ',');) v.push_back(parse_int(t));
    return v;
}

void print_totals(const CostTotals& c) {
    std::cout << "steps " << c.steps << "  substeps " << c.substeps << "  multilayer-fluxes "
              << c.multilayer_flux_evaluations << "  swe-fluxes " << c.swe_flux_evaluations
              << "  wall " << std::setprecision(3) << c.wall_seconds << " s\n";
}

void print_invariants(const StageResiduals& r) {
    std::cout << std::scientific << std::setprecision(3)
              << "entropy: prediction " << r.prediction_entropy << "  correction "
              << r.correction_entropy << "  swe " << r.swe_entropy << "  deviation "
              << r.deviation_entropy << '\n'
              << "max principle: prediction " << r.prediction_max_principle << "  correction "
              << r.correction_max_principle << "  adjustment " << r.adjustment_max_principle << '\n'
              << "deviation sum " << r.deviation_sum << "  exchange closure " << r.exchange_closure
              << "  min height " << r.min_height << std::defaultfloat << '\n';
}

bool invariants_ok(const StageResiduals& r) {
    return r.worst_entropy() <= 1e-10 && r.worst_max_principle() <= 1e-10 &&
           r.deviation_sum <= 1e-11 && r.min_height >= 0.0;
}

int cmd_run(const Common& c, bool strict, bool monitor) {
    ScenarioSpec spec = c.spec();
    if (monitor) spec.monitor = true;
    Scenario sc = build_scenario(spec);
    const Model& m = sc.model;
    const double mass0 = total_mass(m.grid, sc.state);

    std::ofstream index;
    int count = 0;
    if (!spec.output_dir.empty()) {
        std::filesystem::create_directories(spec.output_dir);
        index.open(spec.output_dir + "/index.csv");
        if (!index) throw std::runtime_error("cannot write into " + spec.output_dir);
        index << "file,t\n" << std::setprecision(17);
    }
    auto sink = [&](const SimState& s) {
        if (spec.output_dir.empty()) return;
        std::ostringstream name;
        name << "snap_" << std::setw(5) << std::setfill('0') << count++;
        write_snapshot(make_snapshot(m.grid, s, m.layers), spec.output_dir + "/" + name.str() + ".csv");
        index << name.str() << ".csv," << s.t << '\n';
        if (!spec.heatmap.empty())
            write_heatmap(m.grid, state_field(m.grid, s, m.layers, spec.heatmap),
                          spec.output_dir + "/" + name.str() + ".ppm");
    };
    RunOptions opt;
    opt.t_final = sc.t_final;
    opt.output_interval = spec.output_interval;
    opt.monitor = spec.monitor && m.scheme.kind == SchemeKind::split;
    const RunResult res = run(m, sc.state, opt, sink);

    std::cout << "scenario " << sc.name << "  t = " << sc.state.t << "  cells " << m.grid.nx;
    if (m.grid.dim == 2) std::cout << 'x' << m.grid.ny;
    std::cout << "  layers " << m.layers.size() << "  scheme " << to_string(m.scheme.kind) << '\n';
    print_totals(res.totals);
    std::cout << "relative mass change "
              << std::abs(total_mass(m.grid, sc.state) - mass0) / std::max(mass0, 1e-300) << '\n';
    if (sc.euler) {
        const EulerErrors e = euler_errors(sc, sc.state);
        std::cout << "L1 error h " << e.h << "  u " << e.u << '\n';
    }
    if (opt.monitor) {
        print_invariants(res.invariants);
        if (strict && !invariants_ok(res.invariants)) {
            std::cerr << "invariant check failed\n";
            return exit_invariant;
        }
    }
    return 0;
}

int cmd_eoc(const Common& c, const std::string& ladder, const std::string& layer_ladder,
            const std::string& csv) {
    const std::vector<int> cells = split_ints(ladder);
    std::vector<int> layers = layer_ladder.empty() ? std::vector<int>{} : split_ints(layer_ladder);
    if (!layers.empty() && layers.size() != cells.size())
        throw ConfigError("--layers-ladder must have as many entries as --ladder");
    std::vector<double> eh, eu;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        ScenarioSpec spec = c.spec();
        spec.nx = cells[k];
        if (!layers.empty()) spec.layers = layers[k];
        Scenario sc = build_scenario(spec);
        RunOptions opt;
        opt.t_final = sc.t_final;
        run(sc.model, sc.state, opt);
        const EulerErrors e = euler_errors(sc, sc.state);
        eh.push_back(e.h);
        eu.push_back(e.u);
    }
    const EOCTable t = eoc(cells, {"h", "u"}, {eh, eu});
    std::cout << t.to_text();
    if (!csv.empty()) {
        std::ofstream f(csv);
        if (!f) throw std::runtime_error("cannot write " + csv);
        f << t.to_csv();
    }
    return 0;
}

int cmd_eigen(const std::string& path, const std::string& weights_text, double gravity) {
    const Snapshot snap = read_snapshot(path);
    int n = 0;
    while (std::find(snap.columns.begin(), snap.columns.end(), "u" + std::to_string(n + 1)) !=
           snap.columns.end())
        ++n;
    if (n == 0) throw ConfigError("snapshot has no layer velocity columns");
    const LayerConfig layers =
        weights_text.empty() ? LayerConfig::uniform(n) : LayerConfig(split_reals(weights_text));
    if (layers.size() != n) throw ConfigError("--weights does not match the layer count");
    const std::size_t ch = snap.column("h");
    std::cout << std::setprecision(10);
    for (std::size_t r = 0; r < snap.rows.size(); ++r) {
        const auto& row = snap.rows[r];
        const double h = row[ch];
        std::vector<double> hl(static_cast<std::size_t>(n)), ul(static_cast<std::size_t>(n));
        double ubar = 0.0;
        for (int a = 0; a < n; ++a) {
            hl[static_cast<std::size_t>(a)] = layers[a] * h;
            ul[static_cast<std::size_t>(a)] = row[snap.column("u" + std::to_string(a + 1))];
            ubar += layers[a] * ul[static_cast<std::size_t>(a)];
        }
        const EigenReport bt = barotropic_eigenvalues(h, ubar, gravity, n);
        const EigenReport bc = baroclinic_eigenvalues(hl, ul);
        std::cout << "cell " << r << " barotropic";
        for (double v : bt.values) std::cout << ' ' << v;
        std::cout << " | baroclinic";
        for (double v : bc.values) std::cout << ' ' << v;
        std::cout << (bc.degenerate ? " | degenerate: " + bc.reason : " | strictly hyperbolic")
                  << '\n';
    }
    return 0;
}

int cmd_bench(const Common& c, const std::string& alphas) {
    std::cout << std::setw(7) << "alpha" << std::setw(8) << "Fr" << std::setw(14) << "split-ml"
              << std::setw(14) << "unsplit-ml" << std::setw(9) << "ratio" << std::setw(11)
              << "split-s" << std::setw(11) << "unsplit-s" << std::setw(13) << "err-split"
              << std::setw(13) << "err-unsplit" << '\n';
    for (double alpha : split_reals(alphas)) {
        ScenarioSpec spec = c.spec();
        if (spec.name != "euler") throw ConfigError("bench supports the euler scenario");
        spec.params["alpha"] = alpha;
        if (!spec.t_final) spec.t_final = 1.0;
        double fr = 0.0;
        CostTotals tot[2];
        double err[2] = {0.0, 0.0};
        for (int k = 0; k < 2; ++k) {
            spec.scheme["kind"] = k == 0 ? "split" : "unsplit";
            Scenario sc = build_scenario(spec);
            const Grid& g = sc.model.grid;
            for_each_cell(g, [&](int i, int j) {
                for (const auto& u : sc.state.u)
                    fr = std::max(fr, std::abs(u(i, j)) / std::sqrt(sc.model.scheme.gravity * sc.state.h(i, j)));
            });
            RunOptions opt;
            opt.t_final = sc.t_final;
            tot[k] = run(sc.model, sc.state, opt).totals;
            // ‖(h_err, hu_err)‖₂ with hu = Σ l_α h u_α.
            double sum = 0.0;
            for_each_cell(g, [&](int i, int j) {
                const double x = g.xc(i);
                const double href = sc.euler->h(x);
                double hu = 0.0, huref = 0.0;
                for (int a = 0; a < sc.model.layers.size(); ++a) {
                    hu += sc.model.layers[a] * sc.state.h(i, j) * sc.state.u[static_cast<std::size_t>(a)](i, j);
                    huref += sc.model.layers[a] * href * sc.euler->layer_velocity(x, a, sc.model.layers);
                }
                const double dh = sc.state.h(i, j) - href;
                sum += (dh * dh + (hu - huref) * (hu - huref)) * g.dx;
            });
            err[k] = std::sqrt(sum);
        }
        const double ratio = static_cast<double>(tot[1].multilayer_flux_evaluations) /
                             static_cast<double>(std::max<std::int64_t>(tot[0].multilayer_flux_evaluations, 1));
        std::cout << std::setw(7) << alpha << std::setw(8) << std::setprecision(3) << fr
                  << std::setw(14) << tot[0].multilayer_flux_evaluations << std::setw(14)
                  << tot[1].multilayer_flux_evaluations << std::setw(9) << ratio << std::setw(11)
                  << tot[0].wall_seconds << std::setw(11) << tot[1].wall_seconds << std::setw(13)
                  << err[0] << std::setw(13) << err[1] << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multilayer shallow-water solver with barotropic-baroclinic splitting"};
    app.require_subcommand(1);

    Common run_opts, eoc_opts, bench_opts, check_opts;
    bool strict = false, monitor = false, check_strict = false;
    auto* run_cmd = app.add_subcommand("run", "run a scenario");
    run_opts.add_to(run_cmd);
    run_cmd->add_flag("--strict", strict, "exit 2 when a runtime invariant fails");
    run_cmd->add_flag("--monitor", monitor, "evaluate invariant monitors every step");

    std::string ladder = "50,100,200,400", layer_ladder, csv;
    auto* eoc_cmd = app.add_subcommand("eoc", "convergence ladder against the analytical solution");
    eoc_opts.add_to(eoc_cmd);
    eoc_cmd->add_option("--ladder", ladder, "comma-separated cell counts");
    eoc_cmd->add_option("--layers-ladder", layer_ladder, "comma-separated layer counts");
    eoc_cmd->add_option("--csv", csv, "also write the table as CSV");

    std::string state_path, weights;
    double gravity = 9.81;
    auto* eigen_cmd = app.add_subcommand("eigen", "eigenvalues of both subsystems per cell");
    eigen_cmd->add_option("state", state_path, "snapshot CSV")->required();
    eigen_cmd->add_option("--weights", weights, "comma-separated layer fractions (default uniform)");
    eigen_cmd->add_option("--gravity", gravity, "gravitational acceleration");

    std::string alphas = "5,1,0.1";
    auto* bench_cmd = app.add_subcommand("bench", "split versus unsplit cost over Froude numbers");
    bench_opts.add_to(bench_cmd);
    bench_cmd->add_option("--alpha", alphas, "comma-separated alpha values");

    auto* check_cmd = app.add_subcommand("check", "run with invariant monitors and report residuals");
    check_opts.add_to(check_cmd);
    check_cmd->add_flag("--strict", check_strict, "exit 2 when a runtime invariant fails");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (*run_cmd) return cmd_run(run_opts, strict, monitor);
        if (*eoc_cmd) {
            if (eoc_opts.scenario.empty() && eoc_opts.positional.empty()) eoc_opts.scenario = "euler";
            return cmd_eoc(eoc_opts, ladder, layer_ladder, csv);
        }
        if (*eigen_cmd) return cmd_eigen(state_path, weights, gravity);
        if (*bench_cmd) {
            if (bench_opts.scenario.empty() && bench_opts.positional.empty()) bench_opts.scenario = "euler";
            return cmd_bench(bench_opts, alphas);
        }
        if (*check_cmd) return cmd_run(check_opts, check_strict, true);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const CflViolation& e) {
        std::cerr << "stability failure: " << e.what() << '\n';
        return exit_invariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    return 0;
}
