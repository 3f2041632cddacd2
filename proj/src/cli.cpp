#include "hartree/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "hartree/beta.hpp"
#include "hartree/io.hpp"
#include "hartree/scf.hpp"
#include "hartree/verify.hpp"

namespace hartree::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct RunConfig {
    double z = 0.0;
    double n = 0.0;
    std::vector<double> z_list;
    int grid_points = 4000;
    double r_min = 0.0;
    double r_max = 0.0;
    double tol_density = 1e-9;
    double mixing = 0.3;
    int max_iterations = 500;
    std::uint64_t seed = 42;
    int restarts = 20;
    std::string family = "exppoly";
    std::string state_file;
    std::string out_dir = ".";
    bool json_output = false;
    bool write_report = false;

    SolverConfig solver() const {
        SolverConfig c;
        c.n_points = grid_points;
        c.r_min = r_min;
        c.r_max = r_max;
        c.tol_density = tol_density;
        c.mixing = mixing;
        c.max_iterations = max_iterations;
        c.validate();
        return c;
    }
};

void add_grid_flags(CLI::App* app, RunConfig& cfg) {
    app->add_option("--grid-points", cfg.grid_points, "Radial grid points")->capture_default_str();
    app->add_option("--rmin", cfg.r_min, "Innermost radius (0 = 1e-6/Z)")->capture_default_str();
    app->add_option("--rmax", cfg.r_max, "Outermost radius (0 = automatic)")->capture_default_str();
}

void add_solver_flags(CLI::App* app, RunConfig& cfg) {
    add_grid_flags(app, cfg);
    app->add_option("--tol-density", cfg.tol_density, "Relative sup-norm density tolerance")
        ->capture_default_str();
    app->add_option("--mixing", cfg.mixing, "Density mixing factor in (0, 1]")->capture_default_str();
    app->add_option("--max-iterations", cfg.max_iterations)->capture_default_str();
}

void add_common_flags(CLI::App* app, RunConfig& cfg) {
    app->add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
    app->add_flag("--json", cfg.json_output, "Print machine-readable JSON on stdout");
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be positive");
    }
}

void print_warnings(const Diagnostics& d, std::ostream& err) {
    for (const auto& w : d.warnings) {
        err << "warning: " << w << '\n';
    }
}

std::string num(double x) { return io::format_number(x); }

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    require_positive(cfg.z, "--z");
    require_positive(cfg.n, "--n");
    const auto config = cfg.solver();
    auto state = scf_solve(cfg.z, cfg.n, config);
    Diagnostics diag = state.diagnostics;
    const auto obs = observables(state, &diag);
    const auto report = verify_state(state);

    const fs::path dir(cfg.out_dir);
    io::write_state(state, dir / "state.csv");
    io::write_json(io::report_json(report), dir / "report.json");
    print_warnings(diag, err);

    if (cfg.json_output) {
        out << json{{"state", io::state_json(state, obs)}, {"report", io::report_json(report)}}.dump(2)
            << '\n';
    } else {
        out << "status      " << to_string(state.status) << '\n'
            << "iterations  " << state.iterations << '\n'
            << "mu          " << num(state.mu) << '\n'
            << "K A R       " << num(obs.K) << ' ' << num(obs.A) << ' ' << num(obs.R) << '\n'
            << "E           " << num(obs.E) << '\n'
            << "wrote       " << (dir / "state.csv").string() << '\n';
    }
    const bool good = state.converged && state.status == SolveStatus::converged;
    if (!good) {
        err << "solve: " << to_string(state.status) << " at N = " << num(cfg.n) << '\n';
    }
    return good ? ok : not_converged;
}

int cmd_critical(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    require_positive(cfg.z, "--z");
    const auto config = cfg.solver();
    const auto t0 = std::chrono::steady_clock::now();
    auto result = critical_charge(cfg.z, config);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Diagnostics diag = result.state.diagnostics;
    const auto obs = observables(result.state, &diag);
    const auto report = verify_state(result.state);

    const fs::path dir(cfg.out_dir);
    io::write_state(result.state, dir / "critical.csv");
    io::write_json(io::report_json(report), dir / "critical_report.json");
    print_warnings(diag, err);

    const double ratio = result.N_c / cfg.z;
    if (cfg.json_output) {
        json j{{"Z", cfg.z},
               {"N_c", result.N_c},
               {"N_c_over_Z", ratio},
               {"r_max", result.r_max},
               {"solves", result.solves},
               {"state", io::state_json(result.state, obs)},
               {"report", io::report_json(report)}};
        out << j.dump(2) << '\n';
    } else {
        out << "N_c         " << num(result.N_c) << '\n'
            << "N_c/Z       " << num(ratio) << '\n'
            << "mu          " << num(result.state.mu) << '\n'
            << "r_max       " << num(result.r_max) << '\n'
            << "solves      " << result.solves << " (" << std::fixed << std::setprecision(1)
            << seconds << " s)\n"
            << std::defaultfloat << "checks      " << (report.ok() ? "all pass" : "FAILURES") << '\n';
    }
    return result.state.converged ? ok : not_converged;
}

int cmd_beta(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    BetaOptions opt;
    opt.restarts = cfg.restarts;
    opt.seed = cfg.seed;
    opt.n_points = cfg.grid_points;
    if (cfg.r_min > 0.0) {
        opt.r_min = cfg.r_min;
    }
    if (cfg.r_max > 0.0) {
        opt.r_max = cfg.r_max;
    }
    const auto family = make_family(cfg.family);
    Diagnostics diag;
    const auto est = minimize_beta(family, opt, &diag);
    print_warnings(diag, err);

    const auto j = io::beta_json(est);
    io::write_json(j, fs::path(cfg.out_dir) / ("beta_" + cfg.family + ".json"));
    if (cfg.json_output) {
        out << j.dump(2) << '\n';
    } else {
        out << "family      " << est.family << '\n'
            << "beta_upper  " << num(est.value) << '\n'
            << "quad_error  " << num(est.quad_error) << '\n'
            << "theta_opt  ";
        for (double t : est.theta_opt) {
            out << ' ' << num(t);
        }
        out << '\n';
    }
    return ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto state = io::read_state(cfg.state_file);
    Diagnostics diag;
    const auto obs = observables(state, &diag);
    const auto report = verify_state(state);
    print_warnings(diag, err);

    const auto rj = io::report_json(report);
    if (cfg.write_report) {
        io::write_json(rj, fs::path(cfg.out_dir) / "report.json");
    }
    if (cfg.json_output) {
        out << json{{"state", io::state_json(state, obs)}, {"report", rj}}.dump(2) << '\n';
    } else {
        out << "K A R J E   " << num(obs.K) << ' ' << num(obs.A) << ' ' << num(obs.R) << ' '
            << num(obs.J) << ' ' << num(obs.E) << '\n';
        for (const auto& c : report.checks) {
            out << std::left << std::setw(28) << c.name << std::setw(5) << c.eq
                << (c.applicable ? (c.pass ? "pass" : "FAIL") : "n/a ") << "  slack " << num(c.slack)
                << '\n';
        }
    }
    return report.ok() ? ok : not_converged;
}

struct ScanRow {
    double z;
    double n_c;
    Observables obs;
    double mu;
    bool converged;
};

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.z_list.empty()) {
        throw std::invalid_argument("--z needs at least one value");
    }
    for (double z : cfg.z_list) {
        require_positive(z, "--z");
    }
    const auto config = cfg.solver();
    std::vector<std::future<ScanRow>> jobs;
    for (double z : cfg.z_list) {
        jobs.push_back(std::async(std::launch::async, [z, config] {
            auto r = critical_charge(z, config);
            const auto obs = compute_observables(r.state.psi, z);
            return ScanRow{z, r.N_c, obs, r.state.mu, r.state.converged};
        }));
    }

    std::ostringstream csv;
    csv << "Z,N_c,N_c_over_Z,K,A,R,J,mu\n";
    bool all_converged = true;
    json rows = json::array();
    for (auto& job : jobs) {
        const auto row = job.get();
        all_converged = all_converged && row.converged;
        csv << num(row.z) << ',' << num(row.n_c) << ',' << num(row.n_c / row.z) << ','
            << num(row.obs.K) << ',' << num(row.obs.A) << ',' << num(row.obs.R) << ','
            << num(row.obs.J) << ',' << num(row.mu) << '\n';
        rows.push_back(json{{"Z", row.z},
                            {"N_c", row.n_c},
                            {"N_c_over_Z", row.n_c / row.z},
                            {"K", row.obs.K},
                            {"A", row.obs.A},
                            {"R", row.obs.R},
                            {"J", row.obs.J},
                            {"mu", row.mu}});
    }
    const fs::path path = fs::path(cfg.out_dir) / "scan.csv";
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream(path) << csv.str();
    if (cfg.json_output) {
        out << rows.dump(2) << '\n';
    } else {
        out << csv.str();
    }
    if (!all_converged) {
        err << "scan: some critical states did not converge\n";
    }
    return all_converged ? ok : not_converged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Radial Hartree atom: solver, critical charge and bound verification", "hartree"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "Solve the Hartree equation at fixed mass N");
    solve->add_option("--z", cfg.z, "Nuclear charge")->required();
    solve->add_option("--n", cfg.n, "Electron mass")->required();
    add_solver_flags(solve, cfg);
    add_common_flags(solve, cfg);

    auto* critical = app.add_subcommand("critical", "Locate the critical charge N_c(Z)");
    critical->add_option("--z", cfg.z, "Nuclear charge")->required();
    add_solver_flags(critical, cfg);
    add_common_flags(critical, cfg);

    auto* beta = app.add_subcommand("beta", "Minimize the beta ratio over a trial family");
    beta->add_option("--family", cfg.family, "Trial family")
        ->check(CLI::IsMember(family_ids()))
        ->capture_default_str();
    beta->add_option("--restarts", cfg.restarts, "Random restarts")->capture_default_str();
    beta->add_option("--seed", cfg.seed, "Restart seed")->capture_default_str();
    add_grid_flags(beta, cfg);
    add_common_flags(beta, cfg);

    auto* verify = app.add_subcommand("verify", "Re-read a state file and certify it");
    verify->add_option("state", cfg.state_file, "State CSV written by solve or critical")->required();
    add_common_flags(verify, cfg);

    auto* scan = app.add_subcommand("scan", "Critical charge over a list of Z values");
    scan->add_option("--z", cfg.z_list, "Comma-separated nuclear charges")
        ->required()
        ->delimiter(',');
    add_solver_flags(scan, cfg);
    add_common_flags(scan, cfg);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    cfg.write_report = verify->count("--out") > 0;
    try {
        if (solve->parsed()) {
            return cmd_solve(cfg, out, err);
        }
        if (critical->parsed()) {
            return cmd_critical(cfg, out, err);
        }
        if (beta->parsed()) {
            return cmd_beta(cfg, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, out, err);
        }
        return cmd_scan(cfg, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const io::InputError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const BracketFailure& e) {
        err << "error: " << e.what() << '\n';
        return not_converged;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return not_converged;
    }
}

}  // namespace hartree::cli
