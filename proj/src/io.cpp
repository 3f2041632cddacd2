#include "hartree/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hartree::io {

namespace fs = std::filesystem;

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

fs::path sidecar_path(const fs::path& csv_path) {
    auto p = csv_path;
    p.replace_extension(".json");
    return p;
}

namespace {

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    return out;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("file not found: " + path.string());
    }
    return in;
}

json read_json(const fs::path& path) {
    auto in = open_in(path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

// Parses a numeric CSV with the given header; returns the columns.
std::vector<std::vector<double>> read_csv(const fs::path& path, const std::string& header) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw InputError(path.string() + ": expected header '" + header + "'");
    }
    const auto ncol = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',') + 1);
    std::vector<std::vector<double>> cols(ncol);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ls, cell, ',')) {
            if (c >= ncol) {
                break;
            }
            try {
                std::size_t used = 0;
                cols[c].push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                throw InputError(path.string() + ": bad number on line " + std::to_string(row));
            }
            ++c;
        }
        if (c != ncol) {
            throw InputError(path.string() + ": wrong column count on line " + std::to_string(row));
        }
    }
    return cols;
}

GridPtr grid_from(const json& meta, const fs::path& where) {
    try {
        return build_grid(meta.at("n_points").get<int>(), meta.at("r_min").get<double>(),
                          meta.at("r_max").get<double>());
    } catch (const json::exception& e) {
        throw InputError(where.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(where.string() + ": " + e.what());
    }
}

}  // namespace

json grid_json(const RadialGrid& grid) {
    return json{{"n_points", grid.size()}, {"r_min", grid.r_min()}, {"r_max", grid.r_max()}};
}

void write_radial_function(const RadialFunction& f, const fs::path& csv_path) {
    auto out = open_out(csv_path);
    out << "r,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        out << format_number(f.grid().r(i)) << ',' << format_number(f[i]) << '\n';
    }
    write_json(grid_json(f.grid()), sidecar_path(csv_path));
}

RadialFunction read_radial_function(const fs::path& csv_path) {
    const auto side = sidecar_path(csv_path);
    const auto grid = grid_from(read_json(side), side);
    auto cols = read_csv(csv_path, "r,value");
    if (cols[1].size() != grid->size()) {
        throw InputError(csv_path.string() + ": row count does not match grid");
    }
    return RadialFunction(grid, std::move(cols[1]));
}

json state_json(const HartreeState& state, const Observables& obs) {
    json j{{"Z", state.Z},
           {"N", state.N},
           {"mu", state.mu},
           {"converged", state.converged},
           {"iterations", state.iterations},
           {"status", to_string(state.status)},
           {"K", obs.K},
           {"A", obs.A},
           {"R", obs.R},
           {"J", obs.J},
           {"E", obs.E}};
    j["grid"] = grid_json(*state.grid());
    return j;
}

json report_json(const VerificationReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back(json{{"name", c.name},
                              {"eq", c.eq},
                              {"lhs", c.lhs},
                              {"rhs", c.rhs},
                              {"slack", c.slack},
                              {"tol", c.tol},
                              {"pass", c.pass},
                              {"applicable", c.applicable}});
    }
    json j{{"checks", checks}};
    if (report.state) {
        const auto& s = *report.state;
        j["state"] = json{{"Z", s.Z},
                          {"N", s.N},
                          {"mu", s.mu},
                          {"converged", s.converged},
                          {"iterations", s.iterations},
                          {"K", s.obs.K},
                          {"A", s.obs.A},
                          {"R", s.obs.R},
                          {"J", s.obs.J},
                          {"E", s.obs.E}};
    } else {
        j["state"] = json::object();
    }
    return j;
}

json beta_json(const BetaEstimate& e) {
    return json{{"family", e.family},
                {"theta_opt", e.theta_opt},
                {"beta_upper", e.value},
                {"quad_error", e.quad_error},
                {"seed", e.seed}};
}

void write_state(const HartreeState& state, const fs::path& csv_path) {
    auto out = open_out(csv_path);
    out << "r,psi,rho,phi\n";
    for (std::size_t i = 0; i < state.psi.size(); ++i) {
        out << format_number(state.grid()->r(i)) << ',' << format_number(state.psi[i]) << ','
            << format_number(state.rho[i]) << ',' << format_number(state.phi[i]) << '\n';
    }
    write_json(state_json(state, compute_observables(state.psi, state.Z)), sidecar_path(csv_path));
}

HartreeState read_state(const fs::path& csv_path) {
    const auto side = sidecar_path(csv_path);
    const auto meta = read_json(side);
    if (!meta.contains("grid")) {
        throw InputError(side.string() + ": missing grid parameters");
    }
    const auto grid = grid_from(meta["grid"], side);
    auto cols = read_csv(csv_path, "r,psi,rho,phi");
    if (cols[0].size() != grid->size()) {
        throw InputError(csv_path.string() + ": row count does not match grid");
    }
    try {
        SolveStatus status = SolveStatus::not_converged;
        const auto s = meta.value("status", std::string("not-converged"));
        if (s == "converged") {
            status = SolveStatus::converged;
        } else if (s == "unbound") {
            status = SolveStatus::unbound;
        }
        return HartreeState{meta.at("Z").get<double>(),
                            meta.at("N").get<double>(),
                            RadialFunction(grid, std::move(cols[1])),
                            RadialFunction(grid, std::move(cols[2])),
                            RadialFunction(grid, std::move(cols[3])),
                            meta.at("mu").get<double>(),
                            meta.at("converged").get<bool>(),
                            meta.at("iterations").get<int>(),
                            status,
                            0.0,
                            {},
                            {}};
    } catch (const json::exception& e) {
        throw InputError(side.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(csv_path.string() + ": " + e.what());
    }
}

void write_json(const json& value, const fs::path& path) {
    auto out = open_out(path);
    out << value.dump(2) << '\n';
}

}  // namespace hartree::io
