#include "doctest.h"

#include <cmath>
#include <numbers>
#include <filesystem>
#include <fstream>

#include "hartree/io.hpp"

using namespace hartree;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "hartree_io_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("number formatting uses 17 significant digits") {
    CHECK(io::format_number(0.1) == "0.10000000000000001");
    CHECK(io::format_number(1.0) == "1");
    CHECK(std::stod(io::format_number(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("radial function round trip") {
    auto g = build_grid(300, 1e-5, 40.0);
    const auto f = RadialFunction::sample(g, [](double r) { return std::exp(-r) * std::sin(3.0 * r); });
    const auto path = scratch("f.csv");
    io::write_radial_function(f, path);
    CHECK(slurp(path).rfind("r,value\n", 0) == 0);
    const auto meta = nlohmann::json::parse(slurp(io::sidecar_path(path)));
    CHECK(meta.at("n_points") == 300);
    CHECK(meta.at("r_min") == 1e-5);
    CHECK(meta.at("r_max") == 40.0);

    const auto back = io::read_radial_function(path);
    REQUIRE(back.size() == f.size());
    CHECK(back.grid().same_as(f.grid()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(back[i] == f[i]);
        CHECK(back.grid().r(i) == g->r(i));
    }
}

TEST_CASE("state round trip reproduces observables") {
    const auto s = scf_solve(1.0, 0.9, SolverConfig{});
    const auto path = scratch("state.csv");
    io::write_state(s, path);
    CHECK(slurp(path).rfind("r,psi,rho,phi\n", 0) == 0);
    const auto meta = nlohmann::json::parse(slurp(io::sidecar_path(path)));
    for (const char* key : {"Z", "N", "mu", "converged", "iterations", "K", "A", "R", "J", "E"}) {
        CHECK(meta.contains(key));
    }

    const auto back = io::read_state(path);
    CHECK(back.Z == s.Z);
    CHECK(back.N == s.N);
    CHECK(back.mu == s.mu);
    CHECK(back.converged == s.converged);
    CHECK(back.status == s.status);
    CHECK(back.iterations == s.iterations);
    const auto a = compute_observables(s.psi, s.Z);
    const auto b = compute_observables(back.psi, back.Z);
    CHECK(std::abs(a.K - b.K) <= 1e-10 * a.K);
    CHECK(std::abs(a.A - b.A) <= 1e-10 * a.A);
    CHECK(std::abs(a.R - b.R) <= 1e-10 * a.R);
    CHECK(std::abs(a.J - b.J) <= 1e-10 * a.J);
    CHECK(std::abs(a.E - b.E) <= 1e-10 * std::abs(a.E));
}

TEST_CASE("report JSON schema") {
    VerificationReport r;
    r.checks.push_back(identity_check("x", "7", 1.0, 1.0, 1e-9));
    r.checks.push_back(upper_bound_check("y", "11a", 2.0, 1.0, 0.0, false));
    const auto j = io::report_json(r);
    REQUIRE(j.at("checks").size() == 2);
    const auto& c = j["checks"][1];
    for (const char* key : {"name", "eq", "lhs", "rhs", "slack", "tol", "pass", "applicable"}) {
        CHECK(c.contains(key));
    }
    CHECK(c["slack"] == -1.0);
    CHECK(c["pass"] == false);
    CHECK(c["applicable"] == false);
    CHECK(j.at("state").is_object());
}

TEST_CASE("beta JSON fields") {
    BetaEstimate e;
    e.family = "exp";
    e.value = 0.875;
    e.theta_opt = {1.0};
    e.seed = 42;
    const auto j = io::beta_json(e);
    for (const char* key : {"family", "theta_opt", "beta_upper", "quad_error", "seed"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["beta_upper"] == 0.875);
}

TEST_CASE("reading malformed or missing files fails cleanly") {
    CHECK_THROWS_AS(io::read_state(scratch("missing.csv")), io::InputError);

    const auto bad = scratch("bad.csv");
    std::ofstream(bad) << "r,value\n1,2\n";
    std::ofstream(io::sidecar_path(bad)) << "{\"n_points\": 300, \"r_min\": 1e-5, \"r_max\": 40}";
    CHECK_THROWS_AS(io::read_radial_function(bad), io::InputError);

    const auto header = scratch("header.csv");
    std::ofstream(header) << "x,y\n";
    std::ofstream(io::sidecar_path(header)) << "{\"n_points\": 300, \"r_min\": 1e-5, \"r_max\": 40}";
    CHECK_THROWS_AS(io::read_radial_function(header), io::InputError);

    const auto junk = scratch("junk.csv");
    std::ofstream(junk) << "r,value\n";
    std::ofstream(io::sidecar_path(junk)) << "{not json";
    CHECK_THROWS_AS(io::read_radial_function(junk), io::InputError);
}
