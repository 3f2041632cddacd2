#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hartree/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = hartree::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "hartree_cli_test" / name;
    fs::remove_all(dir);
    return dir.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("usage errors exit 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"bogus"}).code == 1);
    CHECK(run({"solve", "--z", "1"}).code == 1);
    CHECK(run({"solve", "--z", "1", "--n", "-3"}).code == 1);
    CHECK(run({"solve", "--z", "1", "--n", "1", "--mixing", "2"}).code == 1);
    CHECK(run({"critical", "--z", "0"}).code == 1);
    CHECK(run({"beta", "--family", "nope"}).code == 1);
    CHECK(run({"scan", "--z", "1,-2"}).code == 1);
    const auto missing = run({"verify", "missing.csv"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("not found") != std::string::npos);
}

TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("solve") != std::string::npos);
}

TEST_CASE("solve writes state, sidecar and report, and verify reproduces them") {
    const auto dir = scratch("solve");
    const auto r = run({"solve", "--z", "1", "--n", "1.0", "--out", dir});
    CHECK(r.code == 0);
    CHECK(fs::exists(fs::path(dir) / "state.csv"));
    CHECK(fs::exists(fs::path(dir) / "state.json"));
    CHECK(fs::exists(fs::path(dir) / "report.json"));

    const auto v = run({"verify", (fs::path(dir) / "state.csv").string(), "--json"});
    CHECK(v.code == 0);
    const auto written = nlohmann::json::parse(slurp(fs::path(dir) / "state.json"));
    const auto again = nlohmann::json::parse(v.out).at("state");
    for (const char* key : {"K", "A", "R", "J", "E"}) {
        const double a = written.at(key);
        const double b = again.at(key);
        CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
    }
}

TEST_CASE("solve above the critical charge exits 2") {
    const auto r = run({"solve", "--z", "1", "--n", "1.9", "--max-iterations", "100", "--out", scratch("unbound")});
    CHECK(r.code == 2);
}

TEST_CASE("json output is deterministic") {
    const auto a = run({"solve", "--z", "1", "--n", "0.7", "--json", "--out", scratch("det_a")});
    const auto b = run({"solve", "--z", "1", "--n", "0.7", "--json", "--out", scratch("det_b")});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const auto ba = run({"beta", "--family", "gaussmix", "--restarts", "2", "--json", "--out", scratch("beta_a")});
    const auto bb = run({"beta", "--family", "gaussmix", "--restarts", "2", "--json", "--out", scratch("beta_b")});
    CHECK(ba.code == 0);
    CHECK(ba.out == bb.out);
    const auto j = nlohmann::json::parse(ba.out);
    CHECK(j.at("family") == "gaussmix");
    CHECK(j.at("seed") == 42);
}

TEST_CASE("critical and scan") {
    const auto dir = scratch("critical");
    const auto c = run({"critical", "--z", "1", "--json", "--out", dir});
    REQUIRE(c.code == 0);
    const auto j = nlohmann::json::parse(c.out);
    const double ratio = j.at("N_c_over_Z");
    CHECK(ratio > 1.19);
    CHECK(ratio < 1.23);
    CHECK(fs::exists(fs::path(dir) / "critical.csv"));
    CHECK(fs::exists(fs::path(dir) / "critical_report.json"));

    const auto sdir = scratch("scan");
    const auto s = run({"scan", "--z", "2,0.5", "--out", sdir});
    REQUIRE(s.code == 0);
    std::istringstream lines(slurp(fs::path(sdir) / "scan.csv"));
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(header == "Z,N_c,N_c_over_Z,K,A,R,J,mu");
    CHECK(first.rfind("2,", 0) == 0);
    CHECK(second.rfind("0.5,", 0) == 0);
    auto column = [](const std::string& row, int k) {
        std::istringstream in(row);
        std::string cell;
        for (int i = 0; i <= k; ++i) {
            std::getline(in, cell, ',');
        }
        return std::stod(cell);
    };
    CHECK(std::abs(column(first, 2) - ratio) < 1e-3);
    CHECK(std::abs(column(second, 2) - ratio) < 1e-3);
}
