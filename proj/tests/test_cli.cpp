#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <filesystem>
#include <system_error>

#include "ptkitaev/parallel.hpp"
#include "ptkitaev/sweep.hpp"

using namespace ptkitaev;
using Catch::Approx;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli_bin(const std::string& args) {
    const char* bin = std::getenv("PTKITAEV_CLI_BIN");
    REQUIRE(bin != nullptr);
    const std::string capture = "cli_capture.txt";
    const std::string cmd = std::string("\"") + bin + "\" " + args + " > " + capture +
                            " 2>&1";
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream f(capture, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    r.out = ss.str();
    std::remove(capture.c_str());
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool file_exists(const std::string& path) {
    return std::ifstream(path).good();
}

void remove_tree(const std::string& a, const std::string& b = "") {
    std::error_code ec;
    std::filesystem::remove_all(a, ec);
    if (!b.empty()) std::filesystem::remove_all(b, ec);
}

double parse_line_value(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(prefix, 0) == 0) return std::stod(line.substr(prefix.size()));
    FAIL("missing line '" << prefix << "' in output:\n" << text);
    return 0.0;
}

} // namespace

TEST_CASE("single-site spectrum prints the on-site levels") {
    const CliResult r = run_cli_bin("spectrum --n 1 --mu 2 --gamma 0");
    CHECK(r.code == 0);
    CHECK(r.out.find("\n-1 0\n") != std::string::npos);
    CHECK(r.out.find("\n1 0\n") != std::string::npos);
}

TEST_CASE("edge-gain threshold of the long chain prints one hopping unit") {
    const CliResult r = run_cli_bin("threshold --n 20 --mu 0 --delta 0 --m0 1");
    CHECK(r.code == 0);
    CHECK(parse_line_value(r.out, "gamma_th/j = ") == Approx(1.0).margin(1e-4));
    CHECK(r.out.find("broken_at_zero = false") != std::string::npos);
    CHECK(r.out.find("capped = false") != std::string::npos);
}

TEST_CASE("doubling the energy scale leaves reported ratios identical") {
    const CliResult base = run_cli_bin("threshold --n 8 --mu 0 --delta 0.6 --m0 1");
    const CliResult scaled =
        run_cli_bin("threshold --n 8 --j 2 --mu 0 --delta 1.2 --m0 1");
    CHECK(base.code == 0);
    CHECK(scaled.code == 0);
    CHECK(base.out == scaled.out);
}

TEST_CASE("site map run: artifacts, sidecar, and replay byte-identity") {
    const std::string dir = "cli_map_a";
    const std::string dir2 = "cli_map_b";
    const CliResult r = run_cli_bin(
        "map-m0-delta --n 8 --mu 0 --grid 7x5 --delta-range 0:1.5 --format all --out " +
        dir);
    REQUIRE(r.code == 0);
    for (const char* name : {"m0_delta.csv", "m0_delta.json", "m0_delta.ppm",
                             "m0_delta.run.json"})
        CHECK(file_exists(dir + "/" + name));

    const PhaseGrid g = read_csv(dir + "/m0_delta.csv");
    CHECK(g.x_axis.name == "m0");
    CHECK(g.x_axis.n == 4);  // fixed by the chain length, not by --grid
    CHECK(g.y_axis.name == "delta");
    CHECK(g.y_axis.n == 5);

    const CliResult replay =
        run_cli_bin("--config " + dir + "/m0_delta.run.json --out " + dir2);
    REQUIRE(replay.code == 0);
    for (const char* name : {"m0_delta.csv", "m0_delta.json", "m0_delta.ppm"})
        CHECK(slurp(dir + "/" + name) == slurp(dir2 + "/" + name));

    const CliResult conflict =
        run_cli_bin("threshold --config " + dir + "/m0_delta.run.json");
    CHECK(conflict.code == 1);

    remove_tree(dir, dir2);
}

TEST_CASE("worker count does not change the bytes the cli writes") {
    const std::string d1 = "cli_w1";
    const std::string d4 = "cli_w4";
    const std::string common =
        "reentrant-map --n 6 --mu 0.2 --m0 2 --grid 6x6 --delta-range 0:1.5 "
        "--gamma-range 0:3 --format csv --out ";
    REQUIRE(run_cli_bin(common + d1 + " --workers 1").code == 0);
    REQUIRE(run_cli_bin(common + d4 + " --workers 4").code == 0);
    CHECK(slurp(d1 + "/reentrant.csv") == slurp(d4 + "/reentrant.csv"));
    remove_tree(d1, d4);
}

TEST_CASE("instability map artifact has the requested shape") {
    const std::string dir = "cli_reent";
    const CliResult r = run_cli_bin(
        "reentrant-map --n 8 --m0 1 --grid 9x9 --delta-range 0:2 --gamma-range 0:4 "
        "--format ppm --out " + dir);
    REQUIRE(r.code == 0);
    const std::string bytes = slurp(dir + "/reentrant.ppm");
    CHECK(bytes.rfind("P6\n9 9\n255\n", 0) == 0);
    CHECK(bytes.size() == 11 + 3 * 81);
    remove_tree(dir);
}

TEST_CASE("coalescence order at the flat-band triple point") {
    const CliResult r = run_cli_bin("ep-order --n 8 --delta 1 --gamma 1.9999 --m0 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("estimated_order = 3") != std::string::npos);
}

TEST_CASE("contour scan of the dimer emits exactly one point") {
    const std::string dir = "cli_contours";
    const CliResult r = run_cli_bin(
        "ep-contours --n 2 --grid 1x21 --delta-range 0:0 --gamma-range 0:2 "
        "--format all --out " + dir);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("points = 1") != std::string::npos);

    const std::string csv = slurp(dir + "/contours.csv");
    std::istringstream in(csv);
    std::string header, data;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, data));
    std::istringstream row(data);
    double delta = -1.0, gamma = -1.0, rowsum = -1.0;
    int lo = -1, hi = -1;
    char axis = 0;
    REQUIRE((row >> delta >> gamma >> lo >> hi >> rowsum >> axis));
    CHECK(delta == 0.0);
    CHECK(gamma == Approx(1.0).margin(1e-3));
    CHECK(lo == 0);
    CHECK(hi == 2);
    CHECK(axis == 'g');
    CHECK(file_exists(dir + "/contours.json"));
    CHECK(file_exists(dir + "/contours.run.json"));
    remove_tree(dir);
}

TEST_CASE("validation table passes end to end") {
    const CliResult r = run_cli_bin("analytic-check");
    CHECK(r.code == 0);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("usage failures exit with the parameter code") {
    CHECK(run_cli_bin("threshold --no-such-flag 3").code == 1);
    CHECK(run_cli_bin("").code == 1);
    CHECK(run_cli_bin("bogus-subcommand").code == 1);
    CHECK(run_cli_bin("threshold --n 20 --m0 15").code == 1);
    CHECK(run_cli_bin("map-m0-delta --n 8").code == 1);            // no --out
    CHECK(run_cli_bin("map-m0-delta --n 8 --grid 0x5 --out x").code == 1);
    CHECK(run_cli_bin("reentrant-map --n 8 --m0 1 --delta-range 2:1 --out x").code == 1);
    CHECK(run_cli_bin("ep-contours --n 2 --format ppm --out x").code == 1);
    CHECK(run_cli_bin("threshold --n 8 --j 0").code == 1);
    CHECK(run_cli_bin("--config does_not_exist.run.json").code == 1);
}

TEST_CASE("help is help, not an error") {
    const CliResult r = run_cli_bin("--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("analytic-check") != std::string::npos);
}

TEST_CASE("automatic worker resolution honors the environment override") {
    REQUIRE(setenv("PTKITAEV_WORKERS", "3", 1) == 0);
    CHECK(resolve_workers(0) == 3);
    REQUIRE(setenv("PTKITAEV_WORKERS", "not-a-number", 1) == 0);
    CHECK(resolve_workers(0) >= 1);
    REQUIRE(unsetenv("PTKITAEV_WORKERS") == 0);
    CHECK(resolve_workers(5) == 5);
    CHECK(resolve_workers(0) >= 1);
    CHECK_THROWS_AS(resolve_workers(-1), ParameterError);
}
