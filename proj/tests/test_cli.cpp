#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nearcurve/curve.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run(const std::string& args) {
    const std::string out_path = "cli_stdout.txt";
    const std::string err_path = "cli_stderr.txt";
    const std::string cmd =
        std::string(NEARCURVE_CLI_PATH) + " " + args + " >" + out_path + " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

} // namespace

TEST_CASE("constants subcommand") {
    RunResult r = run("constants");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("zeta3 = ") != std::string::npos);
    CHECK(r.out.find("two_thirds_over_zeta3") != std::string::npos);
    CHECK(r.out.find("inv_zeta3") != std::string::npos);
    CHECK(r.out.find("lower_huang") != std::string::npos);
    CHECK(r.out.find("1.2020569") != std::string::npos);
}

TEST_CASE("count subcommand matches hand enumeration") {
    RunResult r = run("count --curve parabola --Q 4 --delta 2/5");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "5\n");

    r = run("count --curve parabola --Q 4 --delta 2/5 --variant hat");
    CHECK(r.out == "7\n");

    r = run("count --curve parabola --Q 1 --delta 1/4");
    CHECK(r.out == "2\n");
}

TEST_CASE("count --emit writes the point CSV") {
    RunResult r = run("count --curve parabola --Q 4 --delta 2/5 --emit cli_points.csv");
    CHECK(r.exit_code == 0);
    std::ifstream in("cli_points.csv");
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,b,q,variant");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 5);
}

TEST_CASE("byte-identical output across worker counts") {
    const std::string base = "sweep --curve circle --q-grid 20,40,80 --format csv";
    RunResult one = run(base + " --workers 1");
    RunResult four = run(base + " --workers 4");
    CHECK(one.exit_code == 0);
    CHECK(four.exit_code == 0);
    CHECK(one.out == four.out);
    CHECK_FALSE(one.out.empty());
}

TEST_CASE("sweep CSV header and JSON output") {
    RunResult r = run("sweep --curve parabola --q-grid 20,50 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("Q,delta,variant,count_lo,count_hi,ratio_lo,ratio_hi,verdict\n", 0) == 0);

    r = run("sweep --curve parabola --q-grid 20,50 --format json --out cli_sweep.json");
    CHECK(r.exit_code == 0);
    std::ifstream in("cli_sweep.json");
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["rows"].size() == 2);
    CHECK(j["target"] == "two_thirds_over_zeta3");
}

TEST_CASE("sweep rejects an inadmissible delta with a JSON diagnostic") {
    RunResult r = run("sweep --curve parabola --q-grid 100 --delta fixed:1/20");
    CHECK(r.exit_code == 1);
    CHECK(r.out.empty());
    nlohmann::json j = nlohmann::json::parse(r.err);
    CHECK(j["error"] == "HypothesisViolation");
    REQUIRE(j.contains("details"));
    CHECK(j["details"].size() == 1);
}

TEST_CASE("audit subcommand emits passing reports for both sides") {
    RunResult r = run("audit --curve parabola --Q 30 --delta 1/4 --alpha 3/4 --t 3");
    CHECK(r.exit_code == 0);
    std::size_t passes = 0;
    for (std::size_t pos = r.out.find("\"passed\": true"); pos != std::string::npos;
         pos = r.out.find("\"passed\": true", pos + 1))
        ++passes;
    CHECK(passes == 2);
    CHECK(r.out.find("\"side\": \"lower\"") != std::string::npos);
    CHECK(r.out.find("\"side\": \"upper\"") != std::string::npos);
}

TEST_CASE("validate: builtin passes, a false declaration fails") {
    RunResult r = run("validate --curve parabola");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);

    // declare c1 = 3 on the parabola, where |f''| == 2 everywhere
    nearcurve::CurveSpec bad = nearcurve::builtin_curve("parabola");
    bad.c1 = 3;
    bad.c2 = 3;
    std::ofstream out("cli_bad_curve.json");
    nearcurve::save_curve_json(bad, out);
    out.close();
    r = run("validate --curve cli_bad_curve.json");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
    nlohmann::json j = nlohmann::json::parse(r.err);
    CHECK(j["error"] == "ValidationError");
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run("count --curve parabola --Q 4 --delta 0.25").exit_code == 2); // floats rejected
    CHECK(run("count --curve parabola").exit_code == 2);                    // missing --Q
    CHECK(run("frobnicate").exit_code == 2);                                // unknown subcommand
    CHECK(run("count --curve nosuch.json --Q 4").exit_code == 2);
}
