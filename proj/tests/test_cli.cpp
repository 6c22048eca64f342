#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "hessmap/run.hpp"

using namespace hessmap;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path d = fs::path("cli_test_out") / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(HESSMAP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("parse_config: defaults") {
    RunConfig cfg = parse_config(R"({"curve":{"kind":"cross","a":1,"b":1},"n":9})");
    CHECK(cfg.curve.kind == CurveKind::cross);
    CHECK(cfg.n == 9);
    CHECK(cfg.effective_nodes_per_segment() == 128);  // max(128, 8*9)
    CHECK(cfg.precision_mode == "double");
    CHECK(cfg.samples == 4096);
    CHECK_FALSE(cfg.reference.has_value());
    CHECK(cfg.outputs.empty());

    RunConfig big = parse_config(R"({"curve":{"kind":"circle"},"n":40})");
    CHECK(big.effective_nodes_per_segment() == 320);
}

TEST_CASE("parse_config: validation errors carry field paths") {
    auto err = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const config_error& e) {
            return std::string(e.what());
        }
        return std::string("(no error)");
    };
    CHECK_THAT(err(R"({"curve":{"kind":"interval","a":1,"b":-1},"n":9})"),
               Catch::Matchers::ContainsSubstring("interval requires a < b"));
    CHECK_THAT(err(R"({"curve":{"kind":"blob"},"n":4})"),
               Catch::Matchers::ContainsSubstring("curve.kind"));
    CHECK_THAT(err(R"({"curve":{"kind":"circle"},"n":1})"),
               Catch::Matchers::ContainsSubstring("n"));
    CHECK_THAT(err(R"({"n":4})"), Catch::Matchers::ContainsSubstring("curve"));
    CHECK_THAT(err(R"(not json)"), Catch::Matchers::ContainsSubstring("not valid JSON"));
    CHECK_THAT(err(R"({"curve":{"kind":"circle"},"n":4,"precision":{"mode":"extended","digits":10}})"),
               Catch::Matchers::ContainsSubstring("precision.digits"));
    CHECK_THAT(err(R"({"curve":{"kind":"circle"},"n":4,
        "outputs":[{"kind":"capacity","path":"x.csv"},{"kind":"moments","path":"x.csv"}]})"),
               Catch::Matchers::ContainsSubstring("conflicting output path"));
    CHECK_THAT(err(R"({"curve":{"kind":"circle"},"n":4,
        "outputs":[{"kind":"capacity","path":"x.csv","format":"png"}]})"),
               Catch::Matchers::ContainsSubstring("format"));
}

TEST_CASE("run: arc_circle routes to the closed form, no quadrature") {
    fs::path d = fresh_dir("arc");
    RunConfig cfg = parse_config(
        R"({"curve":{"kind":"arc_circle","a":2},"n":40,"reference":"arc",
            "outputs":[{"kind":"boundary","path":"b38.csv","params":{"n":38}}]})");
    RunReport rep = run(cfg, d.string());
    CHECK(rep.source == HessenbergSection::Source::closed_form_arc);
    CHECK(rep.condition_estimate == 0.0);  // no moment matrix formed
    REQUIRE(rep.sup_diff.has_value());
    CHECK(*rep.sup_diff <= 0.01);  // h_39 against phi
    REQUIRE(rep.capacity_error.has_value());
    CHECK(*rep.capacity_error < 1e-14);
    CHECK(fs::exists(d / "b38.csv"));
    // moments output on a curve without a parametrization fails loudly
    RunConfig bad = parse_config(
        R"({"curve":{"kind":"arc_circle","a":2},"n":8,
            "outputs":[{"kind":"moments","path":"m.csv"}]})");
    CHECK_THROWS_WITH(run(bad, d.string()),
                      Catch::Matchers::ContainsSubstring("output:moments"));
}

TEST_CASE("run: cross hessenberg CSV contains the d_{2,1} triple") {
    fs::path d = fresh_dir("cross");
    RunConfig cfg = parse_config(
        R"({"curve":{"kind":"cross","a":1,"b":1},"n":9,
            "outputs":[{"kind":"hessenberg","path":"h.csv"}]})");
    run(cfg, d.string());
    std::string text = slurp(d / "h.csv");
    CHECK(text.rfind("# hessmap 0.1.0 config ", 0) == 0);
    std::istringstream in(text);
    std::string line;
    bool found = false;
    while (std::getline(in, line)) {
        if (line.rfind("2,1,", 0) == 0) {
            double re = std::stod(line.substr(4));
            CHECK(re == Catch::Approx(0.57735027).margin(1e-8));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("run: circle diagnostics are zero and labeled") {
    fs::path d = fresh_dir("circ");
    RunConfig cfg = parse_config(
        R"({"curve":{"kind":"circle"},"n":8,"reference":"circle",
            "outputs":[{"kind":"diagnostics","path":"diag.csv"}]})");
    RunReport rep = run(cfg, d.string());
    CHECK(rep.limits_provenance == "analytic");
    std::istringstream in(slurp(d / "diag.csv"));
    std::string line;
    std::getline(in, line);  // hash comment
    std::getline(in, line);
    CHECK(line == "# limits: analytic");
    std::getline(in, line);
    CHECK(line == "n,theta2,theta1,tail_l2");
    int rows = 0;
    while (std::getline(in, line)) {
        auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
        double theta2 = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(theta2 <= 1e-10);
        ++rows;
    }
    CHECK(rows == 7);
}

TEST_CASE("run: svg and grid outputs") {
    fs::path d = fresh_dir("svg");
    RunConfig cfg = parse_config(
        R"({"curve":{"kind":"drop"},"n":12,
            "outputs":[{"kind":"boundary","path":"b.svg","format":"svg"},
                       {"kind":"grid","path":"g.csv","params":{"radii":[1.2,1.5],"samples":64}},
                       {"kind":"grid","path":"g.svg","format":"svg"},
                       {"kind":"capacity","path":"c.csv"},
                       {"kind":"moments","path":"m.csv","params":{"order":4}}]})");
    RunReport rep = run(cfg, d.string());
    CHECK(rep.outputs.size() == 5);
    CHECK(slurp(d / "b.svg").rfind("<svg ", 0) == 0);
    CHECK(slurp(d / "g.svg").rfind("<svg ", 0) == 0);
    std::string grid = slurp(d / "g.csv");
    CHECK_THAT(grid, Catch::Matchers::ContainsSubstring("r,theta,re,im"));
    CHECK_THAT(grid, Catch::Matchers::ContainsSubstring("\n1.2,"));
    CHECK_THAT(grid, Catch::Matchers::ContainsSubstring("\n1.5,"));
    std::string cap = slurp(d / "c.csv");
    CHECK_THAT(cap, Catch::Matchers::ContainsSubstring("estimate,"));
    CHECK_THAT(cap, Catch::Matchers::ContainsSubstring("trace8,"));
    std::string mom = slurp(d / "m.csv");
    CHECK_THAT(mom, Catch::Matchers::ContainsSubstring("# row-major"));
    CHECK(rep.condition_estimate > 0);
}

TEST_CASE("run: determinism — identical config gives bitwise-identical files") {
    fs::path d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
    const char* text =
        R"({"curve":{"kind":"spiral"},"n":12,"samples":512,"reference":"circle",
            "outputs":[{"kind":"hessenberg","path":"h.csv"},
                       {"kind":"boundary","path":"b.csv","params":{"n":11}},
                       {"kind":"diagnostics","path":"d.csv"}]})";
    run(parse_config(text), d1.string());
    run(parse_config(text), d2.string());
    for (const char* f : {"h.csv", "b.csv", "d.csv"}) CHECK(slurp(d1 / f) == slurp(d2 / f));
}

TEST_CASE("cli binary: subcommands, overrides, env var, exit codes") {
    fs::path d = fresh_dir("bin");
    fs::path cfgp = d / "cfg.json";
    std::ofstream(cfgp) << R"({"curve":{"kind":"cross","a":1,"b":1},"n":6})";

    CHECK(run_cli("hessenberg " + cfgp.string() + " --out-dir " + d.string()) == 0);
    CHECK(fs::exists(d / "hessenberg.csv"));
    CHECK(run_cli("capacity " + cfgp.string() + " --n 12 --out-dir " + d.string()) == 0);
    CHECK(fs::exists(d / "capacity.csv"));
    std::string cap = slurp(d / "capacity.csv");
    CHECK_THAT(cap, Catch::Matchers::ContainsSubstring("trace8,"));  // window fits n=12
    CHECK(run_cli("map " + cfgp.string() + " --out-dir " + d.string()) == 0);
    CHECK(fs::exists(d / "boundary.csv"));

    // env var directs output
    fs::path denv = fresh_dir("binenv");
    setenv("HESSMAP_OUT_DIR", denv.string().c_str(), 1);
    CHECK(run_cli("moments " + cfgp.string()) == 0);
    unsetenv("HESSMAP_OUT_DIR");
    CHECK(fs::exists(denv / "moments.csv"));

    // failures exit nonzero
    CHECK(run_cli("diagnostics /nonexistent.json") != 0);
    CHECK(run_cli("repro no-such-recipe --out-dir " + d.string()) != 0);
    std::ofstream(d / "bad.json") << R"({"curve":{"kind":"interval","a":1,"b":-1},"n":4})";
    CHECK(run_cli("hessenberg " + (d / "bad.json").string()) != 0);

    // repro determinism across processes
    fs::path r1 = fresh_dir("rep1"), r2 = fresh_dir("rep2");
    CHECK(run_cli("repro cross-9x9 --out-dir " + r1.string()) == 0);
    CHECK(run_cli("repro cross-9x9 --out-dir " + r2.string()) == 0);
    CHECK(slurp(r1 / "cross-9x9.csv") == slurp(r2 / "cross-9x9.csv"));
}

TEST_CASE("run_recipe: example1-table reproduces the bound thresholds") {
    fs::path d = fresh_dir("tbl");
    run_recipe("example1-table", d.string());
    std::string text = slurp(d / "example1-table.csv");
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("0.2,17,"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("0.1,22,"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("0.01,38,"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("0.001,54,"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("1e-04,70,"));
    CHECK_THROWS_AS(run_recipe("nope", d.string()), std::invalid_argument);
}
