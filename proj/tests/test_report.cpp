#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "opconvex/report.hpp"
#include "opconvex/sweep.hpp"

using namespace opconvex;

namespace {

CheckReport sample_report() {
    CheckReport r;
    r.family = "bernstein";
    r.functional = "dirac";
    r.n = 2;
    r.m = 3;
    r.xs = {0.25, 0.5, 1.0};
    r.f = "e2";
    r.quantity = "cm";
    r.value = 0.125;
    r.tail_bound = 0.0;
    r.tolerance = 1e-12;
    r.verdict = Verdict::pass();
    r.method = "series-convolution";
    return r;
}

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& contents) {
        path = std::filesystem::temp_directory_path() /
               ("opconvex_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++) + ".json");
        std::ofstream(path) << contents;
    }
    ~TempFile() { std::filesystem::remove(path); }
    static int counter;
};
int TempFile::counter = 0;

} // namespace

TEST_CASE("verdict rendering") {
    CHECK(Verdict::pass().text() == "PASS");
    CHECK(Verdict::fail().text() == "FAIL");
    CHECK(Verdict::rejected("tail-budget too large").text() ==
          "REJECTED(tail-budget too large)");
}

TEST_CASE("csv serialization") {
    const auto r = sample_report();
    CHECK(std::string(kCsvHeader) ==
          "family,functional,n,m,xs,f,quantity,value,tail_bound,tolerance,"
          "verdict,method");
    CHECK(to_csv_line(r) ==
          "bernstein,dirac,2,3,0.25;0.5;1,e2,cm,0.125,0,1e-12,PASS,"
          "series-convolution");

    auto blank_m = r;
    blank_m.m = 0;
    blank_m.xs = {0.25, 0.5};
    CHECK(to_csv_line(blank_m) ==
          "bernstein,dirac,2,,0.25;0.5,e2,cm,0.125,0,1e-12,PASS,"
          "series-convolution");
}

TEST_CASE("real formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -0.125, 1e-300, 54.0, 2.220446049250313e-16}) {
        const auto s = format_real(v);
        CHECK(std::stod(s) == v);
        CHECK(s.find(',') == std::string::npos);
    }
    CHECK(format_real(0.0) == "0");
}

TEST_CASE("json lines carry the same fields") {
    const auto line = to_json_line(sample_report());
    const auto parsed = nlohmann::json::parse(line);
    CHECK(parsed["family"] == "bernstein");
    CHECK(parsed["n"] == 2);
    CHECK(parsed["m"] == 3);
    CHECK(parsed["xs"].size() == 3);
    CHECK(parsed["xs"][2] == 1.0);
    CHECK(parsed["value"] == 0.125);
    CHECK(parsed["verdict"] == "PASS");

    auto blank_m = sample_report();
    blank_m.m = 0;
    CHECK(nlohmann::json::parse(to_json_line(blank_m))["m"].is_null());

    // key order matches the CSV column order
    std::vector<std::string> keys;
    for (auto it = parsed.begin(); it != parsed.end(); ++it)
        keys.push_back(it.key());
    const auto ordered = nlohmann::ordered_json::parse(line);
    std::vector<std::string> ordered_keys;
    for (auto it = ordered.begin(); it != ordered.end(); ++it)
        ordered_keys.push_back(it.key());
    CHECK(ordered_keys.front() == "family");
    CHECK(ordered_keys.back() == "method");
}

TEST_CASE("report ordering is the input tuple") {
    auto a = sample_report();
    auto b = sample_report();
    b.n = 3;
    auto c = sample_report();
    c.family = "szasz";
    auto d = sample_report();
    d.xs = {0.25, 0.5, 0.75};

    std::vector<CheckReport> rows{c, b, a, d};
    sort_reports(rows);
    CHECK(rows[0].xs == std::vector<double>{0.25, 0.5, 0.75});
    CHECK(rows[1].n == 2);
    CHECK(rows[1].xs == std::vector<double>{0.25, 0.5, 1.0});
    CHECK(rows[2].n == 3);
    CHECK(rows[3].family == "szasz");
}

TEST_CASE("emission and failure detection") {
    std::vector<CheckReport> rows{sample_report(), sample_report()};
    rows[1].verdict = Verdict::rejected("precondition");

    std::ostringstream csv;
    emit_reports(rows, ReportFormat::csv, csv);
    std::istringstream lines(csv.str());
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 3);

    CHECK_FALSE(any_fail(rows));
    rows[0].verdict = Verdict::fail();
    CHECK(any_fail(rows));

    CHECK(parse_report_format("csv") == ReportFormat::csv);
    CHECK(parse_report_format("jsonl") == ReportFormat::jsonl);
    CHECK_THROWS_AS(parse_report_format("xml"), std::invalid_argument);
}

TEST_CASE("sweep config loading") {
    SUBCASE("fields and defaults") {
        const TempFile cfg(R"({
            "check": "check-cm",
            "families": ["bernstein"],
            "n": {"from": 1, "to": 3},
            "m": [2, 3],
            "x_random": {"count": 5, "seed": 99},
            "functions": ["e2"]
        })");
        const auto c = load_sweep_config(cfg.path.string());
        CHECK(c.check == "check-cm");
        CHECK(c.functionals == std::vector<std::string>{"dirac"});
        CHECK(c.n_from == 1);
        CHECK(c.n_to == 3);
        CHECK(c.ms == std::vector<int>{2, 3});
        CHECK(c.x_random.count == 5);
        CHECK(c.x_random.seed == 99);
        CHECK(c.tolerance == 1e-12);
        CHECK(c.format == "csv");
        CHECK(c.jobs == 1);
    }
    SUBCASE("scalar n is a degenerate range") {
        const TempFile cfg(R"({
            "check": "check-a",
            "families": ["bernstein"],
            "n": 4,
            "x_grid": {"start": 0.0, "stop": 1.0, "step": 0.5},
            "functions": ["e2"]
        })");
        const auto c = load_sweep_config(cfg.path.string());
        CHECK(c.n_from == 4);
        CHECK(c.n_to == 4);
    }
    SUBCASE("parse and validation failures") {
        const TempFile broken("{ not json");
        CHECK_THROWS_AS(load_sweep_config(broken.path.string()),
                        std::invalid_argument);

        const TempFile badcheck(R"({
            "check": "check-nope",
            "families": ["bernstein"],
            "n": 1,
            "x_random": {"count": 1, "seed": 1},
            "functions": ["e2"]
        })");
        CHECK_THROWS_AS(load_sweep_config(badcheck.path.string()),
                        std::invalid_argument);

        const TempFile bothxs(R"({
            "check": "check-a",
            "families": ["bernstein"],
            "n": 1,
            "x_grid": {"start": 0, "stop": 1, "step": 0.5},
            "x_random": {"count": 1, "seed": 1},
            "functions": ["e2"]
        })");
        CHECK_THROWS_AS(load_sweep_config(bothxs.path.string()),
                        std::invalid_argument);

        CHECK_THROWS_AS(load_sweep_config("/nonexistent/path.json"),
                        std::invalid_argument);
    }
}

TEST_CASE("sweeps are deterministic") {
    SweepConfig cfg;
    cfg.check = "check-cm";
    cfg.families = {"bernstein", "szasz"};
    cfg.functionals = {"dirac"};
    cfg.n_from = 1;
    cfg.n_to = 2;
    cfg.ms = {2, 3};
    cfg.x_random.present = true;
    cfg.x_random.count = 4;
    cfg.x_random.seed = 7;
    cfg.functions = {"e2", "abs:c=0.5"};

    const auto first = run_sweep(cfg);
    const auto second = run_sweep(cfg);
    REQUIRE(first.size() == second.size());
    REQUIRE(first.size() == 2u * 2u * 2u * 4u * 2u);
    for (std::size_t i = 0; i < first.size(); ++i)
        CHECK(to_csv_line(first[i]) == to_csv_line(second[i]));

    auto parallel_cfg = cfg;
    parallel_cfg.jobs = 4;
    const auto parallel = run_sweep(parallel_cfg);
    REQUIRE(parallel.size() == first.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        CHECK(to_csv_line(first[i]) == to_csv_line(parallel[i]));

    const auto summary = sweep_summary(first);
    CHECK(summary.find("quantity=cm") != std::string::npos);
    CHECK(summary.find("pass=") != std::string::npos);
}

TEST_CASE("single checks surface verdicts") {
    const CheckOptions opts;
    SUBCASE("convex function on a convex-preserving pair passes") {
        const auto r = run_check_a(parse_family("bernstein"),
                                   parse_functional("dirac"), 2,
                                   parse_test_function("e2"), 0.2, 0.8, opts);
        CHECK(r.verdict.kind == VerdictKind::pass);
        CHECK(r.quantity == "rasa");
        CHECK(r.value >= 0.0);
    }
    SUBCASE("nonconvex input is rejected with a curvature witness") {
        const auto r = run_check_a(parse_family("szasz"),
                                   parse_functional("dirac"), 4,
                                   parse_test_function("sin"), 0.5, 1.5, opts);
        CHECK(r.verdict.kind == VerdictKind::rejected);
        CHECK(r.verdict.reason.find("precondition") != std::string::npos);
        CHECK(r.verdict.reason.find("negative") != std::string::npos);
    }
    SUBCASE("rejection reasons stay comma-free for the csv cell") {
        const std::vector<double> xs{0.0, 1.0};
        const auto r = run_check_bm(parse_family("schurer:p=1"),
                                    parse_functional("dirac"), 1, 2,
                                    parse_test_function("e2"), xs, opts);
        CHECK(r.verdict.kind == VerdictKind::rejected);
        CHECK(r.verdict.reason.find("moment-guard") != std::string::npos);
        CHECK(r.verdict.reason.find(',') == std::string::npos);
        const auto line = to_csv_line(r);
        int commas = 0;
        for (char ch : line) commas += ch == ',' ? 1 : 0;
        CHECK(commas == 11);
    }
}
