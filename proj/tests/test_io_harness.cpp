#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bft/harness.hpp"
#include "bft/io.hpp"
#include "bft/stats.hpp"

using namespace bft;

namespace {

std::filesystem::path tmp(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("bft_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is);
    return std::string(std::istreambuf_iterator<char>(is), {});
}

}  // namespace

TEST_CASE("truth table file round trip and layout") {
    Rng rng(71);
    TruthTable t = TruthTable::zeros(5);
    for (uint64_t i = 0; i < t.size(); ++i) t.set(i, rng.bit());
    auto p = tmp("tt.bin");
    write_truth_table(p.string(), t);
    // header: n as u32 LE; body: 2^n bits, LSB-first
    std::string raw = slurp(p);
    REQUIRE(raw.size() == 4 + 4);
    CHECK(uint8_t(raw[0]) == 5);
    CHECK(uint8_t(raw[1]) == 0);
    CHECK(((uint8_t(raw[4]) >> 0) & 1) == t.get(0));
    CHECK(((uint8_t(raw[4]) >> 7) & 1) == t.get(7));
    TruthTable back = read_truth_table(p.string());
    CHECK(back.n == t.n);
    CHECK(back.bits == t.bits);
    std::filesystem::remove(p);
}

TEST_CASE("matrix file round trip") {
    Rng rng(72);
    Gf2Matrix m = Gf2Matrix::random(7, 21, rng);
    auto p = tmp("mat.bin");
    write_matrix(p.string(), m);
    Gf2Matrix back = read_matrix(p.string());
    CHECK(back == m);
    std::filesystem::remove(p);
}

TEST_CASE("reading a truncated file fails with the path in the message") {
    auto p = tmp("trunc.bin");
    std::ofstream(p, std::ios::binary).write("\x08\x00\x00\x00\x01", 5);
    try {
        read_truth_table(p.string());
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find(p.string()) != std::string::npos);
    }
    std::filesystem::remove(p);
}

TEST_CASE("function descriptors round trip through text") {
    Rng rng(73);
    std::vector<std::string> descs = {
        "klinear n=10 I=1,4,7",
        "klinear n=6 I=",
        "junta n=10 J=1,2 T=0110",
        "poly n=6 M=1*2+3+1",
        "poly n=6 M=0",
        "random n=20 seed=42",
        "table n=3 bits=01101001",
    };
    for (const auto& d : descs) {
        BooleanFunction f = parse_function(d);
        CHECK(format_function(f) == d);
        BooleanFunction g = parse_function(format_function(f));
        for (int i = 0; i < 64; ++i) {
            BitVector x = BitVector::random(f.dim(), rng);
            CHECK(f.evaluate(x) == g.evaluate(x));
        }
    }
}

TEST_CASE("descriptor semantics: 1-based indices, monomial sums") {
    BooleanFunction f = parse_function("klinear n=8 I=1,8");
    BitVector x(8);
    x.set(0, true);
    CHECK(f.evaluate(x));
    x.set(7, true);
    CHECK(!f.evaluate(x));
    BooleanFunction p = parse_function("poly n=4 M=1*2+1");
    BitVector y(4);
    CHECK(p.evaluate(y));  // constant term
    y.set(0, true);
    y.set(1, true);
    CHECK(!p.evaluate(y));  // x1 x2 + 1 = 0
}

TEST_CASE("bad descriptors are rejected with context") {
    CHECK_THROWS_AS(parse_function("klinear n=10"), IoError);
    CHECK_THROWS_AS(parse_function("klinear n=10 I=0"), IoError);
    CHECK_THROWS_AS(parse_function("junta n=8 J=1 T=011"), IoError);
    CHECK_THROWS_AS(parse_function("mystery n=8"), IoError);
    CHECK_THROWS_AS(parse_function(""), IoError);
    CHECK_THROWS_AS(parse_family("link n=10"), IoError);
}

TEST_CASE("family descriptors round trip") {
    for (const std::string d : {"link n=10 k=2", "linear n=12", "junk n=9 k=3", "symt n=10 t=8",
                                "symnk n=10 k=2", "pold n=14 d=2"}) {
        CHECK(format_family(parse_family(d)) == d);
    }
}

TEST_CASE("wilson interval matches an independently coded formula") {
    // 75 of 100 with z = 1.96: textbook computation
    auto [lo, hi] = wilson_interval(75, 100);
    const double z = 1.959963984540054, n = 100, p = 0.75;
    double denom = 1 + z * z / n;
    double center = (p + z * z / (2 * n)) / denom;
    double half = z / denom * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
    CHECK(lo == doctest::Approx(center - half).epsilon(1e-12));
    CHECK(hi == doctest::Approx(center + half).epsilon(1e-12));
    CHECK(lo < 0.75);
    CHECK(hi > 0.75);
}

TEST_CASE("summarize counts and edge intervals") {
    std::vector<TrialResult> all_accept(10), all_reject(10);
    for (int i = 0; i < 10; ++i) {
        all_accept[i] = {uint32_t(i), Outcome::Accept, 5, ""};
        all_reject[i] = {uint32_t(i), Outcome::Reject, 5, ""};
    }
    SummaryStats a = summarize(all_accept);
    CHECK(a.accept_rate == 1.0);
    CHECK(a.rate_hi == doctest::Approx(1.0));
    SummaryStats r = summarize(all_reject);
    CHECK(r.accept_rate == 0.0);
    CHECK(r.rate_lo == 0.0);
    CHECK_THROWS_AS(summarize(std::vector<TrialResult>{}), ContractError);
}

TEST_CASE("inconclusive trials are excluded from the rate but counted") {
    std::vector<TrialResult> mix = {{0, Outcome::Accept, 1, ""},
                                    {1, Outcome::Inconclusive, 1, ""},
                                    {2, Outcome::Reject, 1, ""},
                                    {3, Outcome::Accept, 1, ""}};
    SummaryStats s = summarize(mix);
    CHECK(s.accepts == 2);
    CHECK(s.rejects == 1);
    CHECK(s.inconclusive == 1);
    CHECK(s.accept_rate == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("config validation enumerates problems before running") {
    ExperimentConfig bad;
    bad.tester = "nope";
    bad.trials = 0;
    CHECK_THROWS_AS(validate(bad), ContractError);
    ExperimentConfig wrong_model;
    wrong_model.tester = "blr";
    wrong_model.model = "passive";
    CHECK_THROWS_AS(validate(wrong_model), ContractError);
    ExperimentConfig ok;
    ok.tester = "passive_linear";
    ok.n = 12;
    ExperimentConfig v = validate(ok);
    CHECK(v.model == "passive");
    CHECK(v.q == 22);
    CHECK(v.family == "linear n=12");
}

TEST_CASE("identical config and seed produce byte-identical outputs") {
    ExperimentConfig cfg;
    cfg.tester = "blr";
    cfg.n = 10;
    cfg.trials = 50;
    cfg.seed = 99;
    auto c1 = tmp("run1.csv"), j1 = tmp("run1.json");
    auto c2 = tmp("run2.csv"), j2 = tmp("run2.json");
    cfg.csv_path = c1.string();
    cfg.json_path = j1.string();
    ExperimentResult r1 = run_trials(cfg, 1);
    cfg.csv_path = c2.string();
    cfg.json_path = j2.string();
    ExperimentResult r2 = run_trials(cfg, 4);  // thread count must not matter
    CHECK(slurp(c1) == slurp(c2));
    std::string js1 = slurp(j1), js2 = slurp(j2);
    // json echoes the output paths nowhere; summaries must match exactly
    CHECK(js1 == js2);
    for (auto& p : {c1, j1, c2, j2}) std::filesystem::remove(p);
}

TEST_CASE("per-trial csv has a fixed header and one row per trial") {
    ExperimentConfig cfg;
    cfg.tester = "passive_linear";
    cfg.n = 10;
    cfg.trials = 25;
    cfg.seed = 3;
    auto p = tmp("rows.csv");
    cfg.csv_path = p.string();
    run_trials(cfg, 2);
    std::string csv = slurp(p);
    CHECK(csv.rfind("trial,outcome,queries,diagnostic\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);
    std::filesystem::remove(p);
}

TEST_CASE("empty result set still yields the header") {
    auto p = tmp("empty.csv");
    write_trials_csv(p.string(), {});
    CHECK(slurp(p) == "trial,outcome,queries,diagnostic\n");
    std::filesystem::remove(p);
}

TEST_CASE("members are accepted with probability well above two thirds") {
    for (const char* tester : {"blr", "passive_linear"}) {
        ExperimentConfig cfg;
        cfg.tester = tester;
        cfg.n = 10;
        cfg.trials = 200;
        cfg.seed = 17;
        ExperimentResult r = run_trials(cfg);
        CHECK(r.stats.accepts == 200);
    }
}

TEST_CASE("sweep keeps grid order and marks bad rows") {
    ExperimentConfig base;
    base.tester = "passive_linear";
    base.n = 10;
    base.trials = 20;
    std::vector<ExperimentConfig> grid;
    for (uint64_t q : {14, 16, 18}) {
        ExperimentConfig c = base;
        c.q = q;
        grid.push_back(c);
    }
    ExperimentConfig broken = base;
    broken.n = 0;
    grid.push_back(broken);
    auto rows = sweep(grid);
    REQUIRE(rows.size() == 4);
    for (int i = 0; i < 3; ++i) {
        CHECK(rows[i].stats.has_value());
        CHECK(rows[i].config.q == grid[i].q);
    }
    CHECK(!rows[3].stats.has_value());
    CHECK(!rows[3].error.empty());
    CHECK(sweep({}).empty());
}

TEST_CASE("json summary echoes the config and reread values match") {
    ExperimentConfig cfg;
    cfg.tester = "blr";
    cfg.n = 9;
    cfg.trials = 30;
    cfg.seed = 5;
    ExperimentResult r = run_trials(cfg);
    std::string js = summary_json(r);
    CHECK(js.find("\"seed\": 5") != std::string::npos);
    CHECK(js.find("\"tester\": \"blr\"") != std::string::npos);
    CHECK(js.find("\"accepts\": " + std::to_string(r.stats.accepts)) != std::string::npos);
}
