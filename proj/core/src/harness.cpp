#include "bft/harness.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "bft/families.hpp"
#include "bft/io.hpp"
#include "bft/stats.hpp"
#include "bft/testers.hpp"

namespace bft {

namespace {

bool tester_known(const std::string& t) {
    for (const char* id : {"blr", "active_linear", "passive_linear", "passive_poly", "symmetric",
                           "tolerant_symmetric", "psf", "junta", "learn_verify"})
        if (t == id) return true;
    return false;
}

std::string default_model(const std::string& tester) {
    if (tester == "blr") return "classic";
    if (tester == "active_linear") return "active";
    if (tester == "symmetric" || tester == "tolerant_symmetric" || tester == "psf")
        return "passive";
    return "passive";
}

bool model_allowed(const std::string& tester, const std::string& model) {
    if (tester == "blr") return model == "classic";
    if (tester == "active_linear") return model == "active";
    if (tester == "symmetric" || tester == "tolerant_symmetric" || tester == "psf")
        return model == "active" || model == "passive";
    return model == "passive";
}

std::string default_family(const ExperimentConfig& c) {
    const std::string n = " n=" + std::to_string(c.n);
    if (c.tester == "passive_poly") return "pold" + n + " d=" + std::to_string(c.d);
    if (c.tester == "symmetric" || c.tester == "tolerant_symmetric")
        return "symt" + n + " t=" + std::to_string(c.n);
    if (c.tester == "psf") return "symnk" + n + " k=" + std::to_string(c.k);
    if (c.tester == "junta") return "junk" + n + " k=" + std::to_string(c.k);
    if (c.tester == "learn_verify") return "link" + n + " k=" + std::to_string(c.k);
    return "linear" + n;
}

uint64_t default_budget(const ExperimentConfig& c) {
    if (c.tester == "blr") return uint64_t(c.repetitions) * (2 * c.k + 1);
    if (c.tester == "active_linear") {
        uint32_t qs = uint32_t(std::ceil(3.0 * c.n / std::log2(double(c.u))));
        return uint64_t(c.repetitions) * (qs + 1);
    }
    if (c.tester == "passive_linear") return c.n + 10;
    if (c.tester == "passive_poly") return monomial_count(c.n, c.d) + 20;
    if (c.tester == "junta") return 200;
    if (c.tester == "learn_verify") return 64 + uint64_t(std::ceil(32.0 / c.eps));
    // pair testers: enough points for ~n same-weight collisions
    return uint64_t(8.0 * std::sqrt(double(c.n)) * c.n);
}

}  // namespace

ExperimentConfig validate(const ExperimentConfig& cfg) {
    ExperimentConfig c = cfg;
    std::string errs;
    auto bad = [&](const std::string& m) { errs += (errs.empty() ? "" : "; ") + m; };

    if (!tester_known(c.tester)) bad("unknown tester '" + c.tester + "'");
    if (c.model.empty()) c.model = default_model(c.tester);
    if (c.model != "classic" && c.model != "active" && c.model != "passive")
        bad("unknown model '" + c.model + "'");
    else if (tester_known(c.tester) && !model_allowed(c.tester, c.model))
        bad("tester '" + c.tester + "' does not run in the " + c.model + " model");
    if (c.trials < 1) bad("trials must be >= 1");
    if (c.n < 1) bad("n must be >= 1");
    if (c.k < 1 && c.tester != "psf") bad("k must be >= 1");
    if (c.k > c.n) bad("k must be <= n");
    if (!(c.eps > 0 && c.eps < 0.5)) bad("eps must lie in (0, 1/2)");
    if (c.tester == "tolerant_symmetric") {
        if (c.eps_hi == 0) c.eps_hi = std::min(0.49, 3 * c.eps);
        if (!(c.eps < c.eps_hi)) bad("eps_hi must exceed eps");
    }
    if (c.model == "active" && c.u == 0) c.u = uint64_t(4) * c.n * c.n;
    if (c.model == "active" && c.u < 2) bad("active model needs u >= 2");
    if (c.repetitions == 0) c.repetitions = 16;
    if (c.q == 0) c.q = default_budget(c);
    if (c.q < 1) bad("query budget must be >= 1");
    if (c.family.empty()) c.family = default_family(c);
    if (errs.empty()) {
        try {
            Family fam = parse_family(c.family);
            if (fam.n != c.n) bad("family dimension differs from n");
        } catch (const std::exception& e) {
            bad(e.what());
        }
        if (c.target != "member" && c.target != "far") {
            try {
                BooleanFunction f = parse_function(c.target);
                if (f.dim() != c.n) bad("target dimension differs from n");
            } catch (const std::exception& e) {
                bad(e.what());
            }
        }
    }
    if (!errs.empty()) throw ContractError("invalid config: " + errs);
    return c;
}

namespace {

Verdict dispatch(const ExperimentConfig& c, QueryOracle& oracle, Rng& rng) {
    if (c.tester == "blr") return blr_k_test(oracle, c.k, c.repetitions, rng);
    if (c.tester == "active_linear") return active_linear_tester(oracle, c.repetitions, rng);
    if (c.tester == "passive_linear") return passive_linear_tester(oracle, uint32_t(c.q));
    if (c.tester == "passive_poly")
        return passive_polynomial_tester(oracle, c.d, uint32_t(c.q));
    if (c.tester == "symmetric") return symmetric_tester(oracle, uint32_t(c.q / 2), rng);
    if (c.tester == "tolerant_symmetric")
        return tolerant_symmetric_tester(oracle, uint32_t(c.q / 2), c.eps, c.eps_hi, rng);
    if (c.tester == "psf") return psf_tester(oracle, c.k, uint32_t(c.q / 2), rng);
    if (c.tester == "junta") return junta_passive_tester(oracle, c.k, uint32_t(c.q), c.eps);
    // learn_verify
    Family fam = parse_family(c.family);
    const uint64_t verify = uint64_t(std::ceil(32.0 / c.eps));
    const uint32_t learner_samples =
        uint32_t(c.q > verify ? c.q - verify : std::max<uint64_t>(1, c.q / 2));
    Learner learner = [&fam](std::span<const Sample> s) { return learn_consistent(fam, s); };
    return learn_then_verify(fam, oracle, learner, c.eps, learner_samples);
}

TrialResult run_one(const ExperimentConfig& c, const BooleanFunction* fixed, uint32_t trial,
                    const Rng& master) {
    Rng t_rng = master.stream(trial);
    Rng target_rng = t_rng.stream(0);
    Rng oracle_rng = t_rng.stream(1);
    Rng tester_rng = t_rng.stream(2);

    BooleanFunction f =
        fixed ? *fixed : sample_uniform(parse_family(c.family), target_rng);
    QueryOracle oracle =
        c.model == "classic" ? QueryOracle::classic(std::move(f), c.q)
        : c.model == "active"
            ? QueryOracle::active(std::move(f), uint32_t(c.u), c.q, oracle_rng)
            : QueryOracle::passive(std::move(f), uint32_t(c.q), oracle_rng);

    TrialResult r;
    r.index = trial;
    Verdict v = dispatch(c, oracle, tester_rng);
    r.outcome = v.decision;
    r.queries = v.queries_used;
    r.diagnostic = std::move(v.diagnostic);
    return r;
}

}  // namespace

SummaryStats summarize(std::span<const TrialResult> trials) {
    if (trials.empty()) throw ContractError("summarize: empty trial list");
    SummaryStats s;
    double qsum = 0;
    for (const auto& t : trials) {
        s.accepts += t.outcome == Outcome::Accept;
        s.rejects += t.outcome == Outcome::Reject;
        s.inconclusive += t.outcome == Outcome::Inconclusive;
        qsum += double(t.queries);
    }
    const uint64_t conclusive = s.accepts + s.rejects;
    s.accept_rate = conclusive ? double(s.accepts) / double(conclusive) : 0.0;
    std::tie(s.rate_lo, s.rate_hi) = wilson_interval(s.accepts, conclusive);
    s.mean_queries = qsum / double(trials.size());
    return s;
}

ExperimentResult run_trials(const ExperimentConfig& raw, unsigned threads) {
    ExperimentResult out;
    out.config = validate(raw);
    const ExperimentConfig& c = out.config;
    Rng master(c.seed);

    std::optional<BooleanFunction> fixed;
    if (c.target == "far") {
        Rng far_rng = master.stream(~uint64_t(0));
        fixed = far_function_generator(parse_family(c.family), c.eps, far_rng).f;
    } else if (c.target != "member") {
        fixed = parse_function(c.target);
    }

    out.trials.resize(c.trials);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, c.trials);
    std::atomic<uint32_t> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            uint32_t t = next.fetch_add(1);
            if (t >= c.trials || failed.load()) return;
            try {
                out.trials[t] = run_one(c, fixed ? &*fixed : nullptr, t, master);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(error_mu);
                failed = true;
                if (error.empty()) error = e.what();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed) throw ContractError("trial failed: " + error);

    out.stats = summarize(out.trials);
    if (!c.csv_path.empty()) write_trials_csv(c.csv_path, out.trials);
    if (!c.json_path.empty()) write_summary_json(c.json_path, out);
    return out;
}

std::vector<SweepRow> sweep(const std::vector<ExperimentConfig>& grid, unsigned threads) {
    std::vector<SweepRow> rows;
    for (const auto& cfg : grid) {
        SweepRow row;
        row.config = cfg;
        try {
            ExperimentResult r = run_trials(cfg, threads);
            row.config = r.config;
            row.stats = r.stats;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_trials_csv(const std::string& path, std::span<const TrialResult> trials) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(path + ": cannot open for writing");
    os << "trial,outcome,queries,diagnostic\n";
    for (const auto& t : trials) {
        std::string diag = t.diagnostic;
        for (char& ch : diag)
            if (ch == ',' || ch == '\n') ch = ';';
        os << t.index << ',' << to_string(t.outcome) << ',' << t.queries << ',' << diag << '\n';
    }
    if (!os) throw IoError(path + ": write failed");
}

std::string summary_json(const ExperimentResult& result) {
    const ExperimentConfig& c = result.config;
    const SummaryStats& s = result.stats;
    nlohmann::ordered_json j;
    j["config"] = {{"tester", c.tester},   {"model", c.model},
                   {"family", c.family},   {"target", c.target},
                   {"n", c.n},             {"k", c.k},
                   {"d", c.d},             {"eps", c.eps},
                   {"eps_hi", c.eps_hi},   {"u", c.u},
                   {"q", c.q},             {"repetitions", c.repetitions},
                   {"trials", c.trials},   {"seed", c.seed}};
    j["stats"] = {{"accepts", s.accepts},
                  {"rejects", s.rejects},
                  {"inconclusive", s.inconclusive},
                  {"accept_rate", s.accept_rate},
                  {"rate_lo", s.rate_lo},
                  {"rate_hi", s.rate_hi},
                  {"mean_queries", s.mean_queries}};
    return j.dump(2) + "\n";
}

void write_summary_json(const std::string& path, const ExperimentResult& result) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(path + ": cannot open for writing");
    os << summary_json(result);
    if (!os) throw IoError(path + ": write failed");
}

}  // namespace bft
