#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bft/families.hpp"
#include "bft/fourier.hpp"
#include "bft/harness.hpp"
#include "bft/io.hpp"
#include "bft/lowerbounds.hpp"
#include "bft/stats.hpp"
#include "bft/testers.hpp"

namespace {

void add_config_flags(CLI::App* cmd, bft::ExperimentConfig& cfg) {
    cmd->add_option("--tester", cfg.tester, "tester id");
    cmd->add_option("--model", cfg.model, "classic|active|passive");
    cmd->add_option("--family", cfg.family, "family descriptor (defaulted per tester)");
    cmd->add_option("--target", cfg.target, "member | far | function descriptor");
    cmd->add_option("--n", cfg.n, "dimension");
    cmd->add_option("--k", cfg.k, "amplification / family parameter");
    cmd->add_option("--d", cfg.d, "polynomial degree");
    cmd->add_option("--eps", cfg.eps, "distance parameter");
    cmd->add_option("--eps-hi", cfg.eps_hi, "tolerant upper distance");
    cmd->add_option("--u", cfg.u, "active pool size");
    cmd->add_option("--q", cfg.q, "query budget / sample length");
    cmd->add_option("--repetitions", cfg.repetitions, "tester repetitions per trial");
    cmd->add_option("--trials", cfg.trials, "number of trials");
    cmd->add_option("--seed", cfg.seed, "master seed")->envname("BFTEST_SEED");
    cmd->add_option("--csv", cfg.csv_path, "per-trial CSV output path");
    cmd->add_option("--json", cfg.json_path, "JSON summary output path");
    cmd->set_config("--config", "", "config file with the same keys as the flags");
}

void print_stats(const bft::ExperimentConfig& cfg, const bft::SummaryStats& s) {
    std::printf("tester=%s model=%s n=%u trials=%u seed=%llu\n", cfg.tester.c_str(),
                cfg.model.c_str(), cfg.n, cfg.trials, (unsigned long long)cfg.seed);
    std::printf("accepts=%llu rejects=%llu inconclusive=%llu rate=%.4f ci=[%.4f,%.4f] "
                "mean_queries=%.2f\n",
                (unsigned long long)s.accepts, (unsigned long long)s.rejects,
                (unsigned long long)s.inconclusive, s.accept_rate, s.rate_lo, s.rate_hi,
                s.mean_queries);
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw bft::IoError(path + ": cannot open for writing");
    return file;
}

uint64_t seed_from_env() {
    const char* e = std::getenv("BFTEST_SEED");
    return e ? std::strtoull(e, nullptr, 10) : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"property-testing laboratory for Boolean functions"};
    app.require_subcommand(1);

    bft::ExperimentConfig cfg;
    auto* run = app.add_subcommand("run", "run one experiment");
    add_config_flags(run, cfg);

    bft::ExperimentConfig sweep_cfg;
    std::string sweep_param;
    std::vector<uint64_t> sweep_values;
    std::string sweep_csv;
    auto* sw = app.add_subcommand("sweep", "grid over one integer parameter");
    add_config_flags(sw, sweep_cfg);
    sw->add_option("--param", sweep_param, "q|u|n|k|d|repetitions|trials")->required();
    sw->add_option("--values", sweep_values, "grid values")->required()->delimiter(',');
    sw->add_option("--out", sweep_csv, "sweep table CSV path (default stdout)");

    auto* lb = app.add_subcommand("lb", "lower-bound machinery experiments");
    lb->require_subcommand(1);
    struct {
        uint32_t n = 50, k = 2, q = 8, trials = 100;
        uint64_t seed = seed_from_env();
        std::string csv;
    } pisy;
    auto* lp = lb->add_subcommand("pisy", "column-subset-sum distribution criterion");
    lp->add_option("--n", pisy.n);
    lp->add_option("--k", pisy.k);
    lp->add_option("--q", pisy.q);
    lp->add_option("--trials", pisy.trials);
    lp->add_option("--seed", pisy.seed)->envname("BFTEST_SEED");
    lp->add_option("--csv", pisy.csv);

    struct {
        std::string kind = "boolean";
        uint64_t order = 16;
        uint32_t n = 24, k = 2, trials = 10000;
        uint64_t y = 0, seed = seed_from_env();
        std::string csv;
    } ss;
    auto* ls = lb->add_subcommand("sumset", "subset-sum concentration");
    ls->add_option("--group", ss.kind, "boolean|cyclic");
    ls->add_option("--order", ss.order, "group order (power of two for boolean)");
    ls->add_option("--n", ss.n);
    ls->add_option("--k", ss.k);
    ls->add_option("--y", ss.y);
    ls->add_option("--trials", ss.trials);
    ls->add_option("--seed", ss.seed)->envname("BFTEST_SEED");
    ls->add_option("--csv", ss.csv);

    struct {
        uint32_t count = 16, b = 2, a = 3, universe = 30, trials = 100;
        uint64_t seed = seed_from_env();
        std::string csv;
    } sf;
    auto* lf = lb->add_subcommand("sunflower", "common-core subfamily extraction");
    lf->add_option("--count", sf.count, "family size");
    lf->add_option("--b", sf.b, "set size");
    lf->add_option("--a", sf.a, "target petal count");
    lf->add_option("--universe", sf.universe);
    lf->add_option("--trials", sf.trials);
    lf->add_option("--seed", sf.seed)->envname("BFTEST_SEED");
    lf->add_option("--csv", sf.csv);

    struct {
        uint64_t N = 10000;
        uint32_t d = 40, steps = 4, trials = 20;
        uint64_t seed = seed_from_env();
        std::string csv;
    } cy;
    auto* lc = lb->add_subcommand("cayley", "walk-distribution mixing cutoff");
    lc->add_option("--N", cy.N, "cyclic group order");
    lc->add_option("--d", cy.d, "generator count");
    lc->add_option("--steps", cy.steps);
    lc->add_option("--trials", cy.trials);
    lc->add_option("--seed", cy.seed)->envname("BFTEST_SEED");
    lc->add_option("--csv", cy.csv);

    auto* orc = app.add_subcommand("oracle", "self-checks of the exact machinery");
    orc->require_subcommand(1);
    struct {
        uint32_t n = 8, q = 6, k = 2;
        uint64_t seed = seed_from_env(), order = 16;
        std::string kind = "boolean";
    } oc;
    auto* op = orc->add_subcommand("parseval", "squared spectrum sums to 1");
    op->add_option("--n", oc.n);
    op->add_option("--seed", oc.seed)->envname("BFTEST_SEED");
    auto* opi = orc->add_subcommand("pisum", "subset-sum distribution sums to 1");
    opi->add_option("--n", oc.n);
    opi->add_option("--q", oc.q);
    opi->add_option("--k", oc.k);
    opi->add_option("--seed", oc.seed)->envname("BFTEST_SEED");
    auto* om = orc->add_subcommand("metric", "distance symmetry and triangle inequality");
    om->add_option("--n", oc.n);
    om->add_option("--seed", oc.seed)->envname("BFTEST_SEED");
    auto* og = orc->add_subcommand("group", "exhaustive group-law check");
    og->add_option("--kind", oc.kind, "boolean|cyclic");
    og->add_option("--order", oc.order);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            bft::ExperimentResult r = bft::run_trials(cfg);
            print_stats(r.config, r.stats);
            // exit 0 iff every trial reached a conclusive verdict
            return r.stats.inconclusive == 0 ? 0 : 1;
        }
        if (*sw) {
            std::vector<bft::ExperimentConfig> grid;
            for (uint64_t v : sweep_values) {
                bft::ExperimentConfig c = sweep_cfg;
                if (sweep_param == "q") c.q = v;
                else if (sweep_param == "u") c.u = v;
                else if (sweep_param == "n") c.n = uint32_t(v);
                else if (sweep_param == "k") c.k = uint32_t(v);
                else if (sweep_param == "d") c.d = uint32_t(v);
                else if (sweep_param == "repetitions") c.repetitions = uint32_t(v);
                else if (sweep_param == "trials") c.trials = uint32_t(v);
                else throw bft::ContractError("unknown sweep parameter '" + sweep_param + "'");
                grid.push_back(c);
            }
            auto rows = bft::sweep(grid);
            std::ofstream file;
            std::ostream& os = open_or_stdout(file, sweep_csv);
            os << "param,value,accepts,rejects,inconclusive,accept_rate,ci_lo,ci_hi,"
                  "mean_queries,error\n";
            bool ok = true;
            for (size_t i = 0; i < rows.size(); ++i) {
                const auto& row = rows[i];
                os << sweep_param << ',' << sweep_values[i] << ',';
                if (row.stats) {
                    const auto& s = *row.stats;
                    os << s.accepts << ',' << s.rejects << ',' << s.inconclusive << ','
                       << s.accept_rate << ',' << s.rate_lo << ',' << s.rate_hi << ','
                       << s.mean_queries << ',' << '\n';
                } else {
                    ok = false;
                    std::string e = row.error;
                    for (char& ch : e)
                        if (ch == ',' || ch == '\n') ch = ';';
                    os << ",,,,,,," << e << '\n';
                }
            }
            return ok ? 0 : 1;
        }
        if (*lp) {
            bft::Rng rng(pisy.seed);
            std::vector<bft::BitVector> pool;
            for (uint32_t i = 0; i < 4 * pisy.q; ++i)
                pool.push_back(bft::BitVector::random(pisy.n, rng));
            auto rep = bft::near_uniformity_criterion(pool, pisy.q, pisy.k, pisy.trials, rng);
            std::ofstream file;
            std::ostream& os = open_or_stdout(file, pisy.csv);
            os << "n,k,q,trials,statistic,ci_lo,ci_hi,regime_label\n";
            auto [lo, hi] = bft::wilson_interval(
                uint64_t(rep.violation_rate * double(uint64_t(rep.trials) << rep.q) + 0.5),
                uint64_t(rep.trials) << rep.q);
            double thresh = (1.0 - 1.0 / pisy.k) * std::log2(double(bft::binomial(pisy.n, pisy.k)));
            os << pisy.n << ',' << pisy.k << ',' << pisy.q << ',' << pisy.trials << ','
               << rep.violation_rate << ',' << lo << ',' << hi << ','
               << (pisy.q < thresh ? "below-threshold" : "above-threshold") << '\n';
            return 0;
        }
        if (*ls) {
            bft::AbelianGroup g = ss.kind == "cyclic"
                                      ? bft::AbelianGroup::cyclic(ss.order)
                                      : bft::AbelianGroup::boolean(uint32_t(std::countr_zero(ss.order)));
            bft::Rng rng(ss.seed);
            auto rep = bft::sumset_concentration_experiment(g, ss.n, ss.k, ss.y, ss.trials, rng);
            std::ofstream file;
            std::ostream& os = open_or_stdout(file, ss.csv);
            os << "group,order,n,k,y,trials,statistic,ci_lo,ci_hi,regime_label\n";
            os << ss.kind << ',' << g.order << ',' << ss.n << ',' << ss.k << ',' << ss.y << ','
               << ss.trials << ',' << rep.tail_rate << ',' << rep.tail_lo << ',' << rep.tail_hi
               << ',' << rep.regime << '\n';
            std::printf("mean(Y)=%.4f expected=%.4f lambda in [%.3f, %.3f]\n", rep.mean,
                        rep.expected, rep.lambda_min, rep.lambda_max);
            return 0;
        }
        if (*lf) {
            bft::Rng rng(sf.seed);
            uint64_t found = 0;
            for (uint32_t t = 0; t < sf.trials; ++t) {
                std::vector<std::vector<uint32_t>> sets;
                while (sets.size() < sf.count) {
                    std::vector<uint32_t> s;
                    while (s.size() < sf.b) {
                        uint32_t e = uint32_t(rng.below(sf.universe));
                        if (std::find(s.begin(), s.end(), e) == s.end()) s.push_back(e);
                    }
                    std::sort(s.begin(), s.end());
                    if (std::find(sets.begin(), sets.end(), s) == sets.end())
                        sets.push_back(std::move(s));
                }
                auto ds = bft::find_delta_system(sets, sf.a);
                if (ds && bft::verify_delta_system(sets, *ds)) ++found;
            }
            auto [lo, hi] = bft::wilson_interval(found, sf.trials);
            std::ofstream file;
            std::ostream& os = open_or_stdout(file, sf.csv);
            os << "count,b,a,universe,trials,statistic,ci_lo,ci_hi,regime_label\n";
            os << sf.count << ',' << sf.b << ',' << sf.a << ',' << sf.universe << ',' << sf.trials
               << ',' << double(found) / sf.trials << ',' << lo << ',' << hi << ','
               << (sf.count >= bft::delta_system_threshold(sf.a, sf.b) ? "at-or-above-threshold"
                                                                       : "below-threshold")
               << '\n';
            return 0;
        }
        if (*lc) {
            bft::Rng rng(cy.seed);
            auto rep = bft::cayley_mixing_experiment(cy.N, cy.d, cy.steps, cy.trials, rng);
            std::ofstream file;
            std::ostream& os = open_or_stdout(file, cy.csv);
            os << "N,d,steps,trials,statistic,ci_lo,ci_hi,regime_label\n";
            for (uint32_t s = 0; s < rep.tv_mean.size(); ++s)
                os << cy.N << ',' << cy.d << ',' << (s + 1) << ',' << cy.trials << ','
                   << rep.tv_mean[s] << ",,," << (rep.tv_mean[s] > 0.5 ? "unmixed" : "mixed")
                   << '\n';
            return 0;
        }
        if (*op) {
            bft::Rng rng(oc.seed);
            bft::TruthTable t = bft::TruthTable::zeros(oc.n);
            for (uint64_t i = 0; i < t.size(); ++i) t.set(i, rng.bit());
            auto spec = bft::walsh_hadamard(t);
            double sum = 0;
            for (double c : spec.coef) sum += c * c;
            std::printf("n=%u sum of squared coefficients = %.12f (residual %.3e)\n", oc.n, sum,
                        std::abs(sum - 1.0));
            return std::abs(sum - 1.0) < 1e-9 ? 0 : 1;
        }
        if (*opi) {
            bft::Rng rng(oc.seed);
            std::vector<bft::BitVector> S;
            for (uint32_t i = 0; i < oc.q; ++i) S.push_back(bft::BitVector::random(oc.n, rng));
            auto h = bft::pi_histogram(S, oc.k);
            uint64_t total = 0;
            for (uint64_t c : h.counts) total += c;
            std::printf("n=%u q=%u k=%u sum of counts = %llu, C(n,k) = %llu\n", oc.n, oc.q, oc.k,
                        (unsigned long long)total, (unsigned long long)h.total);
            return total == h.total ? 0 : 1;
        }
        if (*om) {
            bft::Rng rng(oc.seed);
            auto rand_fn = [&] {
                bft::TruthTable t = bft::TruthTable::zeros(oc.n);
                for (uint64_t i = 0; i < t.size(); ++i) t.set(i, rng.bit());
                return bft::make_from_table(std::move(t));
            };
            for (int rep = 0; rep < 50; ++rep) {
                auto f = rand_fn(), g = rand_fn(), h = rand_fn();
                auto dfg = bft::exact_distance(f, g), dgf = bft::exact_distance(g, f);
                auto dgh = bft::exact_distance(g, h), dfh = bft::exact_distance(f, h);
                if (!(dfg == dgf) || dfh.value() > dfg.value() + dgh.value() + 1e-12) {
                    std::printf("metric violation found\n");
                    return 1;
                }
            }
            std::printf("n=%u 50 random triples: symmetry and triangle inequality hold\n", oc.n);
            return 0;
        }
        if (*og) {
            bft::AbelianGroup g =
                oc.kind == "cyclic"
                    ? bft::AbelianGroup::cyclic(oc.order)
                    : bft::AbelianGroup::boolean(uint32_t(std::countr_zero(oc.order)));
            bool ok = g.laws_hold();
            std::printf("%s order %llu: group laws %s\n", oc.kind.c_str(),
                        (unsigned long long)g.order, ok ? "hold" : "VIOLATED");
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
