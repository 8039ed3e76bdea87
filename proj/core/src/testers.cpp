#include "bft/testers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "bft/gf2.hpp"

namespace bft {

namespace {

uint32_t active_subset_size(uint32_t n, uint64_t u) {
    return uint32_t(std::ceil(3.0 * n / std::log2(double(u))));
}

// Same-weight pairs among pool indices; each point used at most once.
std::vector<std::pair<uint32_t, uint32_t>> same_weight_pairs(const std::vector<BitVector>& pool,
                                                            uint32_t limit) {
    std::map<uint32_t, std::vector<uint32_t>> by_weight;
    for (uint32_t i = 0; i < pool.size(); ++i) by_weight[pool[i].weight()].push_back(i);
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (auto& [w, idx] : by_weight)
        for (size_t j = 0; j + 1 < idx.size() && pairs.size() < limit; j += 2)
            pairs.emplace_back(idx[j], idx[j + 1]);
    return pairs;
}

// Per-weight-class value consistency over a transcript. Returns
// {pairs_checked, violating_pairs}.
std::pair<uint64_t, uint64_t> weight_class_violations(std::span<const Sample> transcript) {
    std::map<uint32_t, std::pair<uint64_t, uint64_t>> cls;  // weight -> (ones, total)
    for (const auto& [x, v] : transcript) {
        auto& c = cls[x.weight()];
        c.first += v;
        ++c.second;
    }
    uint64_t pairs = 0, bad = 0;
    for (auto& [w, c] : cls) {
        pairs += c.second * (c.second - 1) / 2;
        bad += c.first * (c.second - c.first);  // mixed-value pairs
    }
    return {pairs, bad};
}

}  // namespace

Verdict blr_k_test(QueryOracle& oracle, uint32_t k, uint32_t repetitions, Rng& rng) {
    if (oracle.model() != QueryOracle::Model::Classic)
        throw ModelViolation("blr_k_test requires the classic model");
    if (k < 1) throw ContractError("blr_k_test: k >= 1 required");
    const uint32_t n = oracle.dim();
    try {
        for (uint32_t r = 0; r < repetitions; ++r) {
            BitVector sum(n);
            bool parity = false;
            for (uint32_t i = 0; i < 2 * k; ++i) {
                BitVector x = BitVector::random(n, rng);
                parity ^= oracle.query(x);
                sum ^= x;
            }
            if (oracle.query(sum) != parity)
                return {Outcome::Reject, oracle.spent(), "parity violation at repetition " + std::to_string(r)};
        }
    } catch (const BudgetExhausted&) {
        return {Outcome::Inconclusive, oracle.spent(), "budget exhausted mid-test"};
    }
    return {Outcome::Accept, oracle.spent(), ""};
}

Verdict active_linear_tester(QueryOracle& oracle, uint32_t repetitions, Rng& rng) {
    if (oracle.model() != QueryOracle::Model::Active)
        throw ModelViolation("active_linear_tester requires the active model");
    const auto& pool = oracle.pool();
    const uint32_t n = oracle.dim();
    const uint32_t u = uint32_t(pool.size());
    if (u < 4) return {Outcome::Inconclusive, oracle.spent(), "pool too small"};
    const uint32_t q = active_subset_size(n, u);

    SubsetSumSearcher searcher(pool);
    uint64_t size_sum = 0, size_count = 0;
    try {
        for (uint32_t r = 0; r < repetitions; ++r) {
            const uint32_t xi = uint32_t(rng.below(u));
            std::optional<std::vector<uint32_t>> subset;
            for (int attempt = 0; attempt < 8 && !subset; ++attempt) {
                // an empty subset is the valid dependency x = 0 (so f must give 0)
                subset = searcher.find(pool[xi], q, &rng);
                if (subset && std::find(subset->begin(), subset->end(), xi) != subset->end())
                    subset.reset();
            }
            if (!subset)
                return {Outcome::Inconclusive, oracle.spent(),
                        "no linear dependency found in pool (u below the n^2 regime?)"};
            size_sum += subset->size();
            ++size_count;
            bool parity = false;
            for (uint32_t j : *subset) parity ^= oracle.query_pool(j);
            if (oracle.query_pool(xi) != parity)
                return {Outcome::Reject, oracle.spent(),
                        "parity violation at repetition " + std::to_string(r)};
        }
    } catch (const BudgetExhausted&) {
        return {Outcome::Inconclusive, oracle.spent(), "budget exhausted mid-test"};
    }
    return {Outcome::Accept, oracle.spent(),
            "mean dependency size " + std::to_string(size_count ? double(size_sum) / double(size_count) : 0)};
}

Verdict passive_linear_tester(QueryOracle& oracle, uint32_t sample_size) {
    if (oracle.model() != QueryOracle::Model::Passive)
        throw ModelViolation("passive_linear_tester requires the passive model");
    const uint32_t n = oracle.dim();
    std::vector<BitVector> pts;
    BitVector vals(sample_size);
    try {
        for (uint32_t i = 0; i < sample_size; ++i) {
            auto [x, v] = oracle.next();
            pts.push_back(std::move(x));
            vals.set(i, v);
        }
    } catch (const BudgetExhausted&) {
        return {Outcome::Inconclusive, oracle.spent(), "sample exhausted"};
    }
    // Consistent with some linear function <=> the system a . x_i = v_i is solvable.
    auto sol = solve(Gf2Matrix::from_rows(pts), vals);
    if (!sol) return {Outcome::Reject, oracle.spent(), "no consistent linear function"};
    uint32_t spanning = rank(Gf2Matrix::from_rows(pts));
    return {Outcome::Accept, oracle.spent(),
            spanning == n ? "unique consistent linear function" : "underdetermined (rank deficient)"};
}

Verdict passive_polynomial_tester(QueryOracle& oracle, uint32_t d, uint32_t sample_size,
                                  uint32_t holdout) {
    if (oracle.model() != QueryOracle::Model::Passive)
        throw ModelViolation("passive_polynomial_tester requires the passive model");
    const uint32_t n = oracle.dim();
    const uint64_t nd = monomial_count(n, d);
    if (nd > (uint64_t(1) << 14)) throw CapacityError("passive_polynomial_tester: n_d > 2^14");
    if (holdout >= sample_size) throw ContractError("holdout must be smaller than sample size");
    MonomialBasis basis = MonomialBasis::make(n, d);

    const uint32_t train = sample_size - holdout;
    std::vector<BitVector> rows;
    BitVector vals(train);
    std::vector<Sample> hold;
    try {
        for (uint32_t i = 0; i < sample_size; ++i) {
            auto [x, v] = oracle.next();
            if (i < train) {
                rows.push_back(d_evaluation(x, basis));
                vals.set(i, v);
            } else {
                hold.emplace_back(std::move(x), v);
            }
        }
    } catch (const BudgetExhausted&) {
        return {Outcome::Inconclusive, oracle.spent(), "sample exhausted"};
    }
    auto coeffs = solve(Gf2Matrix::from_rows(rows), vals);
    if (!coeffs)
        return {Outcome::Reject, oracle.spent(), "inconsistent with every degree-d polynomial"};
    for (const auto& [x, v] : hold) {
        BitVector ev = d_evaluation(x, basis);
        bool pred = false;
        for (uint32_t j = 0; j < ev.dim(); ++j) pred ^= ev.get(j) && coeffs->get(j);
        if (pred != v)
            return {Outcome::Reject, oracle.spent(), "holdout disagreement with learned polynomial"};
    }
    return {Outcome::Accept, oracle.spent(), ""};
}

Verdict symmetric_tester(QueryOracle& oracle, uint32_t pair_budget, Rng& rng) {
    (void)rng;
    if (oracle.model() == QueryOracle::Model::Passive) {
        std::vector<Sample> seen;
        try {
            for (uint64_t i = oracle.spent(); i < oracle.budget(); ++i) seen.push_back(oracle.next());
        } catch (const BudgetExhausted&) {
        }
        auto [pairs, bad] = weight_class_violations(seen);
        if (bad > 0)
            return {Outcome::Reject, oracle.spent(), "same-weight pair with unequal values"};
        return {Outcome::Accept, oracle.spent(),
                pairs == 0 ? "vacuous: no same-weight pair observed" : "pairs=" + std::to_string(pairs)};
    }
    if (oracle.model() == QueryOracle::Model::Active) {
        auto pairs = same_weight_pairs(oracle.pool(), pair_budget);
        if (pairs.empty())
            return {Outcome::Inconclusive, oracle.spent(), "pool has no same-weight pair"};
        try {
            for (auto [i, j] : pairs)
                if (oracle.query_pool(i) != oracle.query_pool(j))
                    return {Outcome::Reject, oracle.spent(), "same-weight pair with unequal values"};
        } catch (const BudgetExhausted&) {
            return {Outcome::Inconclusive, oracle.spent(), "budget exhausted mid-test"};
        }
        return {Outcome::Accept, oracle.spent(), "pairs=" + std::to_string(pairs.size())};
    }
    throw ModelViolation("symmetric_tester requires the active or passive model");
}

Verdict tolerant_symmetric_tester(QueryOracle& oracle, uint32_t pair_budget,
                                  double eps_lo, double eps_hi, Rng& rng) {
    if (!(eps_lo < eps_hi)) throw ContractError("tolerant tester: eps_lo < eps_hi required");
    const double gap = eps_hi - eps_lo;
    const uint64_t needed = uint64_t(std::ceil(2.0 / (gap * gap)));

    uint64_t pairs = 0, bad = 0;
    if (oracle.model() == QueryOracle::Model::Passive) {
        std::vector<Sample> seen;
        try {
            for (uint64_t i = oracle.spent(); i < oracle.budget(); ++i) seen.push_back(oracle.next());
        } catch (const BudgetExhausted&) {
        }
        std::tie(pairs, bad) = weight_class_violations(seen);
    } else if (oracle.model() == QueryOracle::Model::Active) {
        auto selected = same_weight_pairs(oracle.pool(), pair_budget);
        try {
            for (auto [i, j] : selected) {
                ++pairs;
                bad += oracle.query_pool(i) != oracle.query_pool(j);
            }
        } catch (const BudgetExhausted&) {
            return {Outcome::Inconclusive, oracle.spent(), "budget exhausted mid-test"};
        }
    } else {
        throw ModelViolation("tolerant_symmetric_tester requires the active or passive model");
    }
    if (pairs < needed)
        return {Outcome::Inconclusive, oracle.spent(),
                "insufficient pairs: " + std::to_string(pairs) + " < " + std::to_string(needed)};
    // Calibrated per-pair violation rate for a function at distance delta:
    // both pair members disagree with the nearest symmetric function
    // independently with probability ~delta, so a pair violates with rate
    // ~2*delta*(1-delta). The threshold sits midway between the two rates.
    auto rate = [](double d) { return 2.0 * d * (1.0 - d); };
    const double threshold = 0.5 * (rate(eps_lo) + rate(eps_hi));
    const double observed = double(bad) / double(pairs);
    Outcome o = observed <= threshold ? Outcome::Accept : Outcome::Reject;
    return {o, oracle.spent(),
            "violation rate " + std::to_string(observed) + " vs threshold " + std::to_string(threshold)};
}

bool psf_consistency_check(std::span<const Sample> transcript,
                           const std::vector<uint32_t>& asym_set, uint32_t n) {
    std::unordered_map<uint64_t, bool> cls;
    for (const auto& [x, v] : transcript) {
        uint64_t a = 0;
        uint32_t wa = 0;
        for (size_t j = 0; j < asym_set.size(); ++j) {
            bool b = x.get(asym_set[j]);
            a |= uint64_t(b) << j;
            wa += b;
        }
        uint64_t key = a * (uint64_t(n) + 1) + (x.weight() - wa);
        auto [it, inserted] = cls.try_emplace(key, v);
        if (!inserted && it->second != v) return false;
    }
    return true;
}

Verdict psf_tester(QueryOracle& oracle, uint32_t k, uint32_t pair_budget, Rng& rng) {
    const uint32_t n = oracle.dim();
    if (binomial(n, k) > 100000) throw CapacityError("psf_tester: C(n,k) too large");

    std::vector<Sample> transcript;
    if (oracle.model() == QueryOracle::Model::Passive) {
        try {
            for (uint64_t i = oracle.spent(); i < oracle.budget(); ++i)
                transcript.push_back(oracle.next());
        } catch (const BudgetExhausted&) {
        }
    } else if (oracle.model() == QueryOracle::Model::Active) {
        auto pairs = same_weight_pairs(oracle.pool(), pair_budget);
        if (pairs.empty())
            return {Outcome::Inconclusive, oracle.spent(), "pool has no same-weight pair"};
        try {
            for (auto [i, j] : pairs) {
                transcript.emplace_back(oracle.pool()[i], oracle.query_pool(i));
                transcript.emplace_back(oracle.pool()[j], oracle.query_pool(j));
            }
        } catch (const BudgetExhausted&) {
            return {Outcome::Inconclusive, oracle.spent(), "budget exhausted mid-test"};
        }
    } else {
        throw ModelViolation("psf_tester requires the active or passive model");
    }
    (void)rng;

    bool found = false;
    std::vector<uint32_t> comb(k);
    for (uint32_t i = 0; i < k; ++i) comb[i] = i;
    if (k == 0) {
        found = psf_consistency_check(transcript, {}, n);
    } else {
        for (;;) {
            if (psf_consistency_check(transcript, comb, n)) {
                found = true;
                break;
            }
            int32_t i = int32_t(k) - 1;
            while (i >= 0 && comb[i] == n - k + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (uint32_t j = uint32_t(i) + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    if (found) return {Outcome::Accept, oracle.spent(), ""};
    return {Outcome::Reject, oracle.spent(), "no size-k asymmetric set is consistent"};
}

Verdict junta_passive_tester(QueryOracle& oracle, uint32_t k, uint32_t sample_size, double eps) {
    if (oracle.model() != QueryOracle::Model::Passive)
        throw ModelViolation("junta_passive_tester requires the passive model");
    const uint32_t n = oracle.dim();
    if (k > 4 || binomial(n, k) > 100000) throw CapacityError("junta_passive_tester: k or C(n,k) too large");

    std::vector<Sample> samples;
    try {
        for (uint32_t i = 0; i < sample_size; ++i) samples.push_back(oracle.next());
    } catch (const BudgetExhausted&) {
        return {Outcome::Inconclusive, oracle.spent(), "sample exhausted"};
    }
    const size_t train = samples.size() - samples.size() / 4;
    const size_t hold = samples.size() - train;
    if (hold == 0) return {Outcome::Inconclusive, oracle.spent(), "no holdout block"};

    auto pattern = [&](const BitVector& x, const std::vector<uint32_t>& vars) {
        uint64_t p = 0;
        for (size_t j = 0; j < vars.size(); ++j) p |= uint64_t(x.get(vars[j])) << j;
        return p;
    };

    uint64_t best_bad = UINT64_MAX;
    std::vector<uint32_t> best_vars;
    std::vector<uint32_t> comb(k);
    for (uint32_t i = 0; i < k; ++i) comb[i] = i;
    for (;;) {
        std::vector<std::pair<uint32_t, uint32_t>> cnt(size_t(1) << k, {0, 0});  // (ones, total)
        for (size_t i = 0; i < train; ++i) {
            auto& c = cnt[pattern(samples[i].first, comb)];
            c.first += samples[i].second;
            ++c.second;
        }
        uint64_t bad = 0;
        for (auto& [ones, total] : cnt) bad += std::min<uint32_t>(ones, total - ones);
        if (bad < best_bad) {
            best_bad = bad;
            best_vars = comb;
        }
        if (k == 0) break;
        int32_t i = int32_t(k) - 1;
        while (i >= 0 && comb[i] == n - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (uint32_t j = uint32_t(i) + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }

    // majority subtable for the chosen variable set
    std::vector<std::pair<uint32_t, uint32_t>> cnt(size_t(1) << k, {0, 0});
    for (size_t i = 0; i < train; ++i) {
        auto& c = cnt[pattern(samples[i].first, best_vars)];
        c.first += samples[i].second;
        ++c.second;
    }
    uint64_t bad = 0;
    for (size_t i = train; i < samples.size(); ++i) {
        auto& c = cnt[pattern(samples[i].first, best_vars)];
        bool pred = 2 * c.first > c.second;
        bad += pred != samples[i].second;
    }
    double rate = double(bad) / double(hold);
    Outcome o = rate > eps / 2 ? Outcome::Reject : Outcome::Accept;
    return {o, oracle.spent(), "holdout disagreement " + std::to_string(rate)};
}

LearnerOutput learn_consistent(const Family& fam, std::span<const Sample> samples) {
    std::vector<BooleanFunction> members = enumerate_family(fam);
    size_t best = 0;
    uint64_t best_bad = UINT64_MAX;
    for (size_t i = 0; i < members.size(); ++i) {
        uint64_t bad = 0;
        for (const auto& [x, v] : samples) bad += members[i].evaluate(x) != v;
        if (bad < best_bad) {
            best_bad = bad;
            best = i;
        }
    }
    return {std::move(members[best]), samples.size(), true};
}

LearnerOutput learn_via_net(const EpsilonNet& net, std::span<const Sample> samples) {
    if (net.members.empty()) throw ContractError("learn_via_net: empty net");
    size_t best = 0;
    uint64_t best_agree = 0;
    bool first = true;
    for (size_t i = 0; i < net.members.size(); ++i) {
        uint64_t agree = 0;
        for (const auto& [x, v] : samples) agree += net.members[i].evaluate(x) == v;
        if (first || agree > best_agree) {
            best_agree = agree;
            best = i;
            first = false;
        }
    }
    return {net.members[best], samples.size(), true};
}

Verdict learn_then_verify(const Family& fam, QueryOracle& oracle, const Learner& learner,
                          double eps, uint32_t learner_samples) {
    if (oracle.model() != QueryOracle::Model::Passive)
        throw ModelViolation("learn_then_verify requires the passive model");
    if (eps <= 0) throw ContractError("learn_then_verify: eps > 0 required");
    (void)fam;
    std::vector<Sample> prefix;
    try {
        for (uint32_t i = 0; i < learner_samples; ++i) prefix.push_back(oracle.next());
    } catch (const BudgetExhausted&) {
        return {Outcome::Inconclusive, oracle.spent(), "sample exhausted during learning"};
    }
    LearnerOutput hyp = learner(prefix);
    uint64_t checked = 0, bad = 0;
    const uint64_t want = uint64_t(std::ceil(32.0 / eps));
    try {
        for (uint64_t i = 0; i < want; ++i) {
            auto [x, v] = oracle.next();
            ++checked;
            bad += hyp.hypothesis.evaluate(x) != v;
        }
    } catch (const BudgetExhausted&) {
        if (checked == 0)
            return {Outcome::Inconclusive, oracle.spent(), "no verification points available"};
    }
    double rate = double(bad) / double(checked);
    Outcome o = rate > 0.75 * eps ? Outcome::Reject : Outcome::Accept;
    return {o, oracle.spent(), "verification disagreement " + std::to_string(rate)};
}

}  // namespace bft
