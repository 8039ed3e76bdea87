#include "bft/lowerbounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "bft/errors.hpp"
#include "bft/gf2.hpp"
#include "bft/stats.hpp"

namespace bft {

AbelianGroup AbelianGroup::boolean(uint32_t q) {
    if (q > 26) throw CapacityError("AbelianGroup: 2^q too large");
    return {Kind::Boolean, uint64_t(1) << q};
}

AbelianGroup AbelianGroup::cyclic(uint64_t N) {
    if (N == 0) throw ContractError("AbelianGroup: order must be positive");
    return {Kind::Cyclic, N};
}

bool AbelianGroup::laws_hold() const {
    if (order > 64) throw CapacityError("laws_hold: exhaustive check limited to order <= 64");
    for (uint64_t a = 0; a < order; ++a) {
        if (op(identity(), a) != a || op(a, identity()) != a) return false;
        if (op(a, inverse(a)) != identity()) return false;
        for (uint64_t b = 0; b < order; ++b) {
            if (op(a, b) != op(b, a)) return false;
            for (uint64_t c = 0; c < order; ++c)
                if (op(op(a, b), c) != op(a, op(b, c))) return false;
        }
    }
    return true;
}

namespace {

constexpr uint64_t kEnumCap = 2000000;

using I128 = __int128;

// m-fold sum of a single element.
uint64_t repeat(const AbelianGroup& g, uint64_t e, uint32_t m) {
    if (g.kind == AbelianGroup::Kind::Boolean) return (m & 1) ? e : 0;
    return (I128(e) * m) % g.order;
}

std::vector<int64_t> convolve(const AbelianGroup& g, const std::vector<int64_t>& a,
                              const std::vector<int64_t>& b) {
    const uint64_t N = g.order;
    if (g.kind == AbelianGroup::Kind::Boolean) {
        std::vector<I128> fa(a.begin(), a.end()), fb(b.begin(), b.end());
        for (auto* v : {&fa, &fb})
            for (uint64_t h = 1; h < N; h <<= 1)
                for (uint64_t i = 0; i < N; i += h << 1)
                    for (uint64_t j = i; j < i + h; ++j) {
                        I128 x = (*v)[j], y = (*v)[j + h];
                        (*v)[j] = x + y;
                        (*v)[j + h] = x - y;
                    }
        for (uint64_t i = 0; i < N; ++i) fa[i] *= fb[i];
        for (uint64_t h = 1; h < N; h <<= 1)
            for (uint64_t i = 0; i < N; i += h << 1)
                for (uint64_t j = i; j < i + h; ++j) {
                    I128 x = fa[j], y = fa[j + h];
                    fa[j] = x + y;
                    fa[j + h] = x - y;
                }
        std::vector<int64_t> out(N);
        for (uint64_t i = 0; i < N; ++i) out[i] = int64_t(fa[i] / I128(N));
        return out;
    }
    if (N > 65536) throw CapacityError("convolve: cyclic order > 65536");
    std::vector<I128> acc(N, 0);
    for (uint64_t x = 0; x < N; ++x) {
        if (a[x] == 0) continue;
        for (uint64_t z = 0; z < N; ++z) acc[(x + z) % N] += I128(a[x]) * b[z];
    }
    std::vector<int64_t> out(N);
    for (uint64_t i = 0; i < N; ++i) out[i] = int64_t(acc[i]);
    return out;
}

// counts[y] = number of k-subsets of elems summing to y, for every y.
// Direct enumeration when C(n,k) is small; otherwise exact counting via the
// partition-lattice expansion of distinct-index tuple counts (k <= 4), which
// needs only group convolutions of the element histogram.
std::vector<uint64_t> subset_sum_counts(const AbelianGroup& g, const std::vector<uint64_t>& elems,
                                        uint32_t k) {
    const uint64_t N = g.order;
    const uint32_t n = uint32_t(elems.size());
    if (k > n) return std::vector<uint64_t>(N, 0);
    std::vector<uint64_t> counts(N, 0);
    if (binomial(n, k) <= kEnumCap) {
        std::vector<uint32_t> comb(k);
        std::iota(comb.begin(), comb.end(), 0);
        for (;;) {
            uint64_t s = 0;
            for (uint32_t i : comb) s = g.op(s, elems[i]);
            ++counts[s];
            if (k == 0) break;
            int32_t i = int32_t(k) - 1;
            while (i >= 0 && comb[i] == n - k + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (uint32_t j = uint32_t(i) + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        }
        return counts;
    }
    if (k > 4) throw CapacityError("subset_sum_counts: C(n,k) too large for k > 4");

    // p[m][g] = #{i : m-fold sum of elems[i] equals g}
    std::vector<std::vector<int64_t>> p(k + 1, std::vector<int64_t>(N, 0));
    for (uint32_t m = 1; m <= k; ++m)
        for (uint64_t e : elems) ++p[m][repeat(g, e, m)];

    std::vector<int64_t> Nk;
    auto C = [&](const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
        return convolve(g, a, b);
    };
    switch (k) {
        case 1:
            Nk = p[1];
            break;
        case 2: {
            Nk = C(p[1], p[1]);
            for (uint64_t i = 0; i < N; ++i) Nk[i] -= p[2][i];
            break;
        }
        case 3: {
            Nk = C(C(p[1], p[1]), p[1]);
            auto t = C(p[2], p[1]);
            for (uint64_t i = 0; i < N; ++i) Nk[i] += -3 * t[i] + 2 * p[3][i];
            break;
        }
        default: {  // k == 4
            auto p11 = C(p[1], p[1]);
            Nk = C(p11, p11);
            auto t211 = C(p[2], p11);
            auto t22 = C(p[2], p[2]);
            auto t31 = C(p[3], p[1]);
            for (uint64_t i = 0; i < N; ++i)
                Nk[i] += -6 * t211[i] + 3 * t22[i] + 8 * t31[i] - 6 * p[4][i];
            break;
        }
    }
    uint64_t fact = 1;
    for (uint32_t i = 2; i <= k; ++i) fact *= i;
    for (uint64_t i = 0; i < N; ++i) {
        if (Nk[i] < 0 || Nk[i] % int64_t(fact) != 0)
            throw ContractError("subset_sum_counts: internal count not divisible by k!");
        counts[i] = uint64_t(Nk[i]) / fact;
    }
    return counts;
}

std::vector<uint64_t> coordinate_columns(const std::vector<BitVector>& S) {
    if (S.empty()) throw ContractError("empty point set");
    const uint32_t q = uint32_t(S.size());
    if (q > 26) throw CapacityError("more than 26 points");
    const uint32_t n = S[0].dim();
    std::vector<uint64_t> cols(n, 0);
    for (uint32_t j = 0; j < q; ++j) {
        if (S[j].dim() != n) throw ContractError("point dimension mismatch");
        for (uint32_t i = 0; i < n; ++i) cols[i] |= uint64_t(S[j].get(i)) << j;
    }
    return cols;
}

}  // namespace

std::vector<double> PiHistogram::to_distribution() const {
    std::vector<double> p(counts.size());
    for (size_t i = 0; i < counts.size(); ++i) p[i] = double(counts[i]) / double(total);
    return p;
}

PiHistogram pi_histogram(const std::vector<BitVector>& S, uint32_t k) {
    const uint32_t q = uint32_t(S.size());
    auto cols = coordinate_columns(S);
    AbelianGroup g = AbelianGroup::boolean(q);
    PiHistogram h;
    h.q = q;
    h.total = binomial(cols.size(), k);
    h.counts = subset_sum_counts(g, cols, k);
    return h;
}

Rational pi_S(const std::vector<BitVector>& S, const BitVector& y, uint32_t k) {
    if (y.dim() != S.size()) throw ContractError("pi_S: y dimension must equal |S|");
    PiHistogram h = pi_histogram(S, k);
    return h.at(y.to_index());
}

CriterionReport near_uniformity_criterion(const std::vector<BitVector>& pool, uint32_t q,
                                          uint32_t k, uint32_t trials, Rng& rng) {
    if (q > pool.size()) throw ContractError("criterion: q exceeds pool size");
    CriterionReport rep;
    rep.trials = trials;
    rep.q = q;
    uint64_t violating = 0;
    const uint64_t points = uint64_t(trials) << q;
    for (uint32_t t = 0; t < trials; ++t) {
        // Floyd's algorithm for a random q-subset of the pool
        std::set<uint64_t> idx;
        for (uint64_t j = pool.size() - q; j < pool.size(); ++j) {
            uint64_t r = rng.below(j + 1);
            if (!idx.insert(r).second) idx.insert(j);
        }
        std::vector<BitVector> S;
        for (uint64_t i : idx) S.push_back(pool[i]);
        PiHistogram h = pi_histogram(S, k);
        for (uint64_t y = 0; y < h.counts.size(); ++y) {
            // violation: pi(y) >= (6/5) 2^{-q}, compared as exact integers
            bool viol = I128(h.counts[y]) * 5 * (I128(1) << q) >= I128(6) * h.total;
            violating += viol;
            rep.max_pi = std::max(rep.max_pi, double(h.counts[y]) / double(h.total));
        }
    }
    rep.violation_rate = double(violating) / double(points);
    return rep;
}

double tv_distance(std::span<const double> p, std::span<const double> u) {
    if (p.size() != u.size()) throw ContractError("tv_distance: support size mismatch");
    double sp = 0, su = 0, tv = 0;
    for (size_t i = 0; i < p.size(); ++i) {
        sp += p[i];
        su += u[i];
        tv += std::abs(p[i] - u[i]);
    }
    if (std::abs(sp - 1.0) > 1e-9 || std::abs(su - 1.0) > 1e-9)
        throw ContractError("tv_distance: inputs not normalized");
    return tv / 2;
}

uint64_t sumset_Y_count(const AbelianGroup& g, const std::vector<uint64_t>& X, uint64_t y,
                        uint32_t k) {
    if (y >= g.order) throw ContractError("sumset_Y_count: target outside group");
    if (binomial(X.size(), k) > 100000000) throw CapacityError("sumset_Y_count: C(n,k) > 1e8");
    return subset_sum_counts(g, X, k)[y];
}

SumsetReport sumset_concentration_experiment(const AbelianGroup& g, uint32_t n, uint32_t k,
                                             uint64_t y, uint32_t trials, Rng& rng) {
    SumsetReport rep;
    rep.trials = trials;
    const double N = double(g.order);
    rep.expected = double(binomial(n, k)) / N;
    double sum = 0;
    for (uint32_t t = 0; t < trials; ++t) {
        std::vector<uint64_t> X(n);
        for (auto& e : X) e = g.random_element(rng);
        uint64_t Y = sumset_Y_count(g, X, y, k);
        sum += double(Y);
        if (std::abs(double(Y) - rep.expected) > rep.expected / 5) ++rep.tail_exceed;
    }
    rep.mean = sum / trials;
    rep.tail_rate = double(rep.tail_exceed) / trials;
    std::tie(rep.tail_lo, rep.tail_hi) = wilson_interval(rep.tail_exceed, trials);
    // condition (b): C(n,k-1) <= lambda N / (k 2^k)  =>  lower bound on lambda
    // condition (a): C(n,k)  >= 800 ln2 k N lambda^{2k+1}  =>  upper bound
    rep.lambda_min = k == 0 ? 0 : double(binomial(n, k - 1)) * k * std::ldexp(1.0, int(k)) / N;
    rep.lambda_max =
        std::pow(double(binomial(n, k)) / (800.0 * std::log(2.0) * k * N), 1.0 / (2.0 * k + 1));
    rep.regime = (rep.lambda_max >= std::max(1.0, rep.lambda_min)) ? "in-regime" : "out-of-regime";
    return rep;
}

uint64_t delta_system_threshold(uint32_t a, uint32_t b) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < b + 1; ++i) v *= (a - 1);
    for (uint32_t i = 2; i <= b; ++i) v *= i;
    return v;
}

namespace {

std::optional<DeltaSystem> delta_rec(std::vector<std::pair<uint32_t, std::vector<uint32_t>>> fam,
                                     uint32_t a, std::vector<uint32_t> core) {
    if (a == 0) return DeltaSystem{std::move(core), {}};
    if (fam.empty()) return std::nullopt;

    // greedy maximal pairwise-disjoint subfamily, input order
    std::vector<uint32_t> picked;
    std::set<uint32_t> used;
    for (size_t i = 0; i < fam.size(); ++i) {
        bool clash = false;
        for (uint32_t e : fam[i].second)
            if (used.count(e)) {
                clash = true;
                break;
            }
        if (clash) continue;
        picked.push_back(uint32_t(i));
        used.insert(fam[i].second.begin(), fam[i].second.end());
    }
    if (picked.size() >= a) {
        DeltaSystem ds;
        ds.core = std::move(core);
        for (uint32_t i = 0; i < a; ++i) ds.members.push_back(fam[picked[i]].first);
        return ds;
    }
    if (fam[0].second.empty()) return std::nullopt;

    // most popular element, smallest value on ties
    std::map<uint32_t, uint32_t> freq;
    for (auto& [id, s] : fam)
        for (uint32_t e : s) ++freq[e];
    uint32_t best = 0, best_cnt = 0;
    for (auto [e, c] : freq)
        if (c > best_cnt) {
            best = e;
            best_cnt = c;
        }

    std::vector<std::pair<uint32_t, std::vector<uint32_t>>> sub;
    for (auto& [id, s] : fam)
        if (std::find(s.begin(), s.end(), best) != s.end()) {
            std::vector<uint32_t> r;
            for (uint32_t e : s)
                if (e != best) r.push_back(e);
            sub.emplace_back(id, std::move(r));
        }
    core.push_back(best);
    return delta_rec(std::move(sub), a, std::move(core));
}

}  // namespace

std::optional<DeltaSystem> find_delta_system(const std::vector<std::vector<uint32_t>>& sets,
                                             uint32_t a) {
    if (a == 0) throw ContractError("find_delta_system: a >= 1 required");
    if (sets.empty()) return std::nullopt;
    const size_t b = sets[0].size();
    std::vector<std::pair<uint32_t, std::vector<uint32_t>>> fam;
    for (uint32_t i = 0; i < sets.size(); ++i) {
        if (sets[i].size() != b) throw ContractError("find_delta_system: unequal set sizes");
        auto s = sets[i];
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ContractError("find_delta_system: repeated element in a set");
        fam.emplace_back(i, std::move(s));
    }
    auto ds = delta_rec(std::move(fam), a, {});
    if (ds) std::sort(ds->core.begin(), ds->core.end());
    return ds;
}

bool verify_delta_system(const std::vector<std::vector<uint32_t>>& sets, const DeltaSystem& ds) {
    if (ds.members.empty()) return false;
    for (uint32_t i : ds.members)
        if (i >= sets.size()) return false;
    if (ds.members.size() == 1) return true;
    std::set<uint32_t> core(ds.core.begin(), ds.core.end());
    std::vector<std::set<uint32_t>> ms;
    for (uint32_t i : ds.members) {
        if (i >= sets.size()) return false;
        std::set<uint32_t> s(sets[i].begin(), sets[i].end());
        if (!std::includes(s.begin(), s.end(), core.begin(), core.end())) return false;
        ms.push_back(std::move(s));
    }
    for (size_t i = 0; i < ms.size(); ++i)
        for (size_t j = i + 1; j < ms.size(); ++j) {
            std::vector<uint32_t> inter;
            std::set_intersection(ms[i].begin(), ms[i].end(), ms[j].begin(), ms[j].end(),
                                  std::back_inserter(inter));
            if (std::set<uint32_t>(inter.begin(), inter.end()) != core) return false;
        }
    return true;
}

std::vector<double> walk_tv(uint64_t N, const std::vector<uint64_t>& generators, uint32_t steps) {
    if (N > 1000000) throw CapacityError("walk_tv: N > 1e6");
    if (generators.empty()) throw ContractError("walk_tv: need at least one generator");
    for (uint64_t g : generators)
        if (g >= N) throw ContractError("walk_tv: generator outside the group");
    const double uni = 1.0 / double(N);
    const size_t d = generators.size();
    std::vector<double> p(N, 0.0), q(N);
    p[0] = 1.0;
    std::vector<double> out;
    for (uint32_t s = 0; s < steps; ++s) {
        std::fill(q.begin(), q.end(), 0.0);
        for (uint64_t g : generators)
            for (uint64_t x = 0; x < N; ++x) q[(x + g) % N] += p[x];
        for (auto& v : q) v /= double(d);
        p.swap(q);
        double tv = 0;
        for (double v : p) tv += std::abs(v - uni);
        out.push_back(tv / 2);
    }
    return out;
}

MixingReport cayley_mixing_experiment(uint64_t N, uint32_t d, uint32_t steps, uint32_t trials,
                                      Rng& rng) {
    if (d == 0 || trials == 0) throw ContractError("cayley_mixing_experiment: d, trials >= 1");
    MixingReport rep;
    rep.N = N;
    rep.d = d;
    rep.trials = trials;
    rep.tv_mean.assign(steps, 0.0);
    for (uint32_t t = 0; t < trials; ++t) {
        std::vector<uint64_t> gens(d);
        for (auto& g : gens) g = rng.below(N);
        std::vector<double> tv = walk_tv(N, gens, steps);
        for (uint32_t s = 0; s < steps; ++s) rep.tv_mean[s] += tv[s];
    }
    for (auto& v : rep.tv_mean) v /= trials;
    return rep;
}

}  // namespace bft
