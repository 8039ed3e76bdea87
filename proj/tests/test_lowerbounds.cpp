#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "bft/gf2.hpp"
#include "bft/lowerbounds.hpp"

using namespace bft;

namespace {

// Test-local oracle: enumerate all k-subsets directly.
uint64_t naive_count(const AbelianGroup& g, const std::vector<uint64_t>& X, uint64_t y,
                     uint32_t k) {
    const uint32_t n = uint32_t(X.size());
    if (k > n) return 0;
    std::vector<uint32_t> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    uint64_t cnt = 0;
    for (;;) {
        uint64_t s = 0;
        for (uint32_t i : comb) s = g.op(s, X[i]);
        cnt += s == y;
        if (k == 0) return cnt;
        int32_t i = int32_t(k) - 1;
        while (i >= 0 && comb[i] == n - k + i) --i;
        if (i < 0) return cnt;
        ++comb[i];
        for (uint32_t j = uint32_t(i) + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
}

}  // namespace

TEST_CASE("group laws hold exhaustively for small orders") {
    CHECK(AbelianGroup::boolean(0).laws_hold());
    CHECK(AbelianGroup::boolean(5).laws_hold());
    for (uint64_t N : {1ull, 2ull, 7ull, 24ull, 64ull}) CHECK(AbelianGroup::cyclic(N).laws_hold());
}

TEST_CASE("column distribution at k=1 is the column frequency") {
    Rng rng(61);
    const uint32_t n = 30, q = 5;
    std::vector<BitVector> S;
    for (uint32_t j = 0; j < q; ++j) S.push_back(BitVector::random(n, rng));
    PiHistogram h = pi_histogram(S, 1);
    for (uint64_t y = 0; y < (1u << q); ++y) {
        uint64_t freq = 0;
        for (uint32_t i = 0; i < n; ++i) {
            uint64_t col = 0;
            for (uint32_t j = 0; j < q; ++j) col |= uint64_t(S[j].get(i)) << j;
            freq += col == y;
        }
        CHECK(h.counts[y] == freq);
    }
}

TEST_CASE("all-zero points put all mass on y=0") {
    std::vector<BitVector> S(4, BitVector(10));
    for (uint32_t k : {1u, 2u, 3u}) {
        PiHistogram h = pi_histogram(S, k);
        CHECK(h.at(0) == Rational{1, 1});
        Rational pi0 = pi_S(S, BitVector(4), k);
        CHECK(pi0 == Rational{1, 1});
    }
}

TEST_CASE("distribution sums to one for every point set") {
    Rng rng(62);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<BitVector> S;
        uint32_t q = 3 + uint32_t(rng.below(5));
        for (uint32_t j = 0; j < q; ++j) S.push_back(BitVector::random(24, rng));
        uint32_t k = 1 + uint32_t(rng.below(3));
        PiHistogram h = pi_histogram(S, k);
        uint64_t total = std::accumulate(h.counts.begin(), h.counts.end(), uint64_t(0));
        CHECK(total == h.total);
        CHECK(h.total == binomial(24, k));
    }
}

TEST_CASE("tv distance basics") {
    std::vector<double> p = {0.5, 0.5, 0.0}, u = {0.0, 0.0, 1.0};
    CHECK(tv_distance(p, p) == doctest::Approx(0.0));
    CHECK(tv_distance(p, u) == doctest::Approx(1.0));
    std::vector<double> bad = {0.5, 0.2, 0.0};
    CHECK_THROWS_AS(tv_distance(p, bad), ContractError);
    std::vector<double> shorter = {1.0};
    CHECK_THROWS_AS(tv_distance(p, shorter), ContractError);
}

TEST_CASE("sumset count on the worked example") {
    AbelianGroup z2 = AbelianGroup::cyclic(2);
    std::vector<uint64_t> X = {0, 0, 1, 1};
    CHECK(sumset_Y_count(z2, X, 0, 2) == 2);  // {1,2} and {3,4}
    CHECK(sumset_Y_count(z2, X, 1, 2) == 4);
    CHECK(sumset_Y_count(z2, X, 1, 1) == 2);  // k=1 counts matching elements
}

TEST_CASE("sumset counts sum to C(n,k) over the group") {
    Rng rng(63);
    for (auto g : {AbelianGroup::boolean(4), AbelianGroup::cyclic(11)}) {
        std::vector<uint64_t> X(18);
        for (auto& e : X) e = g.random_element(rng);
        for (uint32_t k : {1u, 2u, 3u}) {
            uint64_t total = 0;
            for (uint64_t y = 0; y < g.order; ++y) total += sumset_Y_count(g, X, y, k);
            CHECK(total == binomial(18, k));
        }
    }
}

TEST_CASE("convolution counting path equals naive enumeration") {
    Rng rng(64);
    // n chosen so C(n,k) exceeds the direct-enumeration cap
    AbelianGroup g = AbelianGroup::boolean(6);
    {
        const uint32_t n = 240, k = 3;  // C = 2,275,280
        std::vector<uint64_t> X(n);
        for (auto& e : X) e = g.random_element(rng);
        for (uint64_t y : {0ull, 17ull, 63ull})
            CHECK(sumset_Y_count(g, X, y, k) == naive_count(g, X, y, k));
    }
    {
        AbelianGroup zc = AbelianGroup::cyclic(37);
        const uint32_t n = 92, k = 4;  // C = 2,794,155
        std::vector<uint64_t> X(n);
        for (auto& e : X) e = zc.random_element(rng);
        for (uint64_t y : {0ull, 5ull, 36ull})
            CHECK(sumset_Y_count(zc, X, y, k) == naive_count(zc, X, y, k));
    }
}

TEST_CASE("near-uniformity criterion at q=1, k=1 is a frequency threshold") {
    // single query point: pi(y) is the fraction of coordinates equal to y;
    // violation iff some value's frequency >= 3/5
    const uint32_t n = 10;
    BitVector p(n);
    for (uint32_t i = 0; i < 5; ++i) p.set(i, true);  // balanced: 1/2 < 3/5
    Rng rng(65);
    auto rep = near_uniformity_criterion({p}, 1, 1, 1, rng);
    CHECK(rep.violation_rate == doctest::Approx(0.0));
    BitVector skew(n);
    for (uint32_t i = 0; i < 7; ++i) skew.set(i, true);  // 7/10 >= 3/5
    auto rep2 = near_uniformity_criterion({skew}, 1, 1, 1, rng);
    CHECK(rep2.violation_rate > 0.0);
}

TEST_CASE("sumset concentration experiment reports a sane mean and regime") {
    Rng rng(66);
    AbelianGroup g = AbelianGroup::boolean(4);
    auto rep = sumset_concentration_experiment(g, 24, 2, 0, 2000, rng);
    CHECK(rep.expected == doctest::Approx(276.0 / 16.0));
    CHECK(std::abs(rep.mean - rep.expected) / rep.expected < 0.05);
    CHECK(rep.tail_lo <= rep.tail_rate);
    CHECK(rep.tail_hi >= rep.tail_rate);
    CHECK((rep.regime == "in-regime" || rep.regime == "out-of-regime"));
}

TEST_CASE("in-regime tails are small, out-of-regime tails need not be") {
    Rng rng(67);
    AbelianGroup g = AbelianGroup::boolean(4);
    // in regime: E[Y] = 2304 and Y is binomial, so the E/5 tail is ~15 sigma
    auto good = sumset_concentration_experiment(g, 36864, 1, 0, 300, rng);
    CHECK(good.regime == "in-regime");
    CHECK(good.tail_rate < 0.05);
    // out of regime: E[Y] < 1, so Y = 0 (no colliding pair among 6 draws)
    // is itself a tail event and occurs with constant probability
    auto bad = sumset_concentration_experiment(g, 6, 2, 0, 300, rng);
    CHECK(bad.regime == "out-of-regime");
    CHECK(bad.tail_rate > 0.3);
    CHECK(good.tail_rate < bad.tail_rate);
}

TEST_CASE("delta system worked examples") {
    auto ds1 = find_delta_system({{1, 2}, {3, 4}, {5, 6}}, 3);
    REQUIRE(ds1.has_value());
    CHECK(ds1->core.empty());
    CHECK(verify_delta_system({{1, 2}, {3, 4}, {5, 6}}, *ds1));

    auto ds2 = find_delta_system({{1, 2}, {1, 3}, {1, 4}}, 3);
    REQUIRE(ds2.has_value());
    CHECK(ds2->core == std::vector<uint32_t>{1});
    CHECK(verify_delta_system({{1, 2}, {1, 3}, {1, 4}}, *ds2));
}

TEST_CASE("threshold guarantee: 2-sets, 16 distinct sets always give 3 petals") {
    CHECK(delta_system_threshold(3, 2) == 16);
    Rng rng(68);
    for (int rep = 0; rep < 300; ++rep) {
        std::set<std::pair<uint32_t, uint32_t>> chosen;
        while (chosen.size() < 16) {
            uint32_t a = uint32_t(rng.below(12)), b = uint32_t(rng.below(12));
            if (a == b) continue;
            chosen.insert({std::min(a, b), std::max(a, b)});
        }
        std::vector<std::vector<uint32_t>> sets;
        for (auto [a, b] : chosen) sets.push_back({a, b});
        auto ds = find_delta_system(sets, 3);
        REQUIRE(ds.has_value());
        CHECK(verify_delta_system(sets, *ds));
    }
}

TEST_CASE("verifier rejects families whose intersections differ") {
    std::vector<std::vector<uint32_t>> sets = {{1, 2}, {2, 3}, {4, 5}};
    DeltaSystem fake{{}, {0, 1, 2}};  // {1,2} and {2,3} share 2, others nothing
    CHECK(!verify_delta_system(sets, fake));
}

TEST_CASE("walk distribution with every generator mixes in one step") {
    std::vector<uint64_t> all(32);
    std::iota(all.begin(), all.end(), 0);
    auto tv = walk_tv(32, all, 1);
    CHECK(tv[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("single generator stays far from uniform by support counting") {
    const uint64_t N = 101;
    auto tv = walk_tv(N, {7}, 5);
    for (uint32_t t = 1; t <= 5; ++t) CHECK(tv[t - 1] >= 1.0 - double(t + 1) / double(N) - 1e-9);
}

TEST_CASE("averaged mixing decreases with step count") {
    Rng rng(69);
    auto rep = cayley_mixing_experiment(500, 12, 4, 5, rng);
    for (size_t s = 1; s < rep.tv_mean.size(); ++s) CHECK(rep.tv_mean[s] <= rep.tv_mean[s - 1] + 1e-9);
}
