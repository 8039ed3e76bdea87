#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "bft/bitvector.hpp"
#include "bft/boolfn.hpp"
#include "bft/fourier.hpp"
#include "bft/rng.hpp"

using namespace bft;

TEST_CASE("rng is a pure function of seed and counter") {
    Rng a(42), b(42), c(43);
    std::vector<uint64_t> va, vb;
    for (int i = 0; i < 64; ++i) {
        va.push_back(a.next());
        vb.push_back(b.next());
    }
    CHECK(va == vb);
    CHECK(c.next() != va[0]);
}

TEST_CASE("derived streams do not overlap with the parent or each other") {
    Rng master(7);
    Rng s1 = master.stream(1), s2 = master.stream(2);
    std::map<uint64_t, int> seen;
    for (int i = 0; i < 1000; ++i) {
        ++seen[master.next()];
        ++seen[s1.next()];
        ++seen[s2.next()];
    }
    for (auto& [v, c] : seen) CHECK(c == 1);
}

TEST_CASE("below is unbiased enough: chi-square over 10 buckets") {
    Rng rng(5);
    const int draws = 100000, buckets = 10;
    std::vector<int> cnt(buckets, 0);
    for (int i = 0; i < draws; ++i) ++cnt[rng.below(buckets)];
    double chi2 = 0, exp = double(draws) / buckets;
    for (int c : cnt) chi2 += (c - exp) * (c - exp) / exp;
    CHECK(chi2 < 27.88);  // 0.999 quantile, 9 df
}

TEST_CASE("below respects its bound including non powers of two") {
    Rng rng(9);
    for (uint64_t m : {1ull, 3ull, 7ull, 1000ull, (1ull << 33) + 5}) {
        for (int i = 0; i < 200; ++i) CHECK(rng.below(m) < m);
    }
}

TEST_CASE("bitvector index round trip and weight") {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        uint32_t n = 1 + uint32_t(rng.below(60));
        uint64_t idx = rng.next() & ((n >= 64) ? ~0ull : ((1ull << n) - 1));
        BitVector v = BitVector::from_index(n, idx);
        CHECK(v.to_index() == idx);
        CHECK(v.weight() == uint32_t(std::popcount(idx)));
    }
}

TEST_CASE("bitvector xor is coordinatewise") {
    Rng rng(2);
    BitVector a = BitVector::random(100, rng), b = BitVector::random(100, rng);
    BitVector c = a ^ b;
    for (uint32_t i = 0; i < 100; ++i) CHECK(c.get(i) == (a.get(i) != b.get(i)));
}

TEST_CASE("klinear evaluates to the parity of its variables") {
    Rng rng(3);
    auto f = make_klinear(12, {0, 3, 7});
    for (int i = 0; i < 200; ++i) {
        BitVector x = BitVector::random(12, rng);
        CHECK(f.evaluate(x) == (x.get(0) ^ x.get(3) ^ x.get(7)));
    }
}

TEST_CASE("truth_table agrees with evaluate for every representation") {
    Rng rng(4);
    const uint32_t n = 8;
    std::vector<BooleanFunction> fns;
    fns.push_back(make_klinear(n, {1, 2, 5}));
    fns.push_back(make_seeded_random(n, 99));
    fns.emplace_back(n, Junta{{0, 4}, {0b0110}});
    fns.emplace_back(n, Gf2Polynomial{{{0, 1}, {2}, {}}});
    {
        PartiallySymmetric p;
        p.asym = {3};
        p.table.assign(1, 0);
        for (uint32_t i = 0; i < 2 * (n - 1 + 1); ++i)
            if (rng.bit()) p.table[0] |= uint64_t(1) << i;
        fns.emplace_back(n, std::move(p));
    }
    for (const auto& f : fns) {
        TruthTable t = truth_table(f);
        for (uint64_t idx = 0; idx < t.size(); ++idx)
            CHECK(t.get(idx) == f.evaluate(BitVector::from_index(n, idx)));
    }
}

TEST_CASE("partially symmetric: value depends only on (assignment, outside weight)") {
    const uint32_t n = 9;
    Rng rng(11);
    PartiallySymmetric p;
    p.asym = {2, 6};
    uint64_t cells = 4 * (n - 2 + 1);
    p.table.assign((cells + 63) / 64, 0);
    for (uint64_t i = 0; i < cells; ++i)
        if (rng.bit()) p.table[i >> 6] |= uint64_t(1) << (i & 63);
    BooleanFunction f(n, p);
    for (int rep = 0; rep < 300; ++rep) {
        BitVector x = BitVector::random(n, rng);
        // swap two non-asymmetric coordinates; value must not change
        uint32_t i = 0, j = 1;
        do { i = uint32_t(rng.below(n)); } while (i == 2 || i == 6);
        do { j = uint32_t(rng.below(n)); } while (j == 2 || j == 6 || j == i);
        BitVector y = x;
        bool bi = y.get(i);
        y.set(i, y.get(j));
        y.set(j, bi);
        CHECK(f.evaluate(x) == f.evaluate(y));
    }
}

TEST_CASE("seeded random functions are balanced and seed-sensitive") {
    const uint32_t n = 14;
    auto f = make_seeded_random(n, 1), g = make_seeded_random(n, 2);
    uint64_t ones = 0, diff = 0;
    for (uint64_t i = 0; i < (1u << n); ++i) {
        BitVector x = BitVector::from_index(n, i);
        ones += f.evaluate(x);
        diff += f.evaluate(x) != g.evaluate(x);
    }
    double N = double(1u << n);
    CHECK(std::abs(ones / N - 0.5) < 0.02);
    CHECK(std::abs(diff / N - 0.5) < 0.02);
}

TEST_CASE("exact_distance is a metric and estimate_distance tracks it") {
    Rng rng(6);
    auto f = make_seeded_random(10, 3);
    auto g = make_seeded_random(10, 4);
    CHECK(exact_distance(f, f).num == 0);
    Rational dfg = exact_distance(f, g), dgf = exact_distance(g, f);
    CHECK(dfg == dgf);
    double est = estimate_distance(f, g, 20000, rng);
    CHECK(std::abs(est - dfg.value()) < 0.02);
}

// Quadratic-time transform oracle: coefficient of S by direct correlation.
static std::vector<double> naive_wht(const TruthTable& t) {
    uint64_t N = t.size();
    std::vector<double> coef(N, 0.0);
    for (uint64_t s = 0; s < N; ++s) {
        int64_t acc = 0;
        for (uint64_t x = 0; x < N; ++x) {
            bool parity = std::popcount(x & s) & 1;
            acc += (t.get(x) ^ parity) ? -1 : 1;
        }
        coef[s] = double(acc) / double(N);
    }
    return coef;
}

TEST_CASE("fast transform equals the quadratic oracle at n=8") {
    Rng rng(7);
    TruthTable t = TruthTable::zeros(8);
    for (uint64_t i = 0; i < t.size(); ++i) t.set(i, rng.bit());
    FourierSpectrum s = walsh_hadamard(t);
    auto slow = naive_wht(t);
    for (uint64_t m = 0; m < t.size(); ++m) CHECK(s.coef[m] == doctest::Approx(slow[m]).epsilon(1e-12));
}

TEST_CASE("squared coefficients sum to one") {
    Rng rng(8);
    for (int rep = 0; rep < 20; ++rep) {
        TruthTable t = TruthTable::zeros(9);
        for (uint64_t i = 0; i < t.size(); ++i) t.set(i, rng.bit());
        CHECK(walsh_hadamard(t).parseval_sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("integer correlations are the exact scaled spectrum") {
    Rng rng(9);
    TruthTable t = TruthTable::zeros(7);
    for (uint64_t i = 0; i < t.size(); ++i) t.set(i, rng.bit());
    auto corr = integer_correlations(t);
    FourierSpectrum s = walsh_hadamard(t);
    for (uint64_t m = 0; m < t.size(); ++m)
        CHECK(double(corr[m]) == doctest::Approx(s.coef[m] * double(t.size())).epsilon(1e-9));
}

TEST_CASE("distance_to_linear equals brute force over all parities") {
    Rng rng(10);
    for (int rep = 0; rep < 10; ++rep) {
        const uint32_t n = 7;
        TruthTable t = TruthTable::zeros(n);
        for (uint64_t i = 0; i < t.size(); ++i) t.set(i, rng.bit());
        uint64_t best = t.size();
        for (uint64_t s = 0; s < t.size(); ++s) {
            uint64_t dist = 0;
            for (uint64_t x = 0; x < t.size(); ++x)
                dist += t.get(x) != (std::popcount(x & s) & 1);
            best = std::min(best, dist);
        }
        Rational d = distance_to_linear(t);
        CHECK(d == Rational{best, t.size()});
    }
}

TEST_CASE("a parity is at distance zero from linear") {
    auto f = make_klinear(8, {0, 2, 3, 6});
    CHECK(distance_to_linear(truth_table(f)).num == 0);
}
