#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "bft/families.hpp"
#include "bft/fourier.hpp"

using namespace bft;

namespace {

Rational brute_distance(const BooleanFunction& f, const Family& fam) {
    auto members = enumerate_family(fam);
    REQUIRE(!members.empty());
    Rational best{1, 1};
    for (const auto& g : members) {
        Rational d = exact_distance(f, g);
        if (d.value() < best.value()) best = d;
    }
    return best;
}

BooleanFunction random_table_fn(uint32_t n, Rng& rng) {
    TruthTable t = TruthTable::zeros(n);
    for (uint64_t i = 0; i < t.size(); ++i) t.set(i, rng.bit());
    return make_from_table(std::move(t));
}

}  // namespace

TEST_CASE("uniform samples are members of their family") {
    Rng rng(31);
    std::vector<Family> fams = {Family::lin_k(10, 3),        Family::linear(10),
                                Family::jun_k(9, 2),         Family::sym_t(10, 8),
                                Family::sym_n_minus_k(10, 2), Family::pol_d(8, 2)};
    for (const auto& fam : fams)
        for (int rep = 0; rep < 30; ++rep) CHECK(is_member(sample_uniform(fam, rng), fam));
}

TEST_CASE("membership is semantic, not representational") {
    // a parity of 2 variables given as a dense table
    auto f = make_klinear(8, {2, 5});
    auto dense = make_from_table(truth_table(f));
    CHECK(is_member(dense, Family::lin_k(8, 2)));
    CHECK(!is_member(dense, Family::lin_k(8, 3)));
    CHECK(is_member(dense, Family::linear(8)));
    CHECK(is_member(dense, Family::jun_k(8, 2)));
    CHECK(is_member(dense, Family::pol_d(8, 1)));
    // parity of 2 variables depends on 2 asymmetric coordinates
    CHECK(is_member(dense, Family::sym_n_minus_k(8, 2)));
    CHECK(!is_member(dense, Family::sym_t(8, 8)));
}

TEST_CASE("a fully symmetric function given as a table is recognized") {
    const uint32_t n = 8;
    TruthTable t = TruthTable::zeros(n);
    for (uint64_t i = 0; i < t.size(); ++i)
        t.set(i, std::popcount(i) >= 4);  // majority: symmetric
    auto f = make_from_table(std::move(t));
    CHECK(is_member(f, Family::sym_t(n, n)));
    CHECK(is_member(f, Family::sym_n_minus_k(n, 0)));
    CHECK(!is_member(f, Family::linear(n)));
}

TEST_CASE("family enumerations have the expected cardinality") {
    CHECK(enumerate_family(Family::lin_k(8, 2)).size() == 28);
    CHECK(enumerate_family(Family::linear(8)).size() == 256);
    CHECK(enumerate_family(Family::pol_d(4, 1)).size() == 32);  // 2^(1+4)
    // distinct functions among enumerated members of Lin_2
    auto ms = enumerate_family(Family::lin_k(6, 2));
    std::set<std::vector<uint64_t>> tables;
    for (const auto& m : ms) tables.insert(truth_table(m).bits);
    CHECK(tables.size() == ms.size());
}

TEST_CASE("exact family distance matches brute force over members") {
    Rng rng(32);
    std::vector<Family> fams = {Family::lin_k(7, 2), Family::linear(7), Family::pol_d(5, 2),
                                Family::sym_t(7, 7), Family::sym_n_minus_k(7, 1),
                                Family::jun_k(7, 2)};
    for (const auto& fam : fams) {
        for (int rep = 0; rep < 5; ++rep) {
            auto f = random_table_fn(fam.n, rng);
            Rational fast = exact_distance_to_family(f, fam);
            Rational slow = brute_distance(f, fam);
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("members are at distance zero from their family") {
    Rng rng(33);
    for (const auto& fam : {Family::lin_k(8, 3), Family::sym_t(8, 8), Family::pol_d(5, 2)}) {
        auto f = sample_uniform(fam, rng);
        CHECK(exact_distance_to_family(f, fam).num == 0);
    }
}

TEST_CASE("greedy net members are pairwise separated and cover the family") {
    const double eps = 0.2;
    Family fam = Family::lin_k(7, 2);
    EpsilonNet net = greedy_epsilon_net(fam, eps);
    REQUIRE(!net.members.empty());
    for (size_t i = 0; i < net.members.size(); ++i)
        for (size_t j = i + 1; j < net.members.size(); ++j)
            CHECK(exact_distance(net.members[i], net.members[j]).value() >= eps);
    for (const auto& m : enumerate_family(fam)) {
        double best = 1;
        for (const auto& c : net.members)
            best = std::min(best, exact_distance(m, c).value());
        CHECK(best < eps);
    }
}

TEST_CASE("far function generator certifies distance when exact oracles apply") {
    Rng rng(34);
    for (const auto& fam : {Family::linear(10), Family::sym_t(10, 10), Family::lin_k(10, 2)}) {
        FarFunction far = far_function_generator(fam, 0.2, rng);
        CHECK(far.distance >= 0.2);
        if (far.exact_cert) {
            Rational d = exact_distance_to_family(far.f, fam);
            CHECK(d.value() == doctest::Approx(far.distance));
        }
    }
}

TEST_CASE("algebraic normal form reproduces the function via monomial sums") {
    Rng rng(35);
    const uint32_t n = 6;
    auto f = random_table_fn(n, rng);
    TruthTable anf = algebraic_normal_form(truth_table(f));
    for (uint64_t x = 0; x < (1u << n); ++x) {
        bool v = false;
        for (uint64_t s = 0; s < (1u << n); ++s)
            if (anf.get(s) && (x & s) == s) v = !v;
        CHECK(v == f.evaluate(BitVector::from_index(n, x)));
    }
}

TEST_CASE("influential variables of a junta are exactly its support") {
    Junta j;
    j.vars = {1, 4, 6};
    j.subtable = {0b10010110};  // depends on all three
    BooleanFunction f(9, j);
    auto infl = influential_variables(truth_table(f));
    CHECK(infl == std::vector<uint32_t>{1, 4, 6});
}

TEST_CASE("degree check: a planted quadratic is in pol_2 but a cubic is not") {
    Gf2Polynomial quad{{{0, 1}, {3}}};
    Gf2Polynomial cubic{{{0, 1, 2}}};
    CHECK(is_member(BooleanFunction(8, quad), Family::pol_d(8, 2)));
    CHECK(!is_member(BooleanFunction(8, cubic), Family::pol_d(8, 2)));
    CHECK(is_member(BooleanFunction(8, cubic), Family::pol_d(8, 3)));
}
