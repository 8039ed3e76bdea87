#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bft/boolfn.hpp"
#include "bft/rng.hpp"

namespace bft {

enum class FamilyKind { LinK, Linear, JunK, SymT, SymNminusK, PolD };

// A named parametric family of Boolean functions on Z_2^n.
struct Family {
    FamilyKind kind;
    uint32_t n = 0;
    uint32_t param = 0;  // k for LinK/JunK/SymNminusK, t for SymT, d for PolD

    static Family lin_k(uint32_t n, uint32_t k);
    static Family linear(uint32_t n);
    static Family jun_k(uint32_t n, uint32_t k);
    static Family sym_t(uint32_t n, uint32_t t);
    static Family sym_n_minus_k(uint32_t n, uint32_t k);
    static Family pol_d(uint32_t n, uint32_t d);

    std::string to_string() const;
};

BooleanFunction sample_uniform(const Family& fam, Rng& rng);

bool is_member(const BooleanFunction& f, const Family& fam);

// All members, in a fixed deterministic order. Capacity-gated; enumeration
// of overlapping parameterizations (juntas, partially symmetric) may repeat
// a function under different support sets.
std::vector<BooleanFunction> enumerate_family(const Family& fam);

// min over members g of exact_distance(f, g); exact per-kind algorithms
// (Walsh-Hadamard for linear kinds, grouped majority for symmetric/junta
// kinds, coefficient scan for polynomials).
Rational exact_distance_to_family(const BooleanFunction& f, const Family& fam);

struct EpsilonNet {
    Family family;
    double eps = 0;
    std::vector<BooleanFunction> members;  // pairwise >= eps apart
};

// Greedy packing over the enumeration order; every family member is
// eps-close to some net member.
EpsilonNet greedy_epsilon_net(const Family& fam, double eps);

struct FarFunction {
    BooleanFunction f;
    double distance = 0;   // exact value or sample estimate
    bool exact_cert = false;
};

// A function at distance >= eps from the family: certified exactly when the
// per-kind oracle is feasible, otherwise estimated with a 3-standard-error
// margin against a learned nearest candidate (Linear only).
FarFunction far_function_generator(const Family& fam, double eps, Rng& rng);

// Algebraic normal form of a dense table (Moebius transform); bit at mask S
// is the coefficient of the monomial prod_{i in S} x_i.
TruthTable algebraic_normal_form(const TruthTable& t);

// Indices of variables the function actually depends on.
std::vector<uint32_t> influential_variables(const TruthTable& t);

}  // namespace bft
