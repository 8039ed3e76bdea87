#pragma once

#include <cstdint>
#include <numeric>
#include <variant>
#include <vector>

#include "bft/bitvector.hpp"
#include "bft/errors.hpp"
#include "bft/rng.hpp"

namespace bft {

// Hard cap on dense 2^n-bit representations (16 MiB of table).
inline constexpr uint32_t kMaxDenseN = 24;

struct Rational {
    uint64_t num = 0;
    uint64_t den = 1;

    double value() const { return double(num) / double(den); }
    Rational reduced() const {
        uint64_t g = std::gcd(num, den);
        return {num / (g ? g : 1), den / (g ? g : 1)};
    }
    bool operator==(const Rational& o) const {
        return uint64_t(num) * o.den == uint64_t(o.num) * den;
    }
};

// Dense 2^n-bit table; bit at index enc(x) is the value at x, where
// coordinate i of x is bit i of the integer index.
struct TruthTable {
    uint32_t n = 0;
    std::vector<uint64_t> bits;  // 2^n bits, LSB-first within each word

    static TruthTable zeros(uint32_t n);
    bool get(uint64_t idx) const { return (bits[idx >> 6] >> (idx & 63)) & 1; }
    void set(uint64_t idx, bool b) {
        uint64_t m = uint64_t(1) << (idx & 63);
        if (b)
            bits[idx >> 6] |= m;
        else
            bits[idx >> 6] &= ~m;
    }
    uint64_t size() const { return uint64_t(1) << n; }
};

struct KLinear {
    std::vector<uint32_t> indices;  // sorted, distinct, 0-based
};

struct Junta {
    std::vector<uint32_t> vars;     // sorted, distinct, |vars| = k
    std::vector<uint64_t> subtable; // 2^k bits; index bit j = value of vars[j]
};

// Value depends on the assignment to the asymmetric set A and the Hamming
// weight of the remaining n-k coordinates. Table index:
// (assignment as integer, bit j = value at asym[j]) * (n-k+1) + weight.
struct PartiallySymmetric {
    std::vector<uint32_t> asym;  // sorted, distinct, possibly empty
    std::vector<uint64_t> table; // 2^k * (n-k+1) bits
};

struct Gf2Polynomial {
    std::vector<std::vector<uint32_t>> monomials;  // each sorted; empty = constant 1
};

// Pseudorandom function of (seed, x); stands in for a uniform random
// Boolean function without 2^n storage.
struct SeededRandom {
    uint64_t seed = 0;
};

class BooleanFunction {
public:
    using Rep = std::variant<TruthTable, KLinear, Junta, PartiallySymmetric,
                             Gf2Polynomial, SeededRandom>;

    BooleanFunction(uint32_t n, Rep rep);

    uint32_t dim() const { return n_; }
    const Rep& rep() const { return rep_; }

    bool evaluate(const BitVector& x) const;

    template <class T>
    const T* as() const {
        return std::get_if<T>(&rep_);
    }

private:
    uint32_t n_;
    Rep rep_;
};

bool evaluate(const BooleanFunction& f, const BitVector& x);

// Dense table of f; requires n <= kMaxDenseN.
TruthTable truth_table(const BooleanFunction& f);

// Exact normalized Hamming distance between f and g; n <= kMaxDenseN.
Rational exact_distance(const BooleanFunction& f, const BooleanFunction& g);
Rational exact_distance(const TruthTable& a, const TruthTable& b);

// Mean disagreement over m independent uniform points.
double estimate_distance(const BooleanFunction& f, const BooleanFunction& g,
                         uint64_t m, Rng& rng);

// Convenience constructors.
BooleanFunction make_klinear(uint32_t n, std::vector<uint32_t> indices);
BooleanFunction make_constant(uint32_t n, bool value);
BooleanFunction make_from_table(TruthTable t);
BooleanFunction make_seeded_random(uint32_t n, uint64_t seed);

}  // namespace bft
