#include "bft/boolfn.hpp"

#include <algorithm>
#include <bit>

namespace bft {

namespace {

void check_sorted_distinct(const std::vector<uint32_t>& v, uint32_t n, const char* what) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] >= n) throw ContractError(std::string(what) + ": index out of range");
        if (i > 0 && v[i] <= v[i - 1])
            throw ContractError(std::string(what) + ": indices must be sorted and distinct");
    }
}

uint64_t word_bits(uint64_t count) { return (count + 63) / 64; }

bool table_bit(const std::vector<uint64_t>& bits, uint64_t idx) {
    return (bits[idx >> 6] >> (idx & 63)) & 1;
}

}  // namespace

TruthTable TruthTable::zeros(uint32_t n) {
    if (n > kMaxDenseN) throw CapacityError("truth table: n > 24");
    TruthTable t;
    t.n = n;
    t.bits.assign(word_bits(uint64_t(1) << n), 0);
    return t;
}

BooleanFunction::BooleanFunction(uint32_t n, Rep rep) : n_(n), rep_(std::move(rep)) {
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, TruthTable>) {
                if (r.n != n_) throw ContractError("truth table dimension mismatch");
                if (n_ > kMaxDenseN) throw CapacityError("truth table: n > 24");
            } else if constexpr (std::is_same_v<T, KLinear>) {
                check_sorted_distinct(r.indices, n_, "klinear");
            } else if constexpr (std::is_same_v<T, Junta>) {
                check_sorted_distinct(r.vars, n_, "junta");
                if (r.vars.size() > 24) throw CapacityError("junta: k > 24");
                if (r.subtable.size() != word_bits(uint64_t(1) << r.vars.size()))
                    throw ContractError("junta subtable size mismatch");
            } else if constexpr (std::is_same_v<T, PartiallySymmetric>) {
                check_sorted_distinct(r.asym, n_, "psym");
                uint64_t k = r.asym.size();
                if (k > 24) throw CapacityError("psym: k > 24");
                uint64_t cells = (uint64_t(1) << k) * (n_ - k + 1);
                if (r.table.size() != word_bits(cells))
                    throw ContractError("psym table size mismatch");
            } else if constexpr (std::is_same_v<T, Gf2Polynomial>) {
                for (const auto& m : r.monomials) check_sorted_distinct(m, n_, "monomial");
            }
        },
        rep_);
}

bool BooleanFunction::evaluate(const BitVector& x) const {
    if (x.dim() != n_) throw ContractError("evaluate: dimension mismatch");
    return std::visit(
        [&](const auto& r) -> bool {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, TruthTable>) {
                return r.get(x.to_index());
            } else if constexpr (std::is_same_v<T, KLinear>) {
                bool v = false;
                for (uint32_t i : r.indices) v ^= x.get(i);
                return v;
            } else if constexpr (std::is_same_v<T, Junta>) {
                uint64_t idx = 0;
                for (size_t j = 0; j < r.vars.size(); ++j)
                    idx |= uint64_t(x.get(r.vars[j])) << j;
                return table_bit(r.subtable, idx);
            } else if constexpr (std::is_same_v<T, PartiallySymmetric>) {
                uint64_t a = 0;
                uint32_t wa = 0;
                for (size_t j = 0; j < r.asym.size(); ++j) {
                    bool b = x.get(r.asym[j]);
                    a |= uint64_t(b) << j;
                    wa += b;
                }
                uint32_t w = x.weight() - wa;
                uint64_t k = r.asym.size();
                return table_bit(r.table, a * (n_ - k + 1) + w);
            } else if constexpr (std::is_same_v<T, Gf2Polynomial>) {
                bool v = false;
                for (const auto& m : r.monomials) {
                    bool prod = true;
                    for (uint32_t i : m) prod &= x.get(i);
                    v ^= prod;
                }
                return v;
            } else {  // SeededRandom
                uint64_t h = Rng::mix(r.seed ^ (uint64_t(n_) << 32));
                for (uint64_t w : x.words()) h = Rng::mix(h ^ w * 0x9e3779b97f4a7c15ULL);
                return h & 1;
            }
        },
        rep_);
}

bool evaluate(const BooleanFunction& f, const BitVector& x) { return f.evaluate(x); }

TruthTable truth_table(const BooleanFunction& f) {
    if (f.dim() > kMaxDenseN) throw CapacityError("truth_table: n > 24");
    if (const auto* t = f.as<TruthTable>()) return *t;
    TruthTable t = TruthTable::zeros(f.dim());
    const uint64_t size = t.size();
    for (uint64_t idx = 0; idx < size; ++idx)
        t.set(idx, f.evaluate(BitVector::from_index(f.dim(), idx)));
    return t;
}

Rational exact_distance(const TruthTable& a, const TruthTable& b) {
    if (a.n != b.n) throw ContractError("exact_distance: dimension mismatch");
    uint64_t diff = 0;
    for (size_t i = 0; i < a.bits.size(); ++i)
        diff += std::popcount(a.bits[i] ^ b.bits[i]);
    return Rational{diff, uint64_t(1) << a.n};
}

Rational exact_distance(const BooleanFunction& f, const BooleanFunction& g) {
    if (f.dim() != g.dim()) throw ContractError("exact_distance: dimension mismatch");
    return exact_distance(truth_table(f), truth_table(g));
}

double estimate_distance(const BooleanFunction& f, const BooleanFunction& g,
                         uint64_t m, Rng& rng) {
    if (f.dim() != g.dim()) throw ContractError("estimate_distance: dimension mismatch");
    if (m < 1) throw ContractError("estimate_distance: m >= 1 required");
    uint64_t diff = 0;
    for (uint64_t i = 0; i < m; ++i) {
        BitVector x = BitVector::random(f.dim(), rng);
        diff += f.evaluate(x) != g.evaluate(x);
    }
    return double(diff) / double(m);
}

BooleanFunction make_klinear(uint32_t n, std::vector<uint32_t> indices) {
    std::sort(indices.begin(), indices.end());
    return BooleanFunction(n, KLinear{std::move(indices)});
}

BooleanFunction make_constant(uint32_t n, bool value) {
    Gf2Polynomial p;
    if (value) p.monomials.emplace_back();  // the empty monomial is the constant 1
    return BooleanFunction(n, std::move(p));
}

BooleanFunction make_from_table(TruthTable t) {
    uint32_t n = t.n;
    return BooleanFunction(n, std::move(t));
}

BooleanFunction make_seeded_random(uint32_t n, uint64_t seed) {
    return BooleanFunction(n, SeededRandom{seed});
}

}  // namespace bft
