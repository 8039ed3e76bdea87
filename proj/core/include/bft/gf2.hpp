#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "bft/bitvector.hpp"
#include "bft/rng.hpp"

namespace bft {

// Row-major bit-packed matrix over GF(2).
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(uint32_t rows, uint32_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(uint64_t(rows) * stride_, 0) {}

    static Gf2Matrix identity(uint32_t m);
    static Gf2Matrix random(uint32_t rows, uint32_t cols, Rng& rng);
    // Rows are the given vectors.
    static Gf2Matrix from_rows(const std::vector<BitVector>& rows);
    static Gf2Matrix from_columns(const std::vector<BitVector>& cols);

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }

    bool get(uint32_t r, uint32_t c) const {
        return (data_[uint64_t(r) * stride_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(uint32_t r, uint32_t c, bool b) {
        uint64_t& w = data_[uint64_t(r) * stride_ + (c >> 6)];
        uint64_t m = uint64_t(1) << (c & 63);
        if (b)
            w |= m;
        else
            w &= ~m;
    }

    void xor_row_into(uint32_t src, uint32_t dst) {
        uint64_t* d = &data_[uint64_t(dst) * stride_];
        const uint64_t* s = &data_[uint64_t(src) * stride_];
        for (uint32_t i = 0; i < stride_; ++i) d[i] ^= s[i];
    }

    void swap_rows(uint32_t a, uint32_t b);

    BitVector row(uint32_t r) const;
    void set_row(uint32_t r, const BitVector& v);

    // M * x over GF(2); x has cols() bits, result rows() bits.
    BitVector multiply(const BitVector& x) const;

    bool operator==(const Gf2Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    uint32_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<uint64_t> data_;
};

struct RowReduceResult {
    Gf2Matrix reduced;             // reduced row-echelon form
    uint32_t rank = 0;
    std::vector<uint32_t> pivots;  // pivot column per nonzero row
};

RowReduceResult row_reduce(const Gf2Matrix& m);

uint32_t rank(const Gf2Matrix& m);

struct SolveResult {
    BitVector particular;                 // one solution of M x = b
    std::vector<uint32_t> free_cols;      // non-pivot columns
    std::vector<BitVector> nullspace;     // basis vectors, one per free column
};

// Solve M x = b; nullopt when inconsistent.
std::optional<SolveResult> solve_full(const Gf2Matrix& m, const BitVector& b);
std::optional<BitVector> solve(const Gf2Matrix& m, const BitVector& b);

// Repeated subset-sum queries against a fixed pool. With a size hint the
// search is meet-in-the-middle over random half-size subsets (exact subset
// size, dimensions <= 64); otherwise, or on fallback, Gaussian elimination
// plus randomized resampling of free variables toward the hint. The hint is
// best effort; any returned subset XORs to the target.
class SubsetSumSearcher {
public:
    explicit SubsetSumSearcher(std::vector<BitVector> pool);

    std::optional<std::vector<uint32_t>> find(const BitVector& target,
                                             std::optional<uint32_t> size_hint = std::nullopt,
                                             Rng* rng = nullptr);

private:
    struct MitmIndex;
    void build_index(uint32_t h1, Rng& rng);

    std::vector<BitVector> pool_;
    uint32_t n_ = 0;
    std::shared_ptr<MitmIndex> index_;
};

// One-shot convenience wrapper around SubsetSumSearcher.
std::optional<std::vector<uint32_t>> find_subset_summing_to(
    const std::vector<BitVector>& pool, const BitVector& target,
    std::optional<uint32_t> size_hint = std::nullopt, Rng* rng = nullptr);

// All monomials of degree <= d over n variables, in degree-then-lex order;
// the first monomial is the empty one (constant 1).
struct MonomialBasis {
    uint32_t n = 0;
    uint32_t d = 0;
    std::vector<std::vector<uint32_t>> monomials;

    static MonomialBasis make(uint32_t n, uint32_t d);
    uint64_t size() const { return monomials.size(); }
};

// Number of monomials of degree <= d: sum_{i<=d} C(n, i).
uint64_t monomial_count(uint32_t n, uint32_t d);

uint64_t binomial(uint64_t n, uint64_t k);

// Coordinate j = AND of x over monomial j of the basis.
BitVector d_evaluation(const BitVector& x, const MonomialBasis& basis);

}  // namespace bft
