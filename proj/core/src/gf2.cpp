#include "bft/gf2.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "bft/errors.hpp"

namespace bft {

Gf2Matrix Gf2Matrix::identity(uint32_t m) {
    Gf2Matrix id(m, m);
    for (uint32_t i = 0; i < m; ++i) id.set(i, i, true);
    return id;
}

Gf2Matrix Gf2Matrix::random(uint32_t rows, uint32_t cols, Rng& rng) {
    Gf2Matrix m(rows, cols);
    for (uint32_t r = 0; r < rows; ++r)
        for (uint32_t c = 0; c < cols; ++c) m.set(r, c, rng.bit());
    return m;
}

Gf2Matrix Gf2Matrix::from_rows(const std::vector<BitVector>& rows) {
    if (rows.empty()) return Gf2Matrix(0, 0);
    Gf2Matrix m(uint32_t(rows.size()), rows[0].dim());
    for (uint32_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

Gf2Matrix Gf2Matrix::from_columns(const std::vector<BitVector>& cols) {
    if (cols.empty()) return Gf2Matrix(0, 0);
    Gf2Matrix m(cols[0].dim(), uint32_t(cols.size()));
    for (uint32_t c = 0; c < cols.size(); ++c) {
        if (cols[c].dim() != m.rows()) throw ContractError("from_columns: dimension mismatch");
        for (uint32_t r = 0; r < m.rows(); ++r) m.set(r, c, cols[c].get(r));
    }
    return m;
}

void Gf2Matrix::swap_rows(uint32_t a, uint32_t b) {
    if (a == b) return;
    uint64_t* pa = &data_[uint64_t(a) * stride_];
    uint64_t* pb = &data_[uint64_t(b) * stride_];
    for (uint32_t i = 0; i < stride_; ++i) std::swap(pa[i], pb[i]);
}

BitVector Gf2Matrix::row(uint32_t r) const {
    BitVector v(cols_);
    for (uint32_t c = 0; c < cols_; ++c) v.set(c, get(r, c));
    return v;
}

void Gf2Matrix::set_row(uint32_t r, const BitVector& v) {
    if (v.dim() != cols_) throw ContractError("set_row: dimension mismatch");
    for (uint32_t c = 0; c < cols_; ++c) set(r, c, v.get(c));
}

BitVector Gf2Matrix::multiply(const BitVector& x) const {
    if (x.dim() != cols_) throw ContractError("multiply: dimension mismatch");
    BitVector out(rows_);
    for (uint32_t r = 0; r < rows_; ++r) {
        const uint64_t* w = &data_[uint64_t(r) * stride_];
        uint64_t acc = 0;
        auto xs = x.words();
        for (uint32_t i = 0; i < stride_; ++i) acc ^= w[i] & xs[i];
        out.set(r, std::popcount(acc) & 1);
    }
    return out;
}

RowReduceResult row_reduce(const Gf2Matrix& m) {
    RowReduceResult res;
    res.reduced = m;
    Gf2Matrix& a = res.reduced;
    uint32_t row = 0;
    for (uint32_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        uint32_t pivot = row;
        while (pivot < m.rows() && !a.get(pivot, col)) ++pivot;
        if (pivot == m.rows()) continue;
        a.swap_rows(row, pivot);
        for (uint32_t r = 0; r < m.rows(); ++r)
            if (r != row && a.get(r, col)) a.xor_row_into(row, r);
        res.pivots.push_back(col);
        ++row;
    }
    res.rank = row;
    return res;
}

uint32_t rank(const Gf2Matrix& m) { return row_reduce(m).rank; }

std::optional<SolveResult> solve_full(const Gf2Matrix& m, const BitVector& b) {
    if (b.dim() != m.rows()) throw ContractError("solve: b length must equal rows");
    // augment b as an extra column
    Gf2Matrix aug(m.rows(), m.cols() + 1);
    for (uint32_t r = 0; r < m.rows(); ++r) {
        for (uint32_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.get(r, c));
        aug.set(r, m.cols(), b.get(r));
    }
    RowReduceResult rr = row_reduce(aug);
    if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;

    SolveResult out;
    out.particular = BitVector(m.cols());
    std::vector<bool> is_pivot(m.cols(), false);
    for (uint32_t i = 0; i < rr.rank; ++i) {
        is_pivot[rr.pivots[i]] = true;
        out.particular.set(rr.pivots[i], rr.reduced.get(i, m.cols()));
    }
    for (uint32_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) out.free_cols.push_back(c);
    for (uint32_t f : out.free_cols) {
        BitVector v(m.cols());
        v.set(f, true);
        for (uint32_t i = 0; i < rr.rank; ++i)
            if (rr.reduced.get(i, f)) v.set(rr.pivots[i], true);
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

std::optional<BitVector> solve(const Gf2Matrix& m, const BitVector& b) {
    auto r = solve_full(m, b);
    if (!r) return std::nullopt;
    return r->particular;
}

namespace {

uint64_t key64(const BitVector& v) { return v.words().empty() ? 0 : v.words()[0]; }

}  // namespace

// Random half-size subsets bucketed by their XOR sum.
struct SubsetSumSearcher::MitmIndex {
    uint32_t h1 = 0;
    std::unordered_map<uint64_t, std::vector<std::vector<uint32_t>>> table;
};

SubsetSumSearcher::SubsetSumSearcher(std::vector<BitVector> pool) : pool_(std::move(pool)) {
    if (!pool_.empty()) {
        n_ = pool_[0].dim();
        for (const auto& v : pool_)
            if (v.dim() != n_) throw ContractError("subset sum: mixed dimensions");
    }
}

void SubsetSumSearcher::build_index(uint32_t h1, Rng& rng) {
    auto idx = std::make_shared<MitmIndex>();
    idx->h1 = h1;
    const uint32_t u = uint32_t(pool_.size());
    const uint64_t entries = std::min<uint64_t>(uint64_t(1) << std::min(n_, 18u), 262144);
    idx->table.reserve(entries);
    std::vector<uint32_t> pick(h1);
    for (uint64_t t = 0; t < entries; ++t) {
        uint64_t sum = 0;
        for (uint32_t j = 0; j < h1; ++j) {
            uint32_t cand;
            bool fresh;
            do {
                cand = uint32_t(rng.below(u));
                fresh = true;
                for (uint32_t p = 0; p < j; ++p) fresh &= pick[p] != cand;
            } while (!fresh);
            pick[j] = cand;
            sum ^= key64(pool_[cand]);
        }
        auto& slot = idx->table[sum];
        if (slot.size() < 2) slot.push_back(pick);
    }
    index_ = std::move(idx);
}

std::optional<std::vector<uint32_t>> SubsetSumSearcher::find(const BitVector& target,
                                                            std::optional<uint32_t> size_hint,
                                                            Rng* rng) {
    if (pool_.empty()) {
        if (target.is_zero()) return std::vector<uint32_t>{};
        return std::nullopt;
    }
    if (target.dim() != n_) throw ContractError("subset sum: dimension mismatch");
    if (target.is_zero()) return std::vector<uint32_t>{};

    const uint32_t u = uint32_t(pool_.size());

    // Exact-size search for small hints.
    if (size_hint && rng && n_ <= 64 && *size_hint >= 2 && *size_hint <= 12 && u > *size_hint) {
        const uint32_t h = *size_hint;
        const uint32_t h1 = h / 2, h2 = h - h1;
        if (!index_ || index_->h1 != h1) build_index(h1, *rng);
        const uint64_t tkey = key64(target);
        std::vector<uint32_t> right(h2);
        for (uint32_t attempt = 0; attempt < 60000; ++attempt) {
            uint64_t sum = 0;
            for (uint32_t j = 0; j < h2; ++j) {
                uint32_t cand;
                bool fresh;
                do {
                    cand = uint32_t(rng->below(u));
                    fresh = true;
                    for (uint32_t p = 0; p < j; ++p) fresh &= right[p] != cand;
                } while (!fresh);
                right[j] = cand;
                sum ^= key64(pool_[cand]);
            }
            auto it = index_->table.find(tkey ^ sum);
            if (it == index_->table.end()) continue;
            for (const auto& left : it->second) {
                bool disjoint = true;
                for (uint32_t a : left)
                    for (uint32_t b : right) disjoint &= a != b;
                if (!disjoint) continue;
                std::vector<uint32_t> subset(left);
                subset.insert(subset.end(), right.begin(), right.end());
                std::sort(subset.begin(), subset.end());
                return subset;
            }
        }
        // fall through to the algebraic path
    }

    auto sol = solve_full(Gf2Matrix::from_columns(pool_), target);
    if (!sol) return std::nullopt;

    BitVector best = sol->particular;
    if (size_hint && rng && !sol->nullspace.empty()) {
        auto gap = [&](const BitVector& s) {
            int64_t w = int64_t(s.weight());
            return std::abs(w - int64_t(*size_hint));
        };
        for (int t = 0; t < 200 && gap(best) > 0; ++t) {
            BitVector cand = sol->particular;
            for (const auto& nv : sol->nullspace)
                if (rng->bit()) cand ^= nv;
            if (gap(cand) < gap(best)) best = cand;
        }
    }
    std::vector<uint32_t> subset;
    for (uint32_t i = 0; i < u; ++i)
        if (best.get(i)) subset.push_back(i);
    return subset;
}

std::optional<std::vector<uint32_t>> find_subset_summing_to(
    const std::vector<BitVector>& pool, const BitVector& target,
    std::optional<uint32_t> size_hint, Rng* rng) {
    SubsetSumSearcher s(pool);
    return s.find(target, size_hint, rng);
}

uint64_t binomial(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    uint64_t r = 1;
    for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

uint64_t monomial_count(uint32_t n, uint32_t d) {
    uint64_t s = 0;
    for (uint32_t i = 0; i <= d; ++i) s += binomial(n, i);
    return s;
}

MonomialBasis MonomialBasis::make(uint32_t n, uint32_t d) {
    if (d > n) throw ContractError("monomial basis: d > n");
    MonomialBasis b;
    b.n = n;
    b.d = d;
    b.monomials.reserve(monomial_count(n, d));
    b.monomials.emplace_back();  // degree 0
    for (uint32_t deg = 1; deg <= d; ++deg) {
        std::vector<uint32_t> c(deg);
        for (uint32_t i = 0; i < deg; ++i) c[i] = i;
        for (;;) {
            b.monomials.push_back(c);
            // next lexicographic combination
            int32_t i = int32_t(deg) - 1;
            while (i >= 0 && c[i] == n - deg + i) --i;
            if (i < 0) break;
            ++c[i];
            for (uint32_t j = uint32_t(i) + 1; j < deg; ++j) c[j] = c[j - 1] + 1;
        }
    }
    return b;
}

BitVector d_evaluation(const BitVector& x, const MonomialBasis& basis) {
    if (x.dim() != basis.n) throw ContractError("d_evaluation: dimension mismatch");
    BitVector out(uint32_t(basis.size()));
    for (uint32_t j = 0; j < basis.size(); ++j) {
        bool prod = true;
        for (uint32_t i : basis.monomials[j]) prod &= x.get(i);
        out.set(j, prod);
    }
    return out;
}

}  // namespace bft
