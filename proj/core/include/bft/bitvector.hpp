#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bft/errors.hpp"
#include "bft/rng.hpp"

namespace bft {

// A point of Z_2^n, bit-packed into 64-bit words. Addition is XOR.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVector random(uint32_t n, Rng& rng) {
        BitVector v(n);
        for (auto& w : v.w_) w = rng.next();
        v.trim();
        return v;
    }

    // Low n bits of idx become the coordinates: coordinate i = bit i.
    static BitVector from_index(uint32_t n, uint64_t idx) {
        BitVector v(n);
        if (n > 0) v.w_[0] = (n >= 64) ? idx : (idx & ((uint64_t(1) << n) - 1));
        return v;
    }

    uint64_t to_index() const {
        if (n_ > 64) throw ContractError("to_index: n > 64");
        return w_.empty() ? 0 : w_[0];
    }

    uint32_t dim() const { return n_; }

    bool get(uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void set(uint32_t i, bool b) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (b)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }

    void flip(uint32_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    uint32_t weight() const {
        uint32_t s = 0;
        for (uint64_t w : w_) s += uint32_t(std::popcount(w));
        return s;
    }

    bool is_zero() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    BitVector& operator^=(const BitVector& o) {
        if (o.n_ != n_) throw ContractError("BitVector xor: dimension mismatch");
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    friend BitVector operator^(BitVector a, const BitVector& b) {
        a ^= b;
        return a;
    }

    bool operator==(const BitVector& o) const { return n_ == o.n_ && w_ == o.w_; }

    std::span<const uint64_t> words() const { return w_; }

    std::string to_string() const {
        std::string s(n_, '0');
        for (uint32_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

private:
    void trim() {
        if (n_ % 64 != 0 && !w_.empty()) w_.back() &= (uint64_t(1) << (n_ % 64)) - 1;
    }

    uint32_t n_ = 0;
    std::vector<uint64_t> w_;
};

struct BitVectorHash {
    size_t operator()(const BitVector& v) const {
        uint64_t h = 0x243f6a8885a308d3ULL ^ v.dim();
        for (uint64_t w : v.words()) h = Rng::mix(h ^ w);
        return size_t(h);
    }
};

}  // namespace bft
