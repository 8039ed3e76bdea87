#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bft/bitvector.hpp"
#include "bft/boolfn.hpp"
#include "bft/rng.hpp"

namespace bft {

// A finite abelian group, either Z_2^q (xor) or Z_N (addition mod N).
// Elements are encoded as uint64 (bitmask resp. residue).
struct AbelianGroup {
    enum class Kind { Boolean, Cyclic };

    Kind kind = Kind::Cyclic;
    uint64_t order = 1;

    static AbelianGroup boolean(uint32_t q);
    static AbelianGroup cyclic(uint64_t N);

    uint64_t op(uint64_t a, uint64_t b) const {
        return kind == Kind::Boolean ? (a ^ b) : (a + b) % order;
    }
    uint64_t inverse(uint64_t a) const {
        return kind == Kind::Boolean ? a : (order - a) % order;
    }
    uint64_t identity() const { return 0; }
    uint64_t random_element(Rng& rng) const { return rng.below(order); }

    // Exhaustive verification of the group laws; order <= 64 only.
    bool laws_hold() const;
};

// Histogram of column-subset sums: counts[y] = |{I in C([n],k): sum_{i in I}
// c_i(S) = y}| where c_i(S) is the i-th coordinate column of the q points S.
struct PiHistogram {
    uint32_t q = 0;
    uint64_t total = 0;            // C(n, k)
    std::vector<uint64_t> counts;  // size 2^q

    Rational at(uint64_t y) const { return Rational{counts[y], total}; }
    std::vector<double> to_distribution() const;
};

PiHistogram pi_histogram(const std::vector<BitVector>& S, uint32_t k);

// Exact pi_S(y) for a single y; meet-in-the-middle over coordinate positions,
// so C(n,k) up to ~1e8 is feasible for k <= 4.
Rational pi_S(const std::vector<BitVector>& S, const BitVector& y, uint32_t k);

struct CriterionReport {
    uint32_t trials = 0;
    uint32_t q = 0;
    double violation_rate = 0;  // fraction of (S, y) with pi_S(y) >= (6/5) 2^{-q}
    double max_pi = 0;
};

// Monte Carlo over q-subsets S of the pool, exact over all y in Z_2^q.
CriterionReport near_uniformity_criterion(const std::vector<BitVector>& pool, uint32_t q,
                                          uint32_t k, uint32_t trials, Rng& rng);

// (1/2) sum |p_i - u_i|; both inputs must sum to 1 within 1e-9.
double tv_distance(std::span<const double> p, std::span<const double> u);

// Exact |{I in C([n],k): sum_{i in I} X_i = y}|. Direct enumeration for small
// C(n,k); exact convolution counting beyond that (k <= 4, C(n,k) <= 1e8).
uint64_t sumset_Y_count(const AbelianGroup& g, const std::vector<uint64_t>& X, uint64_t y,
                        uint32_t k);

struct SumsetReport {
    uint32_t trials = 0;
    double expected = 0;        // C(n,k) / N
    double mean = 0;            // empirical mean of Y
    uint64_t tail_exceed = 0;   // trials with |Y - E| > E/5
    double tail_rate = 0;
    double tail_lo = 0, tail_hi = 0;  // Wilson 95%
    double lambda_min = 0;      // smallest lambda allowed by condition (b)
    double lambda_max = 0;      // largest lambda allowed by condition (a)
    std::string regime;         // "in-regime" or "out-of-regime"
};

// Y over independent uniform draws of X; tail of |Y - E[Y]| against E[Y]/5,
// with a regime label from the two analytic side conditions.
SumsetReport sumset_concentration_experiment(const AbelianGroup& g, uint32_t n, uint32_t k,
                                             uint64_t y, uint32_t trials, Rng& rng);

struct DeltaSystem {
    std::vector<uint32_t> core;      // sorted common pairwise intersection
    std::vector<uint32_t> members;   // indices into the input family
};

// Greedy-then-recurse extraction of an a-petal Delta-system from a family of
// equal-size sets. Succeeds whenever |family| >= (a-1)^{b+1} b!.
std::optional<DeltaSystem> find_delta_system(const std::vector<std::vector<uint32_t>>& sets,
                                             uint32_t a);

bool verify_delta_system(const std::vector<std::vector<uint32_t>>& sets, const DeltaSystem& ds);

// (a-1)^{b+1} * b!
uint64_t delta_system_threshold(uint32_t a, uint32_t b);

struct MixingReport {
    uint64_t N = 0;
    uint32_t d = 0;
    uint32_t trials = 0;
    std::vector<double> tv_mean;  // tv_mean[t-1]: mean TV to uniform after t steps
};

// Exact TV distance to uniform of the t-step uniform-generator-word
// distribution on Z_N, for t = 1..steps; result[t-1] is the t-step value.
std::vector<double> walk_tv(uint64_t N, const std::vector<uint64_t>& generators, uint32_t steps);

// walk_tv averaged over generator multisets of size d drawn uniformly with
// repetition. N <= 1e6.
MixingReport cayley_mixing_experiment(uint64_t N, uint32_t d, uint32_t steps, uint32_t trials,
                                      Rng& rng);

}  // namespace bft
