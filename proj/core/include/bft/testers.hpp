#pragma once

#include <functional>
#include <span>

#include "bft/families.hpp"
#include "bft/oracle.hpp"

namespace bft {

struct LearnerOutput {
    BooleanFunction hypothesis;
    uint64_t samples_used = 0;
    bool proper = false;
};

using Learner = std::function<LearnerOutput(std::span<const Sample>)>;

// Amplified BLR: each repetition draws x_1..x_2k fresh and checks
// f(x_1)+...+f(x_2k) = f(x_1+...+x_2k). Classic model.
Verdict blr_k_test(QueryOracle& oracle, uint32_t k, uint32_t repetitions, Rng& rng);

// Active model, pool size u: per repetition picks a pool point x and a
// subset of ~ceil(3n/log2 u) other pool points XOR-summing to x, then checks
// the parity identity on the queried answers.
Verdict active_linear_tester(QueryOracle& oracle, uint32_t repetitions, Rng& rng);

// Passive model: reveal sample_size points, accept iff the revealed values
// are consistent with some (homogeneous) linear function.
Verdict passive_linear_tester(QueryOracle& oracle, uint32_t sample_size);

// Passive model: solve for a degree-<=d polynomial consistent with the
// revealed d-evaluations; reject on inconsistency or holdout disagreement.
Verdict passive_polynomial_tester(QueryOracle& oracle, uint32_t d, uint32_t sample_size,
                                  uint32_t holdout = 10);

// Reject iff some pair of observed points with equal Hamming weight has
// unequal values. Passive accepts vacuously (flagged) when no pair arises;
// active selects pair_budget same-weight pairs from the pool.
Verdict symmetric_tester(QueryOracle& oracle, uint32_t pair_budget, Rng& rng);

// Tolerant variant: accepts iff the observed violation fraction over
// same-weight pairs is below the threshold midway between the calibrated
// rates for eps_lo and eps_hi.
Verdict tolerant_symmetric_tester(QueryOracle& oracle, uint32_t pair_budget,
                                  double eps_lo, double eps_hi, Rng& rng);

// True iff every two transcript points with equal Hamming weight on
// [n] \ A and equal assignment on A have equal values.
bool psf_consistency_check(std::span<const Sample> transcript,
                           const std::vector<uint32_t>& asym_set, uint32_t n);

// Accept iff the transcript is consistent with (n-k)-symmetry for at least
// one asymmetric set A of size k.
Verdict psf_tester(QueryOracle& oracle, uint32_t k, uint32_t pair_budget, Rng& rng);

// Learn-then-verify junta tester: fit the best k-junta on a training block,
// reject iff its disagreement rate on the holdout exceeds eps/2.
Verdict junta_passive_tester(QueryOracle& oracle, uint32_t k, uint32_t sample_size, double eps);

// Enumerated member with minimum disagreement on the samples
// (ties: first in enumeration order).
LearnerOutput learn_consistent(const Family& fam, std::span<const Sample> samples);

// Net member with maximum agreement (ties: first).
LearnerOutput learn_via_net(const EpsilonNet& net, std::span<const Sample> samples);

// Run the learner on a sample prefix, then verify the hypothesis on fresh
// points; reject iff the observed disagreement rate exceeds 3*eps/4.
Verdict learn_then_verify(const Family& fam, QueryOracle& oracle, const Learner& learner,
                          double eps, uint32_t learner_samples);

}  // namespace bft
