#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bft/boolfn.hpp"
#include "bft/errors.hpp"
#include "bft/rng.hpp"

namespace bft {

enum class Outcome { Accept, Reject, Inconclusive };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Accept: return "accept";
        case Outcome::Reject: return "reject";
        case Outcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct Verdict {
    Outcome decision = Outcome::Inconclusive;
    uint64_t queries_used = 0;
    std::string diagnostic;
};

using Sample = std::pair<BitVector, bool>;

// Budget- and model-enforcing wrapper around a Boolean function.
//  Classic: answers any point.
//  Active:  answers only points of a pool of u uniform draws.
//  Passive: reveals a fixed uniform sequence, in order only.
class QueryOracle {
public:
    enum class Model { Classic, Active, Passive };

    static QueryOracle classic(BooleanFunction f, uint64_t budget);
    static QueryOracle active(BooleanFunction f, uint32_t pool_size, uint64_t budget, Rng& rng);
    static QueryOracle passive(BooleanFunction f, uint32_t sequence_len, Rng& rng);

    Model model() const { return model_; }
    uint32_t dim() const { return target_.dim(); }
    uint64_t budget() const { return budget_; }
    uint64_t spent() const { return spent_; }

    // Active: the pool points are visible; values are not.
    const std::vector<BitVector>& pool() const;

    bool query(const BitVector& x);       // Classic only
    bool query_pool(uint32_t pool_idx);   // Active only
    Sample next();                        // Passive only

private:
    QueryOracle(BooleanFunction f, Model m, uint64_t budget)
        : target_(std::move(f)), model_(m), budget_(budget) {}

    void charge();

    BooleanFunction target_;
    Model model_;
    uint64_t budget_ = 0;
    uint64_t spent_ = 0;
    std::vector<BitVector> points_;  // pool (Active) or sequence (Passive)
    uint64_t cursor_ = 0;            // Passive position
};

}  // namespace bft
