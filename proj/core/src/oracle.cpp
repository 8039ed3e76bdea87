#include "bft/oracle.hpp"

namespace bft {

QueryOracle QueryOracle::classic(BooleanFunction f, uint64_t budget) {
    return QueryOracle(std::move(f), Model::Classic, budget);
}

QueryOracle QueryOracle::active(BooleanFunction f, uint32_t pool_size, uint64_t budget, Rng& rng) {
    QueryOracle o(std::move(f), Model::Active, budget);
    o.points_.reserve(pool_size);
    for (uint32_t i = 0; i < pool_size; ++i)
        o.points_.push_back(BitVector::random(o.target_.dim(), rng));
    return o;
}

QueryOracle QueryOracle::passive(BooleanFunction f, uint32_t sequence_len, Rng& rng) {
    QueryOracle o(std::move(f), Model::Passive, sequence_len);
    o.points_.reserve(sequence_len);
    for (uint32_t i = 0; i < sequence_len; ++i)
        o.points_.push_back(BitVector::random(o.target_.dim(), rng));
    return o;
}

const std::vector<BitVector>& QueryOracle::pool() const {
    if (model_ != Model::Active) throw ModelViolation("pool() requires the active model");
    return points_;
}

void QueryOracle::charge() {
    if (spent_ >= budget_) throw BudgetExhausted("query budget exhausted");
    ++spent_;
}

bool QueryOracle::query(const BitVector& x) {
    if (model_ != Model::Classic) throw ModelViolation("free-form query outside the classic model");
    charge();
    return target_.evaluate(x);
}

bool QueryOracle::query_pool(uint32_t pool_idx) {
    if (model_ != Model::Active) throw ModelViolation("pool query outside the active model");
    if (pool_idx >= points_.size()) throw ContractError("pool index out of range");
    charge();
    return target_.evaluate(points_[pool_idx]);
}

Sample QueryOracle::next() {
    if (model_ != Model::Passive) throw ModelViolation("sequential reveal outside the passive model");
    if (cursor_ >= points_.size()) throw BudgetExhausted("passive sample exhausted");
    charge();
    const BitVector& x = points_[cursor_++];
    return {x, target_.evaluate(x)};
}

}  // namespace bft
