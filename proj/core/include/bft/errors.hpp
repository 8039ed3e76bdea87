#pragma once

#include <stdexcept>
#include <string>

namespace bft {

// Precondition / dimension-mismatch violations.
struct ContractError : std::invalid_argument {
    explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Instance too large for an exact/brute-force path.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Query oracle refused a call.
struct BudgetExhausted : std::runtime_error {
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct ModelViolation : std::logic_error {
    explicit ModelViolation(const std::string& what) : std::logic_error(what) {}
};

// File or descriptor problems, message includes the path/input context.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bft
