#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace semind {

/// Malformed or out-of-contract input (bad graph, bad parameters, parse errors).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the caller's work budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : std::runtime_error(what + ": needs " + std::to_string(required) + " units, budget is " +
                             std::to_string(budget)),
          required_(required),
          budget_(budget) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

}  // namespace semind
