#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace orka {

// Thrown when the graph would exceed the configured per-partition node budget.
class BudgetError : public std::runtime_error {
public:
    BudgetError(std::uint64_t nodes, std::uint64_t budget)
        : std::runtime_error("node budget exceeded: " + std::to_string(nodes) +
                             " states per partition, budget " + std::to_string(budget)),
          nodes_(nodes), budget_(budget) {}

    std::uint64_t nodes() const noexcept { return nodes_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t nodes_;
    std::uint64_t budget_;
};

// Thrown by the hyperbolic kernel form when cosh/sinh arguments would overflow.
class KernelOverflowError : public std::range_error {
public:
    explicit KernelOverflowError(double arg)
        : std::range_error("hyperbolic kernel form overflows at argument " + std::to_string(arg)) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orka
