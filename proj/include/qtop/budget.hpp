#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace qtop {

/// Limits on brute-force work. Exceeding any of them raises BudgetExceeded; nothing is
/// ever silently truncated.
struct EnumerationBudget
{
    std::uint64_t max_subset_space = std::uint64_t{1} << 20;
    std::uint64_t max_carrier = 4096;

    void validate() const;
};

/// base^exponent, or nullopt once the value passes `limit`.
std::optional<std::uint64_t> bounded_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t limit);

/// base^exponent, raising BudgetExceeded (mentioning `what`) above `limit`.
std::uint64_t require_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t limit, std::string_view what);

} // namespace qtop
