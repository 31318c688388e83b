#include "qtop/budget.hpp"
#include "qtop/error.hpp"

#include <string>

namespace qtop {

void EnumerationBudget::validate() const
{
    if (max_subset_space == 0 || max_carrier == 0)
        throw ValidationError("enumeration budget values must be positive");
}

std::optional<std::uint64_t> bounded_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t limit)
{
    std::uint64_t value = 1;
    for (std::uint64_t i = 0; i < exponent; ++i) {
        if (base != 0 && value > limit / base)
            return std::nullopt;
        value *= base;
    }
    if (value > limit)
        return std::nullopt;
    return value;
}

std::uint64_t require_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t limit, std::string_view what)
{
    auto v = bounded_pow(base, exponent, limit);
    if (!v)
        throw BudgetExceeded(std::string(what) + ": " + std::to_string(base) + "^" + std::to_string(exponent) +
                             " exceeds the budget of " + std::to_string(limit));
    return *v;
}

} // namespace qtop
