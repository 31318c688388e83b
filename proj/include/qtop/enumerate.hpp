#pragma once

#include "qtop/algebra.hpp"
#include "qtop/topology.hpp"

#include <cstdint>
#include <iterator>
#include <set>
#include <vector>

namespace qtop {

/// All functions dom -> cod in lexicographic value order, produced lazily.
class FunctionSpace
{
public:
    class iterator
    {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = FnTable;
        using difference_type = std::ptrdiff_t;
        using pointer = const FnTable*;
        using reference = const FnTable&;

        iterator() = default;
        iterator(Index dom, Index cod, std::uint64_t position, std::uint64_t count);

        reference operator*() const { return _current; }
        pointer operator->() const { return &_current; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator& a, const iterator& b) { return a._position == b._position; }

    private:
        std::vector<Index> _digits;
        FnTable _current;
        Index _cod = 1;
        std::uint64_t _position = 0;
        std::uint64_t _count = 0;
    };

    FunctionSpace(Index dom_size, Index cod_size, std::uint64_t count)
        : _dom{dom_size}, _cod{cod_size}, _count{count} {}

    [[nodiscard]] iterator begin() const { return {_dom, _cod, 0, _count}; }
    [[nodiscard]] iterator end() const { return {_dom, _cod, _count, _count}; }
    [[nodiscard]] std::uint64_t size() const { return _count; }

private:
    Index _dom;
    Index _cod;
    std::uint64_t _count;
};

/// cod^dom tables; the count must fit `max_subset_space`.
FunctionSpace all_functions(Index dom_size, Index cod_size, const EnumerationBudget& budget = {});

/// Every non-empty subset, tested directly for closure. Needs 2^|A| within budget.
template <OperationalAlgebra A>
std::vector<Subset> scan_subalgebras(const A& a, const EnumerationBudget& budget)
{
    const Index n = a.size();
    const auto space = require_pow(2, n, budget.max_subset_space, "subset scan");
    std::vector<Subset> out;
    std::vector<Index> members;
    for (std::uint64_t mask = 1; mask < space; ++mask) {
        members.clear();
        for (Index x = 0; x < n; ++x)
            if (mask >> x & 1u)
                members.push_back(x);
        Subset s(n, members);
        if (!find_escape(a, s))
            out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Every subalgebra, reached by closing: start from the minimal ones and repeatedly form
/// ⟨B ∪ {x}⟩. Any subalgebra C ⊋ B contains such a one-step extension, so the walk is
/// complete. The number of subalgebras found must fit `max_subset_space`.
template <OperationalAlgebra A>
std::vector<Subset> walk_subalgebras(const A& a, const EnumerationBudget& budget)
{
    const Index n = a.size();
    std::set<Subset> seen;
    std::vector<Subset> queue;
    auto visit = [&](Subset s) {
        if (seen.insert(s).second) {
            if (seen.size() > budget.max_subset_space)
                throw BudgetExceeded("subalgebra walk found more than " + std::to_string(budget.max_subset_space) +
                                     " subalgebras");
            queue.push_back(std::move(s));
        }
    };
    const Subset empty(n, {});
    if (a.signature().has_constants())
        visit(generate_subalgebra(a, empty));
    else
        for (Index x = 0; x < n; ++x)
            visit(extend_subalgebra(a, empty, std::span<const Index>(&x, 1)));
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Subset b = queue[head];
        for (Index x = 0; x < n; ++x)
            if (!b.contains(x))
                visit(extend_subalgebra(a, b, std::span<const Index>(&x, 1)));
    }
    return {seen.begin(), seen.end()};
}

/// All subalgebras of a finite algebra by direct subset scan. This never calls the closure
/// routine, so it can audit generate_subalgebra.
std::vector<Subset> all_subalgebras(const FiniteAlgebra& a, const EnumerationBudget& budget = {});

enum class TopologyStrategy
{
    automatic, ///< scan when 2^|Q^X| fits the budget, walk otherwise
    scan,
    walk,
    both, ///< run both and require identical output
};

/// Every Q-topology on a ground set of the given size, in canonical order.
std::vector<QTopology> all_q_topologies(AlgebraPtr q, Index ground_size, const EnumerationBudget& budget = {},
                                        TopologyStrategy strategy = TopologyStrategy::automatic);

} // namespace qtop
