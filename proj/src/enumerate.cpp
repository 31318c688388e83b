#include "qtop/enumerate.hpp"

namespace qtop {

FunctionSpace::iterator::iterator(Index dom, Index cod, std::uint64_t position, std::uint64_t count)
    : _digits(dom, 0), _cod{cod}, _position{position}, _count{count}
{
    if (_position < _count)
        _current = FnTable(dom, cod, _digits);
}

FunctionSpace::iterator& FunctionSpace::iterator::operator++()
{
    if (++_position >= _count)
        return *this;
    for (std::size_t i = _digits.size(); i > 0; --i) {
        if (++_digits[i - 1] < _cod)
            break;
        _digits[i - 1] = 0;
    }
    _current = FnTable(_digits.size(), _cod, _digits);
    return *this;
}

FunctionSpace all_functions(Index dom_size, Index cod_size, const EnumerationBudget& budget)
{
    if (cod_size == 0 && dom_size != 0)
        return FunctionSpace(dom_size, cod_size, 0);
    const auto count = require_pow(cod_size, dom_size, budget.max_subset_space, "function space");
    return FunctionSpace(dom_size, cod_size, count);
}

std::vector<Subset> all_subalgebras(const FiniteAlgebra& a, const EnumerationBudget& budget)
{
    return scan_subalgebras(a, budget);
}

namespace {

std::vector<QTopology> to_topologies(const AlgebraPtr& q, const PowerView& view, const std::vector<Subset>& subsets)
{
    std::vector<QTopology> out;
    out.reserve(subsets.size());
    for (const auto& s : subsets) {
        std::vector<FnTable> opens;
        opens.reserve(s.size());
        for (Index c : s.members())
            opens.push_back(view.decode(c));
        out.push_back(QTopology::unchecked(q, view.exponent(), std::move(opens)));
    }
    // Codes are lexicographic in values, so subset order already is open-list order.
    return out;
}

} // namespace

std::vector<QTopology> all_q_topologies(AlgebraPtr q, Index ground_size, const EnumerationBudget& budget,
                                        TopologyStrategy strategy)
{
    PowerView view(*q, ground_size, budget.max_carrier);
    if (strategy == TopologyStrategy::automatic)
        strategy = bounded_pow(2, view.size(), budget.max_subset_space) ? TopologyStrategy::scan
                                                                        : TopologyStrategy::walk;
    switch (strategy) {
    case TopologyStrategy::scan: return to_topologies(q, view, scan_subalgebras(view, budget));
    case TopologyStrategy::walk: return to_topologies(q, view, walk_subalgebras(view, budget));
    case TopologyStrategy::both: {
        auto scanned = scan_subalgebras(view, budget);
        auto walked = walk_subalgebras(view, budget);
        if (scanned != walked)
            throw Error("topology enumeration strategies disagree: scan found " + std::to_string(scanned.size()) +
                        ", walk found " + std::to_string(walked.size()));
        return to_topologies(q, view, scanned);
    }
    case TopologyStrategy::automatic: break;
    }
    return {};
}

} // namespace qtop
