#include "qtop/topology.hpp"

#include <algorithm>

namespace qtop {

namespace {

std::vector<FnTable> canonical(std::vector<FnTable> opens)
{
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    return opens;
}

void check_points(const FiniteAlgebra& q, Index ground_size, std::span<const FnTable> opens)
{
    for (const auto& p : opens)
        if (p.dom_size() != ground_size || p.cod_size() != q.size())
            throw ValidationError("open " + to_string(p) + " is not a function " + std::to_string(ground_size) +
                                  " -> " + std::to_string(q.size()));
}

} // namespace

QTopology::QTopology(AlgebraPtr q, Index ground_size, std::vector<FnTable> opens)
    : _q{std::move(q)}, _ground_size{ground_size}, _opens{canonical(std::move(opens))}
{
    if (!_q)
        throw ValidationError("topology without an algebra");
    check_points(*_q, _ground_size, _opens);
}

QTopology QTopology::make(AlgebraPtr q, Index ground_size, std::vector<FnTable> opens, const EnumerationBudget& budget)
{
    QTopology t(std::move(q), ground_size, std::move(opens));
    if (auto escape = find_topology_escape(*t._q, ground_size, t._opens, budget))
        throw ValidationError("not a Q-topology: " + *escape);
    return t;
}

QTopology QTopology::unchecked(AlgebraPtr q, Index ground_size, std::vector<FnTable> opens)
{
    return QTopology(std::move(q), ground_size, std::move(opens));
}

bool QTopology::contains(const FnTable& p) const
{
    return std::binary_search(_opens.begin(), _opens.end(), p);
}

bool QTopology::is_subset_of(const QTopology& other) const
{
    return std::includes(other._opens.begin(), other._opens.end(), _opens.begin(), _opens.end());
}

bool operator==(const QTopology& a, const QTopology& b)
{
    return a._ground_size == b._ground_size && (a._q == b._q || *a._q == *b._q) && a._opens == b._opens;
}

QSpace::QSpace(Index ground_size, QTopology topology)
    : _topology{std::move(topology)}
{
    if (_topology.ground_size() != ground_size)
        throw ValidationError("space ground size does not match its topology");
}

std::string labelled(const FnTable& p, const FiniteAlgebra& q)
{
    std::vector<std::string> parts;
    for (Index v : p.values())
        parts.push_back(q.label(v));
    const bool short_parts = std::all_of(parts.begin(), parts.end(), [](const auto& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i && !short_parts)
            out += ',';
        out += parts[i];
    }
    return out;
}

std::string describe_escape(const PowerView& view, const Escape& e)
{
    std::string out = view.signature()[e.op].symbol + "(";
    for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i)
            out += ", ";
        out += labelled(view.decode(e.args[i]), view.base());
    }
    out += ") = " + labelled(view.decode(e.result), view.base()) + " escapes";
    return out;
}

std::optional<std::string> find_topology_escape(const FiniteAlgebra& q, Index ground_size,
                                                std::span<const FnTable> opens, const EnumerationBudget& budget)
{
    check_points(q, ground_size, opens);
    if (opens.empty())
        return std::string("empty");
    PowerView view(q, ground_size, budget.max_carrier);
    std::vector<Index> codes;
    codes.reserve(opens.size());
    for (const auto& p : opens)
        codes.push_back(view.encode(p));
    if (auto e = find_escape(view, Subset(view.size(), std::move(codes))))
        return describe_escape(view, *e);
    return std::nullopt;
}

bool is_q_topology(const FiniteAlgebra& q, Index ground_size, std::span<const FnTable> opens,
                   const EnumerationBudget& budget)
{
    return !find_topology_escape(q, ground_size, opens, budget);
}

QTopology generate_topology(AlgebraPtr q, Index ground_size, std::span<const FnTable> generators,
                            const EnumerationBudget& budget)
{
    check_points(*q, ground_size, generators);
    PowerView view(*q, ground_size, budget.max_carrier);
    std::vector<Index> codes;
    codes.reserve(generators.size());
    for (const auto& g : generators)
        codes.push_back(view.encode(g));
    const Subset closed = generate_subalgebra(view, Subset(view.size(), std::move(codes)));
    std::vector<FnTable> opens;
    opens.reserve(closed.size());
    for (Index c : closed.members())
        opens.push_back(view.decode(c));
    return QTopology::unchecked(std::move(q), ground_size, std::move(opens));
}

QTopology discrete_topology(AlgebraPtr q, Index ground_size, const EnumerationBudget& budget)
{
    PowerView view(*q, ground_size, budget.max_carrier);
    std::vector<FnTable> opens;
    opens.reserve(view.size());
    for (Index c = 0; c < view.size(); ++c)
        opens.push_back(view.decode(c));
    return QTopology::unchecked(std::move(q), ground_size, std::move(opens));
}

FnTable preimage(const FnTable& f, const FnTable& alpha)
{
    return compose(alpha, f);
}

std::optional<FnTable> find_discontinuity(const FnTable& f, const QSpace& dom, const QSpace& cod)
{
    if (dom.topology().algebra_ptr() != cod.topology().algebra_ptr() && !(dom.algebra() == cod.algebra()))
        throw ValidationError("continuity between spaces over different algebras");
    if (f.dom_size() != dom.ground_size() || f.cod_size() != cod.ground_size())
        throw ValidationError("map " + to_string(f) + " does not fit the spaces (" + std::to_string(dom.ground_size()) +
                              " -> " + std::to_string(cod.ground_size()) + ")");
    for (const auto& alpha : cod.topology().opens())
        if (!dom.topology().contains(preimage(f, alpha)))
            return alpha;
    return std::nullopt;
}

bool is_continuous(const FnTable& f, const QSpace& dom, const QSpace& cod)
{
    return !find_discontinuity(f, dom, cod);
}

QTopology optimal_lift(AlgebraPtr q, Index ground_size, std::span<const LiftArrow> family,
                       const EnumerationBudget& budget)
{
    std::vector<FnTable> generators;
    for (const auto& [f, target] : family) {
        if (!(target.algebra() == *q))
            throw ValidationError("lift target over a different algebra");
        if (f.dom_size() != ground_size || f.cod_size() != target.ground_size())
            throw ValidationError("lift map " + to_string(f) + " does not fit its target");
        for (const auto& open : target.topology().opens())
            generators.push_back(preimage(f, open));
    }
    return generate_topology(std::move(q), ground_size, generators, budget);
}

std::vector<FnTable> product_projections(std::span<const Index> sizes)
{
    Index total = 1;
    for (Index s : sizes)
        total *= s;
    std::vector<std::vector<Index>> values(sizes.size(), std::vector<Index>(total));
    std::vector<Index> digits(sizes.size());
    for (Index c = 0; c < total; ++c) {
        Index rest = c;
        for (std::size_t j = sizes.size(); j > 0; --j) {
            values[j - 1][c] = rest % sizes[j - 1];
            rest /= sizes[j - 1];
        }
    }
    std::vector<FnTable> out;
    for (std::size_t j = 0; j < sizes.size(); ++j)
        out.emplace_back(total, sizes[j], std::move(values[j]));
    return out;
}

FnTable pairing(std::span<const FnTable> maps)
{
    if (maps.empty())
        throw ValidationError("pairing of no maps");
    const Index dom = maps.front().dom_size();
    Index cod = 1;
    for (const auto& m : maps) {
        if (m.dom_size() != dom)
            throw ValidationError("paired maps have different domains");
        cod *= m.cod_size();
    }
    std::vector<Index> v(dom);
    for (Index z = 0; z < dom; ++z) {
        Index code = 0;
        for (const auto& m : maps)
            code = code * m.cod_size() + m(z);
        v[z] = code;
    }
    return FnTable(dom, cod, std::move(v));
}

QSpace product_space(std::span<const QSpace> factors, const EnumerationBudget& budget)
{
    if (factors.empty())
        throw ValidationError("product of an empty list of spaces");
    std::vector<Index> sizes;
    std::uint64_t ground = 1;
    for (const auto& f : factors) {
        if (!(f.algebra() == factors.front().algebra()))
            throw ValidationError("product factors over different algebras");
        sizes.push_back(f.ground_size());
        if (f.ground_size() != 0 && ground > budget.max_carrier / f.ground_size())
            throw BudgetExceeded("product ground set exceeds the budget of " + std::to_string(budget.max_carrier));
        ground *= f.ground_size();
    }
    auto projections = product_projections(sizes);
    std::vector<LiftArrow> family;
    for (std::size_t j = 0; j < factors.size(); ++j)
        family.push_back({projections[j], factors[j]});
    auto q = factors.front().topology().algebra_ptr();
    return QSpace(optimal_lift(q, static_cast<Index>(ground), family, budget));
}

QTopology transport_topology(const QTopology& t, const FnTable& f, const EnumerationBudget& budget)
{
    if (!f.is_bijection() || f.cod_size() != t.ground_size())
        throw ValidationError("transport needs a bijection onto the ground set of the topology");
    std::vector<FnTable> generators;
    for (const auto& open : t.opens())
        generators.push_back(preimage(f, open));
    return generate_topology(t.algebra_ptr(), f.dom_size(), generators, budget);
}

std::vector<std::string> open_strings(const QTopology& t)
{
    std::vector<std::string> out;
    for (const auto& p : t.opens())
        out.push_back(labelled(p, t.algebra()));
    return out;
}

} // namespace qtop
