#include "qtop/adapters.hpp"
#include "qtop/enumerate.hpp"
#include "qtop/sierpinski.hpp"

#include <algorithm>
#include <random>

namespace qtop {

QTopAdapter::QTopAdapter(AlgebraPtr q, EnumerationBudget budget, Distinguished distinguished)
    : StructuredCategory(budget), _q{std::move(q)}, _distinguished{distinguished}
{
    budget.validate();
    const QTopology u = distinguished == Distinguished::sierpinski
                            ? sierpinski_space(_q, budget).topology()
                            : discrete_topology(_q, _q->size(), budget);
    _sierpinski = {_q->size(), handle_of(u)};
}

std::string QTopAdapter::name() const
{
    return _distinguished == Distinguished::sierpinski ? "qtop" : "discrete-sierpinski";
}

StructureHandle QTopAdapter::handle_of(const QTopology& t) const
{
    std::lock_guard lock(_mutex);
    auto& table = _interned[t.ground_size()];
    std::vector<FnTable> key(t.opens().begin(), t.opens().end());
    auto [it, fresh] = table.codes.emplace(std::move(key), table.topologies.size());
    if (fresh)
        table.topologies.push_back(t);
    return StructureHandle{it->second};
}

const QTopology& QTopAdapter::topology(const Object& o) const
{
    std::lock_guard lock(_mutex);
    auto it = _interned.find(o.ground_size);
    if (it == _interned.end() || o.structure.code >= it->second.topologies.size())
        throw ValidationError("unknown structure handle " + std::to_string(o.structure.code) + " on " +
                              std::to_string(o.ground_size) + " points");
    return it->second.topologies[o.structure.code];
}

std::vector<StructureHandle> QTopAdapter::structures(Index ground_size) const
{
    {
        std::lock_guard lock(_mutex);
        if (auto it = _enumerated.find(ground_size); it != _enumerated.end())
            return it->second;
    }
    std::vector<StructureHandle> handles;
    for (const auto& t : all_q_topologies(_q, ground_size, budget()))
        handles.push_back(handle_of(t));
    std::lock_guard lock(_mutex);
    return _enumerated.emplace(ground_size, std::move(handles)).first->second;
}

bool QTopAdapter::admissible(const FnTable& f, const Object& from, const Object& to) const
{
    return is_continuous(f, QSpace(topology(from)), QSpace(topology(to)));
}

std::optional<StructureHandle> QTopAdapter::optimal_lift(Index ground_size, std::span<const Arrow> family) const
{
    std::vector<LiftArrow> arrows;
    arrows.reserve(family.size());
    for (const auto& [f, target] : family)
        arrows.push_back({f, QSpace(topology(target))});
    return handle_of(qtop::optimal_lift(_q, ground_size, arrows, budget()));
}

std::optional<QTopology> QTopAdapter::underlying_topology(const Object& o) const
{
    return topology(o);
}

Json QTopAdapter::describe(const Object& o) const
{
    Json j = StructuredCategory::describe(o);
    j["opens"] = open_strings(topology(o));
    return j;
}

RelabeledAdapter::RelabeledAdapter(AlgebraPtr q, std::uint64_t seed, EnumerationBudget budget)
    : StructuredCategory(budget), _inner(std::move(q), budget), _seed{seed}
{}

std::string RelabeledAdapter::name() const
{
    return "relabeled:" + std::to_string(_seed);
}

const RelabeledAdapter::Codes& RelabeledAdapter::codes(Index ground_size) const
{
    {
        std::lock_guard lock(_mutex);
        if (auto it = _codes.find(ground_size); it != _codes.end())
            return it->second;
    }
    Codes c;
    c.inner_of = _inner.structures(ground_size);
    std::mt19937_64 rng(_seed ^ (0x9e3779b97f4a7c15ULL * (ground_size + 1)));
    std::shuffle(c.inner_of.begin(), c.inner_of.end(), rng);
    for (std::uint64_t i = 0; i < c.inner_of.size(); ++i)
        c.outer_of.emplace(c.inner_of[i], i);
    std::lock_guard lock(_mutex);
    return _codes.emplace(ground_size, std::move(c)).first->second;
}

Object RelabeledAdapter::inner(const Object& o) const
{
    const auto& c = codes(o.ground_size);
    if (o.structure.code >= c.inner_of.size())
        throw ValidationError("unknown structure code " + std::to_string(o.structure.code));
    return {o.ground_size, c.inner_of[o.structure.code]};
}

std::vector<StructureHandle> RelabeledAdapter::structures(Index ground_size) const
{
    const auto n = codes(ground_size).inner_of.size();
    std::vector<StructureHandle> out(n);
    for (std::uint64_t i = 0; i < n; ++i)
        out[i] = StructureHandle{i};
    return out;
}

bool RelabeledAdapter::admissible(const FnTable& f, const Object& from, const Object& to) const
{
    return _inner.admissible(f, inner(from), inner(to));
}

Object RelabeledAdapter::sierpinski() const
{
    const Object s = _inner.sierpinski();
    return {s.ground_size, StructureHandle{codes(s.ground_size).outer_of.at(s.structure)}};
}

std::optional<StructureHandle> RelabeledAdapter::optimal_lift(Index ground_size, std::span<const Arrow> family) const
{
    std::vector<Arrow> inner_family;
    for (const auto& [f, target] : family)
        inner_family.push_back({f, inner(target)});
    const auto lifted = _inner.optimal_lift(ground_size, inner_family);
    return StructureHandle{codes(ground_size).outer_of.at(*lifted)};
}

const QTopology& RelabeledAdapter::hidden_topology(const Object& o) const
{
    return _inner.topology(inner(o));
}

BrokenCompositionAdapter::BrokenCompositionAdapter(AlgebraPtr q, EnumerationBudget budget)
    : StructuredCategory(budget), _q{std::move(q)}
{}

bool BrokenCompositionAdapter::admissible(const FnTable& f, const Object& from, const Object& to) const
{
    if (from.ground_size == to.ground_size && f.is_identity())
        return true;
    if (from.ground_size != 2 || to.ground_size != 2)
        return false;
    return f == FnTable(2, 2, {1, 0}) || f == FnTable::constant(2, 2, 0);
}

DuplicatedAdapter::DuplicatedAdapter(AlgebraPtr q, EnumerationBudget budget)
    : StructuredCategory(budget), _inner(std::move(q), budget)
{}

std::vector<StructureHandle> DuplicatedAdapter::structures(Index ground_size) const
{
    std::vector<StructureHandle> out;
    for (auto h : _inner.structures(ground_size)) {
        out.push_back(StructureHandle{2 * h.code});
        out.push_back(StructureHandle{2 * h.code + 1});
    }
    return out;
}

bool DuplicatedAdapter::admissible(const FnTable& f, const Object& from, const Object& to) const
{
    return _inner.admissible(f, {from.ground_size, StructureHandle{from.structure.code / 2}},
                             {to.ground_size, StructureHandle{to.structure.code / 2}});
}

Object DuplicatedAdapter::sierpinski() const
{
    const Object s = _inner.sierpinski();
    return {s.ground_size, StructureHandle{2 * s.structure.code}};
}

std::optional<StructureHandle> DuplicatedAdapter::optimal_lift(Index ground_size, std::span<const Arrow> family) const
{
    std::vector<Arrow> inner_family;
    for (const auto& [f, target] : family)
        inner_family.push_back({f, {target.ground_size, StructureHandle{target.structure.code / 2}}});
    return StructureHandle{2 * _inner.optimal_lift(ground_size, inner_family)->code};
}

bool DroppedMapAdapter::admissible(const FnTable& f, const Object& from, const Object& to) const
{
    const Index q = algebra()->size();
    const auto discrete = [&](const Object& o) { return o.ground_size == 2 && topology(o).size() == q * q; };
    if (f == FnTable(2, 2, {1, 0}) && discrete(from) && discrete(to))
        return false;
    return QTopAdapter::admissible(f, from, to);
}

std::vector<std::string> adapter_kinds()
{
    return {"qtop", "relabeled", "broken-a1", "duplicated", "drop-map", "discrete-sierpinski"};
}

std::unique_ptr<StructuredCategory> make_adapter(std::string_view kind, AlgebraPtr q, EnumerationBudget budget,
                                                 std::uint64_t seed)
{
    if (kind == "qtop")
        return std::make_unique<QTopAdapter>(std::move(q), budget);
    if (kind == "relabeled")
        return std::make_unique<RelabeledAdapter>(std::move(q), seed, budget);
    if (kind == "broken-a1")
        return std::make_unique<BrokenCompositionAdapter>(std::move(q), budget);
    if (kind == "duplicated")
        return std::make_unique<DuplicatedAdapter>(std::move(q), budget);
    if (kind == "drop-map")
        return std::make_unique<DroppedMapAdapter>(std::move(q), budget);
    if (kind == "discrete-sierpinski")
        return std::make_unique<QTopAdapter>(std::move(q), budget, QTopAdapter::Distinguished::discrete);
    throw ValidationError("unknown adapter kind '" + std::string(kind) + "'");
}

} // namespace qtop
