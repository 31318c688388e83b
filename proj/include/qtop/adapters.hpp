#pragma once

#include "qtop/structcat.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace qtop {

/// Q-TOP itself: structures are the Q-topologies on each ground set, admissible maps are the
/// continuous ones, the distinguished object is the Q-Sierpinski space.
class QTopAdapter : public StructuredCategory
{
public:
    enum class Distinguished
    {
        sierpinski, ///< (Q, ⟨id⟩)
        discrete,   ///< (Q, Q^Q), a deliberately wrong choice
    };

    explicit QTopAdapter(AlgebraPtr q, EnumerationBudget budget = {},
                         Distinguished distinguished = Distinguished::sierpinski);

    [[nodiscard]] std::string name() const override;
    [[nodiscard]] const AlgebraPtr& algebra() const override { return _q; }
    [[nodiscard]] std::vector<StructureHandle> structures(Index ground_size) const override;
    [[nodiscard]] bool admissible(const FnTable& f, const Object& from, const Object& to) const override;
    [[nodiscard]] Object sierpinski() const override { return _sierpinski; }
    [[nodiscard]] std::optional<StructureHandle> optimal_lift(Index ground_size,
                                                              std::span<const Arrow> family) const override;
    [[nodiscard]] std::optional<QTopology> underlying_topology(const Object& o) const override;
    [[nodiscard]] Json describe(const Object& o) const override;

    [[nodiscard]] const QTopology& topology(const Object& o) const;
    [[nodiscard]] StructureHandle handle_of(const QTopology& t) const;

private:
    struct Interned
    {
        std::map<std::vector<FnTable>, std::uint64_t> codes;
        std::deque<QTopology> topologies;
    };

    AlgebraPtr _q;
    Distinguished _distinguished;
    Object _sierpinski;
    mutable std::mutex _mutex;
    mutable std::map<Index, Interned> _interned;
    mutable std::map<Index, std::vector<StructureHandle>> _enumerated;
};

/// Q-TOP behind scrambled codes: per ground size the canonical enumeration is shuffled with
/// a seeded generator, and handles are positions in the shuffled order.
class RelabeledAdapter : public StructuredCategory
{
public:
    RelabeledAdapter(AlgebraPtr q, std::uint64_t seed, EnumerationBudget budget = {});

    [[nodiscard]] std::string name() const override;
    [[nodiscard]] const AlgebraPtr& algebra() const override { return _inner.algebra(); }
    [[nodiscard]] std::vector<StructureHandle> structures(Index ground_size) const override;
    [[nodiscard]] bool admissible(const FnTable& f, const Object& from, const Object& to) const override;
    [[nodiscard]] Object sierpinski() const override;
    [[nodiscard]] std::optional<StructureHandle> optimal_lift(Index ground_size,
                                                              std::span<const Arrow> family) const override;

    /// The topology a code stands for. Not part of the category interface.
    [[nodiscard]] const QTopology& hidden_topology(const Object& o) const;

private:
    struct Codes
    {
        std::vector<StructureHandle> inner_of;          // outer code -> inner handle
        std::map<StructureHandle, std::uint64_t> outer_of; // inner handle -> outer code
    };

    const Codes& codes(Index ground_size) const;
    [[nodiscard]] Object inner(const Object& o) const;

    QTopAdapter _inner;
    std::uint64_t _seed;
    mutable std::mutex _mutex;
    mutable std::map<Index, Codes> _codes;
};

/// Negative control for axiom A1: one structure per set; admits identities and, on 2-sets,
/// the swap and the constant map at 0. swap ∘ const0 = const1 is rejected.
class BrokenCompositionAdapter : public StructuredCategory
{
public:
    explicit BrokenCompositionAdapter(AlgebraPtr q, EnumerationBudget budget = {});

    [[nodiscard]] std::string name() const override { return "broken-a1"; }
    [[nodiscard]] const AlgebraPtr& algebra() const override { return _q; }
    [[nodiscard]] std::vector<StructureHandle> structures(Index) const override { return {StructureHandle{0}}; }
    [[nodiscard]] bool admissible(const FnTable& f, const Object& from, const Object& to) const override;
    [[nodiscard]] Object sierpinski() const override { return {_q->size(), StructureHandle{0}}; }

private:
    AlgebraPtr _q;
};

/// Negative control for axiom A2: every Q-topology is listed under two handles (2h, 2h+1).
class DuplicatedAdapter : public StructuredCategory
{
public:
    explicit DuplicatedAdapter(AlgebraPtr q, EnumerationBudget budget = {});

    [[nodiscard]] std::string name() const override { return "duplicated"; }
    [[nodiscard]] const AlgebraPtr& algebra() const override { return _inner.algebra(); }
    [[nodiscard]] std::vector<StructureHandle> structures(Index ground_size) const override;
    [[nodiscard]] bool admissible(const FnTable& f, const Object& from, const Object& to) const override;
    [[nodiscard]] Object sierpinski() const override;
    [[nodiscard]] std::optional<StructureHandle> optimal_lift(Index ground_size,
                                                              std::span<const Arrow> family) const override;

private:
    QTopAdapter _inner;
};

/// Negative control for the morphism correspondence: Q-TOP, except that the swap between
/// discrete two-point spaces is not admissible.
class DroppedMapAdapter : public QTopAdapter
{
public:
    explicit DroppedMapAdapter(AlgebraPtr q, EnumerationBudget budget = {})
        : QTopAdapter(std::move(q), budget) {}

    [[nodiscard]] std::string name() const override { return "drop-map"; }
    [[nodiscard]] bool admissible(const FnTable& f, const Object& from, const Object& to) const override;
};

/// Registered adapter kinds: qtop, relabeled, broken-a1, duplicated, drop-map, discrete-sierpinski.
std::vector<std::string> adapter_kinds();

std::unique_ptr<StructuredCategory> make_adapter(std::string_view kind, AlgebraPtr q, EnumerationBudget budget = {},
                                                 std::uint64_t seed = 0);

} // namespace qtop
