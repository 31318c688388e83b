#pragma once

#include "qtop/budget.hpp"
#include "qtop/error.hpp"
#include "qtop/fn_table.hpp"

#include <cassert>
#include <concepts>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qtop {

struct Operation
{
    std::string symbol;
    std::size_t arity = 0;

    friend bool operator==(const Operation&, const Operation&) = default;
};

/// Finite list of operation symbols with finite arities. Symbols are pairwise distinct.
class Signature
{
public:
    Signature() = default;
    explicit Signature(std::vector<Operation> ops);

    [[nodiscard]] std::span<const Operation> ops() const { return _ops; }
    [[nodiscard]] std::size_t size() const { return _ops.size(); }
    [[nodiscard]] const Operation& operator[](std::size_t i) const { return _ops[i]; }
    [[nodiscard]] std::optional<std::size_t> find(std::string_view symbol) const;
    [[nodiscard]] bool has_constants() const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Operation> _ops;
};

/// Raw operation tables keyed by symbol, values in row-major argument order.
using RawTables = std::map<std::string, std::vector<Index>, std::less<>>;

/// A carrier {0..size-1} with one total table per signature symbol.
class FiniteAlgebra
{
public:
    [[nodiscard]] const Signature& signature() const { return _sig; }
    [[nodiscard]] Index size() const { return _size; }
    [[nodiscard]] std::span<const std::string> labels() const { return _labels; }
    [[nodiscard]] const std::string& label(Index i) const { return _labels[i]; }
    [[nodiscard]] std::optional<Index> find_label(std::string_view label) const;
    [[nodiscard]] std::span<const Index> table(std::size_t op) const { return _tables[op]; }

    /// Unchecked lookup; `args.size()` must equal the arity.
    [[nodiscard]] Index apply(std::size_t op, std::span<const Index> args) const
    {
        assert(args.size() == _sig[op].arity);
        return _tables[op][encode_tuple(args, _size)];
    }

    friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

private:
    friend FiniteAlgebra make_algebra(Signature, Index, const RawTables&, std::vector<std::string>);

    Signature _sig;
    Index _size = 0;
    std::vector<std::string> _labels;
    std::vector<std::vector<Index>> _tables;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// Validating constructor. Empty `labels` means decimal index labels.
FiniteAlgebra make_algebra(Signature sig, Index size, const RawTables& tables, std::vector<std::string> labels = {});

/// Checked table lookup by symbol.
Index apply_op(const FiniteAlgebra& a, std::string_view symbol, std::span<const Index> args);

/// Canonical subset of a carrier: strictly increasing members.
class Subset
{
public:
    Subset() = default;
    Subset(Index of_size, std::vector<Index> members);

    [[nodiscard]] Index of_size() const { return _of_size; }
    [[nodiscard]] std::span<const Index> members() const { return _members; }
    [[nodiscard]] std::size_t size() const { return _members.size(); }
    [[nodiscard]] bool empty() const { return _members.empty(); }
    [[nodiscard]] bool contains(Index x) const;
    [[nodiscard]] bool is_subset_of(const Subset& other) const;

    friend bool operator==(const Subset&, const Subset&) = default;
    friend auto operator<=>(const Subset& a, const Subset& b) { return a._members <=> b._members; }

private:
    Index _of_size = 0;
    std::vector<Index> _members;
};

/// Anything with a finite carrier and signature-indexed operations: a materialized
/// FiniteAlgebra or a lazily evaluated power.
template <class A>
concept OperationalAlgebra = requires(const A& a, std::size_t op, std::span<const Index> args) {
    { a.size() } -> std::convertible_to<Index>;
    { a.signature() } -> std::convertible_to<const Signature&>;
    { a.apply(op, args) } -> std::convertible_to<Index>;
};

/// An operation application whose result leaves a candidate subset.
struct Escape
{
    std::size_t op = 0;
    std::vector<Index> args;
    Index result = 0;
};

namespace detail {

/// Calls visit(args) for every tuple in ranges[0] x ... x ranges[k-1]; each range is
/// [first, last) into `pool`. Stops early when visit returns false.
template <class Visit>
bool for_each_tuple(std::span<const Index> pool, std::span<const std::pair<std::size_t, std::size_t>> ranges,
                    std::vector<Index>& args, Visit&& visit)
{
    const std::size_t k = ranges.size();
    for (const auto& [lo, hi] : ranges)
        if (lo >= hi)
            return true;
    std::vector<std::size_t> pos(k);
    for (std::size_t i = 0; i < k; ++i)
        pos[i] = ranges[i].first;
    args.resize(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i)
            args[i] = pool[pos[i]];
        if (!visit(std::span<const Index>(args)))
            return false;
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++pos[i] < ranges[i].second)
                break;
            pos[i] = ranges[i].first;
            if (i == 0)
                return true;
        }
        if (k == 0)
            return true;
    }
}

} // namespace detail

/// First operation application over members of `b` that leaves `b`, if any.
template <OperationalAlgebra A>
std::optional<Escape> find_escape(const A& a, const Subset& b)
{
    if (b.of_size() != a.size())
        throw ValidationError("subset ambient size does not match the carrier");
    std::vector<bool> in(a.size(), false);
    for (Index x : b.members())
        in[x] = true;
    const auto pool = b.members();
    const auto& sig = a.signature();
    std::vector<Index> args;
    std::optional<Escape> escape;
    for (std::size_t op = 0; op < sig.size() && !escape; ++op) {
        std::vector<std::pair<std::size_t, std::size_t>> ranges(sig[op].arity, {0, pool.size()});
        detail::for_each_tuple(pool, ranges, args, [&](std::span<const Index> t) {
            const Index r = a.apply(op, t);
            if (in[r])
                return true;
            escape = Escape{op, {t.begin(), t.end()}, r};
            return false;
        });
    }
    return escape;
}

/// Subalgebra test: non-empty and closed under every operation.
template <OperationalAlgebra A>
bool is_closed_subset(const A& a, const Subset& b)
{
    return !b.empty() && !find_escape(a, b);
}

/// Least closed superset of closed ∪ extra, where `closed` is already closed (possibly empty).
///
/// Semi-naive worklist: each round only evaluates tuples that touch at least one element
/// added in the previous round, so nothing is applied twice.
template <OperationalAlgebra A>
Subset extend_subalgebra(const A& a, const Subset& closed, std::span<const Index> extra)
{
    const Index n = a.size();
    if (closed.of_size() != n)
        throw ValidationError("subset ambient size does not match the carrier");
    const auto& sig = a.signature();
    std::vector<bool> in(n, false);
    std::vector<Index> members;
    auto add = [&](Index x) {
        if (!in[x]) {
            in[x] = true;
            members.push_back(x);
        }
    };
    for (Index x : closed.members())
        add(x);
    std::size_t old_count = members.size();
    for (Index x : extra) {
        if (x >= n)
            throw ValidationError("generator " + std::to_string(x) + " outside carrier of size " + std::to_string(n));
        add(x);
    }
    if (members.empty()) {
        if (!sig.has_constants())
            throw EmptyGeneratorsNoConstants();
    }
    if (old_count == 0) {
        for (std::size_t op = 0; op < sig.size(); ++op)
            if (sig[op].arity == 0)
                add(a.apply(op, {}));
    }

    std::vector<Index> args;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    while (old_count < members.size()) {
        const std::size_t delta_end = members.size();
        for (std::size_t op = 0; op < sig.size(); ++op) {
            const std::size_t k = sig[op].arity;
            for (std::size_t first_new = 0; first_new < k; ++first_new) {
                ranges.assign(k, {0, delta_end});
                for (std::size_t i = 0; i < first_new; ++i)
                    ranges[i] = {0, old_count};
                ranges[first_new] = {old_count, delta_end};
                // `members` may grow while visiting; the ranges only reach below delta_end.
                const std::vector<Index> pool(members.begin(), members.begin() + delta_end);
                detail::for_each_tuple(pool, ranges, args, [&](std::span<const Index> t) {
                    add(a.apply(op, t));
                    return true;
                });
            }
        }
        old_count = delta_end;
    }
    return Subset(n, std::move(members));
}

/// ⟨S⟩: the least subalgebra containing S.
template <OperationalAlgebra A>
Subset generate_subalgebra(const A& a, const Subset& s)
{
    return extend_subalgebra(a, Subset(a.size(), {}), s.members());
}

/// True iff f commutes with every operation: f(ω^A(a)) = ω^B(f∘a).
bool is_homomorphism(const FnTable& f, const FiniteAlgebra& a, const FiniteAlgebra& b);

/// First (operation, argument tuple over A) where f fails to commute; `result` is ω^A(args).
std::optional<Escape> find_homomorphism_violation(const FnTable& f, const FiniteAlgebra& a, const FiniteAlgebra& b);

/// Q^X evaluated on demand. Element codes are the row-major encodings of FnTables
/// exponent -> |base|, so code order is lexicographic value order.
class PowerView
{
public:
    PowerView(const FiniteAlgebra& base, Index exponent, std::uint64_t max_carrier);

    [[nodiscard]] Index size() const { return _size; }
    [[nodiscard]] const Signature& signature() const { return _base->signature(); }
    [[nodiscard]] const FiniteAlgebra& base() const { return *_base; }
    [[nodiscard]] Index exponent() const { return _exponent; }

    [[nodiscard]] Index apply(std::size_t op, std::span<const Index> args) const;
    [[nodiscard]] Index encode(const FnTable& f) const;
    [[nodiscard]] FnTable decode(Index code) const;

private:
    const FiniteAlgebra* _base;
    Index _exponent;
    Index _size;
};

/// Materialized Q^X with pointwise operations. Carrier order is lexicographic on values;
/// labels are the value strings over the base labels.
FiniteAlgebra power_algebra(const FiniteAlgebra& a, Index exponent_size, const EnumerationBudget& budget = {});

/// Componentwise product over row-major tuples (last factor varies fastest).
FiniteAlgebra product_algebra(std::span<const FiniteAlgebra> factors, const EnumerationBudget& budget = {});

/// Joins labels into one carrier label: plain concatenation when each part is one
/// character, '.'-separated otherwise.
std::string join_labels(std::span<const std::string> parts);

} // namespace qtop
