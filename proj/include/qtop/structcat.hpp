#pragma once

#include "qtop/report.hpp"
#include "qtop/topology.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qtop {

/// Opaque name of a structure on a ground set. Only the owning category can interpret it.
struct StructureHandle
{
    std::uint64_t code = 0;

    friend auto operator<=>(const StructureHandle&, const StructureHandle&) = default;
};

/// A structured set (X, s); X = {0..ground_size-1}.
struct Object
{
    Index ground_size = 0;
    StructureHandle structure;

    friend bool operator==(const Object&, const Object&) = default;
};

struct Arrow
{
    FnTable map;
    Object target;
};

/// A category of sets with structure, restricted to finite ground sets: per-size structure
/// enumeration, an admissibility predicate, an optional optimal lift and a distinguished
/// object (S, u) with |S| = |Q|.
///
/// Implementations must be deterministic and safe to call concurrently.
class StructuredCategory
{
public:
    explicit StructuredCategory(EnumerationBudget budget)
        : _budget{budget} {}
    virtual ~StructuredCategory() = default;

    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual const AlgebraPtr& algebra() const = 0;
    [[nodiscard]] virtual std::vector<StructureHandle> structures(Index ground_size) const = 0;
    [[nodiscard]] virtual bool admissible(const FnTable& f, const Object& from, const Object& to) const = 0;
    [[nodiscard]] virtual Object sierpinski() const = 0;

    /// nullopt when the category cannot compute lifts.
    [[nodiscard]] virtual std::optional<StructureHandle> optimal_lift(Index ground_size,
                                                                      std::span<const Arrow> family) const;

    /// The Q-topology behind an object, for categories that expose one.
    [[nodiscard]] virtual std::optional<QTopology> underlying_topology(const Object& o) const;

    /// Witness form of an object.
    [[nodiscard]] virtual Json describe(const Object& o) const;

    [[nodiscard]] const EnumerationBudget& budget() const { return _budget; }

private:
    EnumerationBudget _budget;
};

/// Φ_X found a set of admissible maps into (S, u) that is not a subalgebra of Q^X.
class ClosureViolation : public Error
{
public:
    explicit ClosureViolation(Json witness);
    [[nodiscard]] const Json& witness() const { return _witness; }

private:
    Json _witness;
};

/// Every object with ground size 0..max_ground, in enumeration order.
std::vector<Object> all_objects(const StructuredCategory& cat, Index max_ground);

/// Admissible maps compose.
Report check_axiom_a1(const StructuredCategory& cat, Index max_ground);

/// For each bijection f and t ∈ C(Y) exactly one s ∈ C(X) makes f and f⁻¹ admissible. When the
/// category supports lifts, that s must be the lift of {f into (Y, t)}; when it exposes
/// topologies, it must be the transported topology.
Report check_axiom_a2(const StructuredCategory& cat, Index max_ground);

/// g: (Z, u) -> (X, s) is admissible iff every f_j ∘ g is, over all probes with |Z| <= max_probe_ground.
Report is_optimal_family(const StructuredCategory& cat, const Object& source, std::span<const Arrow> family,
                         Index max_probe_ground);

/// For every object, the family of all admissible maps into the distinguished object is optimal.
Report is_sierpinski_object(const StructuredCategory& cat, Index max_ground);

/// Every family of maps into (S, u) has an optimal lift.
Report check_condition_1(const StructuredCategory& cat, Index max_ground);

/// Every operation ω: S^n -> S is admissible, where S^n carries the lift of its projections.
/// Also checks ω = ω^pointwise(p_0, ..., p_{n-1}) as table equality and, when topologies are
/// exposed, that ω is an open of the product.
Report check_condition_2(const StructuredCategory& cat);

/// Φ_X(s) = {p ∈ Q^X | p: (X, s) -> (S, u) admissible}. Throws ClosureViolation when that set
/// is not a Q-topology; the witness carries the tupling map x -> (p_j(x)).
QTopology phi(const StructuredCategory& cat, Index ground_size, StructureHandle s);

/// s_τ: the lift of all continuous maps (X, τ) -> Q-Sierpinski. Throws Unsupported without lifts.
StructureHandle phi_inverse(const StructuredCategory& cat, Index ground_size, const QTopology& tau);

/// Φ_X is a bijection C(X) -> Q(X) with inverse s_τ, and f: (X, s) -> (Y, t) is admissible
/// iff q ∘ f ∈ Φ_X(s) for every q ∈ Φ_Y(t).
Report verify_characterization(const StructuredCategory& cat, Index max_ground);

} // namespace qtop
