#pragma once

#include "qtop/algebra.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qtop {

/// A subalgebra of the pointwise power Q^X: the opens of a Q-topological space.
///
/// Opens are kept as an explicit, lexicographically sorted set of FnTables X -> Q, so two
/// topologies are equal exactly when their open lists are.
class QTopology
{
public:
    /// Validates that `opens` is non-empty and closed under every pointwise operation.
    static QTopology make(AlgebraPtr q, Index ground_size, std::vector<FnTable> opens,
                          const EnumerationBudget& budget = {});

    /// No closure check. Only for negative controls that need a corrupted "topology".
    static QTopology unchecked(AlgebraPtr q, Index ground_size, std::vector<FnTable> opens);

    [[nodiscard]] const FiniteAlgebra& algebra() const { return *_q; }
    [[nodiscard]] const AlgebraPtr& algebra_ptr() const { return _q; }
    [[nodiscard]] Index ground_size() const { return _ground_size; }
    [[nodiscard]] std::span<const FnTable> opens() const { return _opens; }
    [[nodiscard]] std::size_t size() const { return _opens.size(); }
    [[nodiscard]] bool contains(const FnTable& p) const;
    [[nodiscard]] bool is_subset_of(const QTopology& other) const;

    friend bool operator==(const QTopology& a, const QTopology& b);

private:
    QTopology(AlgebraPtr q, Index ground_size, std::vector<FnTable> opens);

    AlgebraPtr _q;
    Index _ground_size = 0;
    std::vector<FnTable> _opens;
};

/// (X, τ). The ground set is {0..ground_size-1}.
class QSpace
{
public:
    explicit QSpace(QTopology topology)
        : _topology{std::move(topology)} {}
    QSpace(Index ground_size, QTopology topology);

    [[nodiscard]] Index ground_size() const { return _topology.ground_size(); }
    [[nodiscard]] const QTopology& topology() const { return _topology; }
    [[nodiscard]] const FiniteAlgebra& algebra() const { return _topology.algebra(); }

    friend bool operator==(const QSpace&, const QSpace&) = default;

private:
    QTopology _topology;
};

/// Human-readable description of a failed closure test, e.g. "join(01, 10) = 11 escapes".
std::string describe_escape(const PowerView& view, const Escape& e);

/// The first pointwise operation that leaves `opens`, described, or nullopt when closed.
/// An empty `opens` reports "empty".
std::optional<std::string> find_topology_escape(const FiniteAlgebra& q, Index ground_size,
                                                std::span<const FnTable> opens, const EnumerationBudget& budget = {});

bool is_q_topology(const FiniteAlgebra& q, Index ground_size, std::span<const FnTable> opens,
                   const EnumerationBudget& budget = {});

/// Smallest Q-topology containing `generators`: ⟨generators⟩ inside Q^X.
QTopology generate_topology(AlgebraPtr q, Index ground_size, std::span<const FnTable> generators,
                            const EnumerationBudget& budget = {});

/// All of Q^X.
QTopology discrete_topology(AlgebraPtr q, Index ground_size, const EnumerationBudget& budget = {});

/// f^←(α) = α ∘ f.
FnTable preimage(const FnTable& f, const FnTable& alpha);

/// Every open of `cod` pulls back along f into the opens of `dom`.
bool is_continuous(const FnTable& f, const QSpace& dom, const QSpace& cod);

/// The same check with a witness: the first open of `cod` whose preimage is not open.
std::optional<FnTable> find_discontinuity(const FnTable& f, const QSpace& dom, const QSpace& cod);

struct LiftArrow
{
    FnTable map;
    QSpace target;
};

/// ⟨{q ∘ f_j | q open in target_j}⟩: the smallest topology making every f_j continuous.
QTopology optimal_lift(AlgebraPtr q, Index ground_size, std::span<const LiftArrow> family,
                       const EnumerationBudget& budget = {});

/// Projections out of a row-major product of sets with the given sizes.
std::vector<FnTable> product_projections(std::span<const Index> sizes);

/// The map z -> (maps[0](z), ..., maps[k-1](z)) into the row-major product of the codomains.
FnTable pairing(std::span<const FnTable> maps);

/// Product space: row-major tuples carrying the optimal lift of the projections.
QSpace product_space(std::span<const QSpace> factors, const EnumerationBudget& budget = {});

/// ⟨{q ∘ f | q ∈ t}⟩ for a bijection f: X -> Y, the unique topology on X making f and f⁻¹
/// continuous.
QTopology transport_topology(const QTopology& t, const FnTable& f, const EnumerationBudget& budget = {});

/// Opens as value strings over the carrier labels of Q.
std::vector<std::string> open_strings(const QTopology& t);

/// Value string of p over the labels of q (concatenated or '.'-joined, see join_labels).
std::string labelled(const FnTable& p, const FiniteAlgebra& q);

} // namespace qtop
