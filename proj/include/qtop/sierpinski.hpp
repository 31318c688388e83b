#pragma once

#include "qtop/report.hpp"
#include "qtop/topology.hpp"

namespace qtop {

/// (Q, ⟨id⟩): the carrier of Q with the topology generated by the identity map.
QSpace sierpinski_space(AlgebraPtr q, const EnumerationBudget& budget = {});

/// p ∈ τ exactly when p: (X, τ) -> Sierpinski is continuous, for every p ∈ Q^X.
///
/// The space is not re-validated, so a corrupted open set (QTopology::unchecked) is
/// reported with a witness instead of being rejected up front.
Report check_membership_continuity(const QSpace& space, const EnumerationBudget& budget = {});

/// τ is the smallest topology making all continuous maps into the Sierpinski space
/// continuous. Checked two ways: τ equals the optimal lift of that family, and τ is
/// contained in every enumerated topology making the family continuous.
Report check_sierpinski_smallest(const QSpace& space, const EnumerationBudget& budget = {});

/// Runs `check` on every Q-topology with ground size 0..max_ground and folds the results;
/// the first failure's witness is kept together with the offending space.
Report check_membership_continuity_all(const AlgebraPtr& q, Index max_ground, const EnumerationBudget& budget = {});
Report check_sierpinski_smallest_all(const AlgebraPtr& q, Index max_ground, const EnumerationBudget& budget = {});

} // namespace qtop
