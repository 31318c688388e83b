#include "qtop/sierpinski.hpp"
#include "qtop/enumerate.hpp"

namespace qtop {

namespace {

Json opens_json(const QTopology& t)
{
    return Json(open_strings(t));
}

} // namespace

QSpace sierpinski_space(AlgebraPtr q, const EnumerationBudget& budget)
{
    const Index n = q->size();
    const FnTable id = FnTable::identity(n);
    return QSpace(generate_topology(std::move(q), n, std::span<const FnTable>(&id, 1), budget));
}

Report check_membership_continuity(const QSpace& space, const EnumerationBudget& budget)
{
    Report report("membership-continuity");
    const auto& tau = space.topology();
    const QSpace s = sierpinski_space(tau.algebra_ptr(), budget);
    for (const auto& p : all_functions(space.ground_size(), tau.algebra().size(), budget)) {
        const bool member = tau.contains(p);
        const auto bad_open = find_discontinuity(p, space, s);
        report.bump("candidates");
        if (member)
            report.bump("members");
        if (member == !bad_open)
            continue;
        Json w;
        w["map"] = labelled(p, tau.algebra());
        w["direction"] = member ? "open but not continuous" : "continuous but not open";
        if (bad_open)
            w["sierpinski_open"] = labelled(*bad_open, tau.algebra());
        w["opens"] = opens_json(tau);
        report.fail(std::move(w));
    }
    return report;
}

Report check_sierpinski_smallest(const QSpace& space, const EnumerationBudget& budget)
{
    Report report("sierpinski-smallest");
    const auto& tau = space.topology();
    const auto q = tau.algebra_ptr();
    const QSpace s = sierpinski_space(q, budget);

    std::vector<LiftArrow> family;
    for (const auto& p : all_functions(space.ground_size(), q->size(), budget))
        if (is_continuous(p, space, s))
            family.push_back({p, s});
    report.set_stat("continuous_maps", static_cast<std::int64_t>(family.size()));

    const QTopology lift = optimal_lift(q, space.ground_size(), family, budget);
    const bool lift_equal = lift == tau;

    bool minimal = true;
    Json minimality_witness;
    for (const auto& other : all_q_topologies(q, space.ground_size(), budget)) {
        report.bump("topologies_examined");
        const QSpace candidate(other);
        bool makes_family_continuous = true;
        for (const auto& arrow : family)
            if (!is_continuous(arrow.map, candidate, s)) {
                makes_family_continuous = false;
                break;
            }
        if (!makes_family_continuous)
            continue;
        report.bump("competitors");
        if (minimal && !tau.is_subset_of(other)) {
            minimal = false;
            minimality_witness = opens_json(other);
        }
    }
    report.set_stat("lift_equal", lift_equal);
    report.set_stat("minimal", minimal);

    if (!lift_equal || !minimal) {
        Json w;
        w["opens"] = opens_json(tau);
        w["lift"] = opens_json(lift);
        w["lift_equal"] = lift_equal;
        w["minimal"] = minimal;
        if (!minimal)
            w["competitor_missing_opens"] = minimality_witness;
        if (lift_equal != minimal)
            w["note"] = "formulations disagree";
        report.fail(std::move(w));
    }
    return report;
}

namespace {

template <class Check>
Report sweep(std::string name, const AlgebraPtr& q, Index max_ground, const EnumerationBudget& budget, Check check)
{
    Report report(std::move(name));
    for (Index n = 0; n <= max_ground; ++n)
        for (const auto& t : all_q_topologies(q, n, budget)) {
            const Report sub = check(QSpace(t), budget);
            report.bump("spaces");
            // Boolean stats such as lift_equal add up to the number of spaces where they held.
            for (const auto& [k, v] : sub.stats())
                report.bump(k, v);
            if (sub.failed()) {
                Json w;
                w["ground"] = n;
                w["opens"] = opens_json(t);
                w["witness"] = *sub.witness();
                report.fail(std::move(w));
            }
        }
    return report;
}

} // namespace

Report check_membership_continuity_all(const AlgebraPtr& q, Index max_ground, const EnumerationBudget& budget)
{
    return sweep("membership-continuity", q, max_ground, budget, check_membership_continuity);
}

Report check_sierpinski_smallest_all(const AlgebraPtr& q, Index max_ground, const EnumerationBudget& budget)
{
    return sweep("sierpinski-smallest", q, max_ground, budget, check_sierpinski_smallest);
}

} // namespace qtop
