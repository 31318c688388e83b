#include "qtop/structcat.hpp"
#include "qtop/enumerate.hpp"
#include "qtop/sierpinski.hpp"

#include <algorithm>
#include <map>

namespace qtop {

std::optional<StructureHandle> StructuredCategory::optimal_lift(Index, std::span<const Arrow>) const
{
    return std::nullopt;
}

std::optional<QTopology> StructuredCategory::underlying_topology(const Object&) const
{
    return std::nullopt;
}

Json StructuredCategory::describe(const Object& o) const
{
    Json j;
    j["ground"] = o.ground_size;
    j["structure"] = o.structure.code;
    return j;
}

ClosureViolation::ClosureViolation(Json witness)
    : Error("admissible maps into the distinguished object are not closed: " + witness.dump()),
      _witness{std::move(witness)}
{}

std::vector<Object> all_objects(const StructuredCategory& cat, Index max_ground)
{
    std::vector<Object> out;
    for (Index n = 0; n <= max_ground; ++n)
        for (auto s : cat.structures(n))
            out.push_back({n, s});
    return out;
}

namespace {

Json arrow_json(const StructuredCategory& cat, const FnTable& f, const Object& from, const Object& to)
{
    Json j;
    j["map"] = to_string(f);
    j["from"] = cat.describe(from);
    j["to"] = cat.describe(to);
    return j;
}

void require_sierpinski_size(const StructuredCategory& cat)
{
    if (cat.sierpinski().ground_size != cat.algebra()->size())
        throw ValidationError("distinguished object of '" + cat.name() + "' must have |Q| points");
}

std::vector<FnTable> admissible_into_sierpinski(const StructuredCategory& cat, const Object& x)
{
    const Object s = cat.sierpinski();
    std::vector<FnTable> out;
    for (const auto& p : all_functions(x.ground_size, s.ground_size, cat.budget()))
        if (cat.admissible(p, x, s))
            out.push_back(p);
    return out;
}

} // namespace

Report check_axiom_a1(const StructuredCategory& cat, Index max_ground)
{
    Report report("axiom-a1");
    const auto objects = all_objects(cat, max_ground);
    const auto& budget = cat.budget();
    for (const auto& x : objects)
        for (const auto& y : objects) {
            std::vector<FnTable> first;
            for (const auto& f : all_functions(x.ground_size, y.ground_size, budget))
                if (cat.admissible(f, x, y))
                    first.push_back(f);
            if (first.empty())
                continue;
            for (const auto& z : objects)
                for (const auto& g : all_functions(y.ground_size, z.ground_size, budget)) {
                    if (!cat.admissible(g, y, z))
                        continue;
                    for (const auto& f : first) {
                        report.bump("composable_pairs");
                        const FnTable gf = compose(g, f);
                        if (cat.admissible(gf, x, z))
                            continue;
                        Json w;
                        w["f"] = arrow_json(cat, f, x, y);
                        w["g"] = arrow_json(cat, g, y, z);
                        w["composite"] = to_string(gf);
                        report.fail(std::move(w));
                    }
                }
        }
    report.set_stat("objects", static_cast<std::int64_t>(objects.size()));
    return report;
}

Report check_axiom_a2(const StructuredCategory& cat, Index max_ground)
{
    Report report("axiom-a2");
    const auto& budget = cat.budget();
    for (Index n = 0; n <= max_ground; ++n) {
        const auto handles = cat.structures(n);
        for (const auto& f : all_functions(n, n, budget)) {
            if (!f.is_bijection())
                continue;
            const FnTable f_inv = inverse(f);
            report.bump("bijections");
            for (auto t : handles) {
                const Object y{n, t};
                std::vector<StructureHandle> matches;
                for (auto s : handles) {
                    const Object x{n, s};
                    if (cat.admissible(f, x, y) && cat.admissible(f_inv, y, x))
                        matches.push_back(s);
                }
                report.bump("transports");
                if (matches.size() != 1) {
                    Json w;
                    w["bijection"] = to_string(f);
                    w["target"] = cat.describe(y);
                    w["reason"] = matches.empty() ? "no structure" : "several structures";
                    w["structures"] = Json::array();
                    for (auto s : matches)
                        w["structures"].push_back(cat.describe({n, s}));
                    report.fail(std::move(w));
                    continue;
                }
                const Object x{n, matches.front()};
                const Arrow arrow{f, y};
                if (auto lifted = cat.optimal_lift(n, std::span<const Arrow>(&arrow, 1))) {
                    report.bump("lift_cross_checks");
                    if (*lifted != x.structure) {
                        Json w;
                        w["bijection"] = to_string(f);
                        w["target"] = cat.describe(y);
                        w["unique"] = cat.describe(x);
                        w["lift"] = cat.describe({n, *lifted});
                        w["reason"] = "unique structure differs from the lift along the bijection";
                        report.fail(std::move(w));
                    }
                }
                auto tt = cat.underlying_topology(y);
                auto ts = cat.underlying_topology(x);
                if (tt && ts) {
                    report.bump("transport_cross_checks");
                    if (!(transport_topology(*tt, f, budget) == *ts)) {
                        Json w;
                        w["bijection"] = to_string(f);
                        w["target"] = cat.describe(y);
                        w["unique"] = cat.describe(x);
                        w["reason"] = "unique structure differs from the transported topology";
                        report.fail(std::move(w));
                    }
                }
            }
        }
    }
    return report;
}

Report is_optimal_family(const StructuredCategory& cat, const Object& source, std::span<const Arrow> family,
                         Index max_probe_ground)
{
    Report report("optimal-family");
    for (const auto& [f, target] : family)
        if (!cat.admissible(f, source, target))
            throw ValidationError("family member " + to_string(f) + " is not admissible from the source");
    const auto& budget = cat.budget();
    for (const auto& probe : all_objects(cat, max_probe_ground)) {
        for (const auto& g : all_functions(probe.ground_size, source.ground_size, budget)) {
            report.bump("probes");
            const bool direct = cat.admissible(g, probe, source);
            std::optional<std::size_t> rejected;
            for (std::size_t j = 0; j < family.size() && !rejected; ++j)
                if (!cat.admissible(compose(family[j].map, g), probe, family[j].target))
                    rejected = j;
            if (direct == !rejected)
                continue;
            Json w;
            w["probe"] = cat.describe(probe);
            w["g"] = to_string(g);
            w["source"] = cat.describe(source);
            if (rejected) {
                w["direction"] = "g admissible but a composite is not";
                w["member"] = arrow_json(cat, family[*rejected].map, source, family[*rejected].target);
            } else {
                w["direction"] = "every composite admissible but g is not";
            }
            report.fail(std::move(w));
        }
    }
    return report;
}

Report is_sierpinski_object(const StructuredCategory& cat, Index max_ground)
{
    Report report("sierpinski-object");
    require_sierpinski_size(cat);
    const Object s = cat.sierpinski();
    for (const auto& x : all_objects(cat, max_ground)) {
        std::vector<Arrow> family;
        for (auto& p : admissible_into_sierpinski(cat, x))
            family.push_back({std::move(p), s});
        report.bump("objects");
        report.bump("family_maps", static_cast<std::int64_t>(family.size()));
        const Report sub = is_optimal_family(cat, x, family, max_ground);
        report.bump("probes", sub.stat("probes"));
        if (sub.failed()) {
            Json w;
            w["object"] = cat.describe(x);
            w["family_size"] = family.size();
            w["optimality"] = *sub.witness();
            report.fail(std::move(w));
        }
    }
    return report;
}

Report check_condition_1(const StructuredCategory& cat, Index max_ground)
{
    Report report("condition-1");
    require_sierpinski_size(cat);
    const Object s = cat.sierpinski();
    const auto& budget = cat.budget();
    for (Index n = 0; n <= max_ground; ++n) {
        std::vector<FnTable> maps;
        for (const auto& p : all_functions(n, s.ground_size, budget))
            maps.push_back(p);
        const auto families = require_pow(2, maps.size(), budget.max_subset_space, "families into S");
        for (std::uint64_t mask = 0; mask < families; ++mask) {
            std::vector<Arrow> family;
            for (std::size_t i = 0; i < maps.size(); ++i)
                if (mask >> i & 1u)
                    family.push_back({maps[i], s});
            report.bump("families");
            const auto lift = cat.optimal_lift(n, family);
            if (!lift) {
                report.skip("'" + cat.name() + "' does not compute optimal lifts");
                return report;
            }
            const Object x{n, *lift};
            Json members = Json::array();
            for (const auto& a : family)
                members.push_back(to_string(a.map));
            bool all_admissible = true;
            for (const auto& a : family)
                if (!cat.admissible(a.map, x, s)) {
                    Json w;
                    w["family"] = members;
                    w["lift"] = cat.describe(x);
                    w["reason"] = "family member not admissible from its lift";
                    w["member"] = to_string(a.map);
                    report.fail(std::move(w));
                    all_admissible = false;
                    break;
                }
            if (!all_admissible)
                continue;
            const Report sub = is_optimal_family(cat, x, family, max_ground);
            report.bump("probes", sub.stat("probes"));
            if (sub.failed()) {
                Json w;
                w["family"] = members;
                w["lift"] = cat.describe(x);
                w["optimality"] = *sub.witness();
                report.fail(std::move(w));
            }
        }
    }
    return report;
}

Report check_condition_2(const StructuredCategory& cat)
{
    Report report("condition-2");
    require_sierpinski_size(cat);
    const Object s = cat.sierpinski();
    const auto& q = *cat.algebra();
    const auto& budget = cat.budget();
    const auto s_topology = cat.underlying_topology(s);
    for (std::size_t op = 0; op < q.signature().size(); ++op) {
        const auto& [symbol, arity] = q.signature()[op];
        const Index ground = static_cast<Index>(require_pow(q.size(), arity, budget.max_carrier, "S^n"));
        const std::vector<Index> sizes(arity, q.size());
        const auto projections = product_projections(sizes);
        std::vector<Arrow> family;
        for (const auto& p : projections)
            family.push_back({p, s});
        const auto lifted = cat.optimal_lift(ground, family);
        if (!lifted) {
            report.skip("'" + cat.name() + "' does not compute optimal lifts");
            return report;
        }
        const Object power{ground, *lifted};
        const FnTable omega(ground, q.size(), {q.table(op).begin(), q.table(op).end()});

        report.bump("operations");
        if (cat.admissible(omega, power, s))
            report.bump("admissible");
        else {
            Json w;
            w["operation"] = symbol;
            w["reason"] = "operation is not admissible S^n -> S";
            w["map"] = arrow_json(cat, omega, power, s);
            report.fail(std::move(w));
        }

        // ω^pointwise(p_0, ..., p_{n-1}) evaluated in Q^(S^n) must be ω's own table.
        PowerView view(q, ground, budget.max_carrier);
        std::vector<Index> codes;
        for (const auto& p : projections)
            codes.push_back(view.encode(p));
        const FnTable combined = view.decode(view.apply(op, codes));
        if (combined == omega)
            report.bump("pointwise_identity");
        else {
            Json w;
            w["operation"] = symbol;
            w["reason"] = "pointwise combination of projections differs from the operation table";
            w["combined"] = to_string(combined);
            w["table"] = to_string(omega);
            report.fail(std::move(w));
        }

        if (auto topology = cat.underlying_topology(power); topology && s_topology) {
            report.bump("membership_checks");
            if (!topology->contains(omega)) {
                Json w;
                w["operation"] = symbol;
                w["reason"] = "operation table is not an open of S^n";
                w["power"] = cat.describe(power);
                report.fail(std::move(w));
            }
            if (arity > 0) {
                const std::vector<QSpace> copies(arity, QSpace(*s_topology));
                if (!(product_space(copies, budget).topology() == *topology)) {
                    Json w;
                    w["operation"] = symbol;
                    w["reason"] = "lift of projections differs from the product topology";
                    w["power"] = cat.describe(power);
                    report.fail(std::move(w));
                }
            }
        }
    }
    return report;
}

QTopology phi(const StructuredCategory& cat, Index ground_size, StructureHandle s)
{
    require_sierpinski_size(cat);
    const auto& q = cat.algebra();
    const Object x{ground_size, s};
    auto maps = admissible_into_sierpinski(cat, x);
    if (maps.empty()) {
        Json w;
        w["object"] = cat.describe(x);
        w["reason"] = "no admissible map into the distinguished object";
        throw ClosureViolation(std::move(w));
    }
    PowerView view(*q, ground_size, cat.budget().max_carrier);
    std::vector<Index> codes;
    for (const auto& p : maps)
        codes.push_back(view.encode(p));
    if (auto e = find_escape(view, Subset(view.size(), codes))) {
        const std::size_t k = e->args.size();
        std::vector<FnTable> parts;
        for (Index c : e->args)
            parts.push_back(view.decode(c));
        Json w;
        w["object"] = cat.describe(x);
        w["reason"] = "admissible maps not closed under " + q->signature()[e->op].symbol;
        w["escape"] = describe_escape(view, *e);
        if (k > 0) {
            // The tupling map x -> (p_j(x)) into S^k; ω ∘ tupling is the escaping point.
            const FnTable tupling = pairing(parts);
            w["tupling_map"] = to_string(tupling);
            const std::vector<Index> sizes(k, q->size());
            std::vector<Arrow> projections;
            for (auto& p : product_projections(sizes))
                projections.push_back({std::move(p), cat.sierpinski()});
            if (auto power = cat.optimal_lift(tupling.cod_size(), projections)) {
                const Object target{tupling.cod_size(), *power};
                w["tupling_admissible"] = cat.admissible(tupling, x, target);
                const FnTable omega(tupling.cod_size(), q->size(),
                                    {q->table(e->op).begin(), q->table(e->op).end()});
                w["operation_admissible"] = cat.admissible(omega, target, cat.sierpinski());
            }
        }
        throw ClosureViolation(std::move(w));
    }
    return QTopology::unchecked(q, ground_size, std::move(maps));
}

StructureHandle phi_inverse(const StructuredCategory& cat, Index ground_size, const QTopology& tau)
{
    const auto& q = cat.algebra();
    const QSpace space(tau);
    const QSpace s = sierpinski_space(q, cat.budget());
    std::vector<Arrow> family;
    for (const auto& p : all_functions(ground_size, q->size(), cat.budget()))
        if (is_continuous(p, space, s))
            family.push_back({p, cat.sierpinski()});
    auto lifted = cat.optimal_lift(ground_size, family);
    if (!lifted)
        throw Unsupported("'" + cat.name() + "' does not compute optimal lifts");
    return *lifted;
}

Report verify_characterization(const StructuredCategory& cat, Index max_ground)
{
    Report report("characterization");
    require_sierpinski_size(cat);
    const auto& q = cat.algebra();
    const auto& budget = cat.budget();

    std::map<std::pair<Index, StructureHandle>, QTopology> images;
    Json counts = Json::object();
    bool lifts_supported = true;

    for (Index n = 0; n <= max_ground; ++n) {
        const auto handles = cat.structures(n);
        const auto topologies = all_q_topologies(q, n, budget);
        report.set_stat("C(" + std::to_string(n) + ")", static_cast<std::int64_t>(handles.size()));
        report.set_stat("Q(" + std::to_string(n) + ")", static_cast<std::int64_t>(topologies.size()));
        counts[std::to_string(n)] = handles.size();

        // (a) Φ_X is a bijection C(X) -> Q(X).
        std::map<std::vector<FnTable>, StructureHandle> preimages;
        for (auto s : handles) {
            QTopology image = [&] {
                try {
                    return phi(cat, n, s);
                } catch (const ClosureViolation& e) {
                    Json w;
                    w["stage"] = "phi";
                    w["violation"] = e.witness();
                    report.fail(std::move(w));
                    return QTopology::unchecked(q, n, {});
                }
            }();
            if (image.size() == 0)
                return report;
            const std::vector<FnTable> key(image.opens().begin(), image.opens().end());
            if (auto [it, fresh] = preimages.emplace(key, s); !fresh) {
                Json w;
                w["stage"] = "phi injective";
                w["first"] = cat.describe({n, it->second});
                w["second"] = cat.describe({n, s});
                w["image"] = open_strings(image);
                report.fail(std::move(w));
            }
            images.emplace(std::pair{n, s}, std::move(image));
        }
        for (const auto& tau : topologies)
            if (!preimages.count({tau.opens().begin(), tau.opens().end()})) {
                Json w;
                w["stage"] = "phi surjective";
                w["ground"] = n;
                w["missing"] = open_strings(tau);
                report.fail(std::move(w));
            }
        if (report.failed())
            return report;

        // Round trips through s_τ.
        if (!lifts_supported)
            continue;
        try {
            for (const auto& tau : topologies) {
                const StructureHandle s = phi_inverse(cat, n, tau);
                report.bump("round_trips");
                if (!(images.count({n, s}) && images.at({n, s}) == tau)) {
                    Json w;
                    w["stage"] = "phi(phi_inverse(tau)) = tau";
                    w["tau"] = open_strings(tau);
                    w["lift"] = cat.describe({n, s});
                    report.fail(std::move(w));
                }
            }
            for (auto s : handles) {
                report.bump("round_trips");
                if (phi_inverse(cat, n, images.at({n, s})) != s) {
                    Json w;
                    w["stage"] = "phi_inverse(phi(s)) = s";
                    w["structure"] = cat.describe({n, s});
                    report.fail(std::move(w));
                }
            }
        } catch (const Unsupported& e) {
            lifts_supported = false;
            report.skip(std::string("round trips not checked: ") + e.what());
        }
    }
    if (report.failed())
        return report;

    // (b) f admissible iff q ∘ f ∈ Φ_X(s) for every q ∈ Φ_Y(t); continuity is the second route.
    const auto objects = all_objects(cat, max_ground);
    for (const auto& x : objects) {
        const auto& phi_x = images.at({x.ground_size, x.structure});
        const QSpace space_x(phi_x);
        for (const auto& y : objects) {
            const auto& phi_y = images.at({y.ground_size, y.structure});
            const QSpace space_y(phi_y);
            for (const auto& f : all_functions(x.ground_size, y.ground_size, budget)) {
                report.bump("morphisms");
                const bool admissible = cat.admissible(f, x, y);
                const bool criterion = std::all_of(phi_y.opens().begin(), phi_y.opens().end(),
                                                   [&](const FnTable& open) { return phi_x.contains(compose(open, f)); });
                const bool continuous = is_continuous(f, space_x, space_y);
                if (criterion != continuous) {
                    Json w = arrow_json(cat, f, x, y);
                    w["stage"] = "composition criterion disagrees with continuity";
                    report.fail(std::move(w));
                }
                if (admissible != criterion) {
                    Json w = arrow_json(cat, f, x, y);
                    w["stage"] = "morphism correspondence";
                    w["admissible"] = admissible;
                    w["continuous_between_images"] = criterion;
                    report.fail(std::move(w));
                }
            }
        }
    }
    Json result;
    result["structure_counts"] = std::move(counts);
    report.set_result(std::move(result));
    return report;
}

} // namespace qtop
