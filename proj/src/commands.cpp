#include "qtop/commands.hpp"
#include "qtop/adapters.hpp"
#include "qtop/enumerate.hpp"
#include "qtop/sierpinski.hpp"
#include "qtop/workspace.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace qtop {

namespace {

struct Options
{
    std::string workspace_file;
    std::string format = "both";
    std::string report_out;
    std::uint64_t max_carrier = 0;
    std::uint64_t max_subset_space = 0;

    std::string algebra, from, to, map, values, space, adapter, strategy = "auto", input;
    std::string set;
    std::vector<std::string> list, generators, arrows;
    Index exponent = 0, ground = 0, max_ground = 2;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> out;
    if (text.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        auto end = text.find(sep, start);
        out.emplace_back(text.substr(start, end == std::string_view::npos ? end : end - start));
        if (end == std::string_view::npos)
            return out;
        start = end + 1;
    }
}

std::unique_ptr<StructuredCategory> resolve_adapter(const Workspace& ws, const std::string& spec)
{
    AdapterRef ref;
    if (auto it = ws.adapters.find(spec); it != ws.adapters.end()) {
        ref = it->second;
    } else {
        auto parts = split(spec, ':');
        if (parts.size() < 2 || parts.size() > 3)
            throw ValidationError("adapter must be a workspace name or kind:ALGEBRA[:seed], got '" + spec + "'");
        ref.kind = parts[0];
        ref.algebra = parts[1];
        if (parts.size() == 3)
            ref.seed = std::stoull(parts[2]);
    }
    return make_adapter(ref.kind, ws.algebra(ref.algebra), ws.budget, ref.seed);
}

FnTable resolve_map(const Workspace& ws, const std::string& name_or_values, Index dom, Index cod)
{
    if (auto it = ws.maps.find(name_or_values); it != ws.maps.end()) {
        if (it->second.dom_size() != dom || it->second.cod_size() != cod)
            throw ValidationError("map '" + name_or_values + "' is not a function " + std::to_string(dom) + " -> " +
                                  std::to_string(cod));
        return it->second;
    }
    return parse_fn_table(name_or_values, dom, cod);
}

Json labels_of(const FiniteAlgebra& a, const Subset& s)
{
    Json out = Json::array();
    for (Index x : s.members())
        out.push_back(a.label(x));
    return out;
}

Json topology_json(const QTopology& t)
{
    Json j;
    j["ground"] = t.ground_size();
    j["opens"] = open_strings(t);
    return j;
}

Report closure(const Workspace& ws, const Options& o)
{
    const auto& a = *ws.algebra(o.algebra);
    std::vector<Index> members;
    for (const auto& label : split(o.set, ',')) {
        auto x = a.find_label(label);
        if (!x)
            throw ValidationError("'" + label + "' is not a label of " + o.algebra);
        members.push_back(*x);
    }
    const Subset generated = generate_subalgebra(a, Subset(a.size(), members));
    Report r("closure");
    r.set_stat("size", static_cast<std::int64_t>(generated.size()));
    r.set_result(labels_of(a, generated));
    return r;
}

Report hom_check(const Workspace& ws, const Options& o)
{
    const auto& a = *ws.algebra(o.from);
    const auto& b = *ws.algebra(o.to);
    const FnTable f = !o.map.empty() ? resolve_map(ws, o.map, a.size(), b.size()) : parse_labelled(o.values, a.size(), b);
    Report r("hom-check");
    if (auto v = find_homomorphism_violation(f, a, b)) {
        Json w;
        w["map"] = labelled(f, b);
        w["operation"] = a.signature()[v->op].symbol;
        Json args = Json::array();
        for (Index x : v->args)
            args.push_back(a.label(x));
        w["args"] = args;
        r.fail(std::move(w));
    }
    return r;
}

Report algebra_result(std::string name, const FiniteAlgebra& a)
{
    Report r(std::move(name));
    r.set_stat("size", static_cast<std::int64_t>(a.size()));
    r.set_result(serialize_algebra("result", a));
    return r;
}

Report enumerate_topologies(const Workspace& ws, const Options& o)
{
    static const std::map<std::string, TopologyStrategy> strategies = {
        {"auto", TopologyStrategy::automatic},
        {"scan", TopologyStrategy::scan},
        {"walk", TopologyStrategy::walk},
        {"both", TopologyStrategy::both},
    };
    auto it = strategies.find(o.strategy);
    if (it == strategies.end())
        throw ValidationError("unknown strategy '" + o.strategy + "'");
    const auto tops = all_q_topologies(ws.algebra(o.algebra), o.ground, ws.budget, it->second);
    Report r("enumerate-topologies");
    r.set_stat("count", static_cast<std::int64_t>(tops.size()));
    Json list = Json::array();
    for (const auto& t : tops)
        list.push_back(open_strings(t));
    r.set_result(std::move(list));
    return r;
}

Report verify_space_check(const Workspace& ws, const Options& o, bool smallest)
{
    if (!o.space.empty()) {
        const auto& s = ws.space(o.space).space;
        return smallest ? check_sierpinski_smallest(s, ws.budget) : check_membership_continuity(s, ws.budget);
    }
    if (o.algebra.empty())
        throw ValidationError("give --space or --algebra");
    const auto& q = ws.algebra(o.algebra);
    return smallest ? check_sierpinski_smallest_all(q, o.max_ground, ws.budget)
                    : check_membership_continuity_all(q, o.max_ground, ws.budget);
}

void emit(const Report& r, const std::string& format, const std::string& report_out, std::ostream& out)
{
    if (format != "machine")
        out << render_text(r);
    if (format != "text")
        out << to_json(r).dump() << '\n';
    if (!report_out.empty()) {
        std::ofstream file(report_out, std::ios::app);
        if (!file)
            throw Error("cannot write '" + report_out + "'");
        file << to_json(r).dump() << '\n';
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite Q-topological spaces: closures, topologies, lifts and characterization checks", "qtop"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand
    Options o;
    app.add_option("--workspace,-w", o.workspace_file, "Workspace file (text or JSON); built-ins when absent");
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"both", "text", "machine"}));
    app.add_option("--report-out", o.report_out, "Append the machine report to this file");
    app.add_option("--max-carrier", o.max_carrier, "Override the carrier budget");
    app.add_option("--max-subset-space", o.max_subset_space, "Override the subset-space budget");

    using Action = std::function<Report(const Workspace&)>;
    Action action;
    auto bind = [&](CLI::App* sub, Action a) { sub->callback([&action, a] { action = a; }); };

    auto* closure_cmd = app.add_subcommand("closure", "Generated subalgebra of a set of carrier labels");
    closure_cmd->add_option("--algebra", o.algebra)->required();
    closure_cmd->add_option("--set", o.set, "Comma-separated carrier labels");
    bind(closure_cmd, [&](const Workspace& ws) { return closure(ws, o); });

    auto* hom = app.add_subcommand("hom-check", "Check that a map between algebras is a homomorphism");
    hom->add_option("--from", o.from)->required();
    hom->add_option("--to", o.to)->required();
    auto* hom_map = hom->add_option("--map", o.map, "Workspace map name or index value string");
    hom->add_option("--values", o.values, "Value string over the labels of --to")->excludes(hom_map);
    bind(hom, [&](const Workspace& ws) { return hom_check(ws, o); });

    auto* power = app.add_subcommand("power", "Pointwise power algebra");
    power->add_option("--algebra", o.algebra)->required();
    power->add_option("--exponent", o.exponent)->required();
    bind(power, [&](const Workspace& ws) {
        return algebra_result("power", power_algebra(*ws.algebra(o.algebra), o.exponent, ws.budget));
    });

    auto* product = app.add_subcommand("product", "Componentwise product algebra");
    product->add_option("--algebras", o.list)->required()->delimiter(',');
    bind(product, [&](const Workspace& ws) {
        std::vector<FiniteAlgebra> fs;
        for (const auto& n : o.list)
            fs.push_back(*ws.algebra(n));
        return algebra_result("product", product_algebra(fs, ws.budget));
    });

    auto* topology = app.add_subcommand("topology", "Q-topology operations");
    topology->require_subcommand(1);
    auto* generate = topology->add_subcommand("generate", "Smallest Q-topology containing generators");
    generate->add_option("--algebra", o.algebra)->required();
    generate->add_option("--ground", o.ground)->required();
    generate->add_option("--gen", o.generators, "Generator value string (repeatable)");
    bind(generate, [&](const Workspace& ws) {
        const auto& q = ws.algebra(o.algebra);
        std::vector<FnTable> gens;
        for (const auto& g : o.generators)
            gens.push_back(parse_labelled(g, o.ground, *q));
        const auto t = generate_topology(q, o.ground, gens, ws.budget);
        Report r("topology-generate");
        r.set_stat("opens", static_cast<std::int64_t>(t.size()));
        r.set_result(topology_json(t));
        return r;
    });

    auto* continuity = app.add_subcommand("continuity", "Check Q-continuity of a map between spaces");
    continuity->add_option("--from", o.from)->required();
    continuity->add_option("--to", o.to)->required();
    continuity->add_option("--map", o.map, "Workspace map name or index value string")->required();
    bind(continuity, [&](const Workspace& ws) {
        const auto& dom = ws.space(o.from).space;
        const auto& cod = ws.space(o.to).space;
        const FnTable f = resolve_map(ws, o.map, dom.ground_size(), cod.ground_size());
        Report r("continuity");
        r.set_stat("opens_checked", static_cast<std::int64_t>(cod.topology().size()));
        if (auto bad = find_discontinuity(f, dom, cod)) {
            Json w;
            w["map"] = to_string(f);
            w["open"] = labelled(*bad, cod.algebra());
            w["preimage"] = labelled(preimage(f, *bad), cod.algebra());
            r.fail(std::move(w));
        }
        return r;
    });

    auto* lift = app.add_subcommand("lift", "Optimal lift of a family of maps into spaces");
    lift->add_option("--algebra", o.algebra)->required();
    lift->add_option("--ground", o.ground)->required();
    lift->add_option("--arrow", o.arrows, "MAP:SPACE (repeatable)");
    bind(lift, [&](const Workspace& ws) {
        std::vector<LiftArrow> family;
        for (const auto& a : o.arrows) {
            auto pos = a.rfind(':');
            if (pos == std::string::npos)
                throw ValidationError("arrow must be MAP:SPACE, got '" + a + "'");
            const auto& target = ws.space(a.substr(pos + 1)).space;
            family.push_back({resolve_map(ws, a.substr(0, pos), o.ground, target.ground_size()), target});
        }
        const auto t = optimal_lift(ws.algebra(o.algebra), o.ground, family, ws.budget);
        Report r("lift");
        r.set_stat("opens", static_cast<std::int64_t>(t.size()));
        r.set_result(topology_json(t));
        return r;
    });

    auto* pspace = app.add_subcommand("product-space", "Product of Q-topological spaces");
    pspace->add_option("--spaces", o.list)->required()->delimiter(',');
    bind(pspace, [&](const Workspace& ws) {
        std::vector<QSpace> fs;
        for (const auto& n : o.list)
            fs.push_back(ws.space(n).space);
        const auto p = product_space(fs, ws.budget);
        Report r("product-space");
        r.set_stat("ground", static_cast<std::int64_t>(p.ground_size()));
        r.set_stat("opens", static_cast<std::int64_t>(p.topology().size()));
        r.set_result(topology_json(p.topology()));
        return r;
    });

    auto* sierpinski = app.add_subcommand("sierpinski", "Q-Sierpinski space");
    sierpinski->add_option("--algebra", o.algebra)->required();
    bind(sierpinski, [&](const Workspace& ws) {
        const auto s = sierpinski_space(ws.algebra(o.algebra), ws.budget);
        Report r("sierpinski");
        r.set_stat("opens", static_cast<std::int64_t>(s.topology().size()));
        r.set_result(topology_json(s.topology()));
        return r;
    });

    auto* enumerate = app.add_subcommand("enumerate", "Brute-force enumerations");
    enumerate->require_subcommand(1);
    auto* subalgebras = enumerate->add_subcommand("subalgebras", "All subalgebras");
    subalgebras->add_option("--algebra", o.algebra)->required();
    bind(subalgebras, [&](const Workspace& ws) {
        const auto& a = *ws.algebra(o.algebra);
        const auto subs = all_subalgebras(a, ws.budget);
        Report r("enumerate-subalgebras");
        r.set_stat("count", static_cast<std::int64_t>(subs.size()));
        Json list = Json::array();
        for (const auto& s : subs)
            list.push_back(labels_of(a, s));
        r.set_result(std::move(list));
        return r;
    });
    auto* topologies = enumerate->add_subcommand("topologies", "All Q-topologies on a ground set");
    topologies->add_option("--algebra", o.algebra)->required();
    topologies->add_option("--ground", o.ground)->required();
    topologies->add_option("--strategy", o.strategy)->check(CLI::IsMember({"auto", "scan", "walk", "both"}));
    bind(topologies, [&](const Workspace& ws) { return enumerate_topologies(ws, o); });

    auto* verify = app.add_subcommand("verify", "Exhaustive checks over enumerated spaces and adapters");
    verify->require_subcommand(1);
    for (bool smallest : {false, true}) {
        auto* cmd = verify->add_subcommand(smallest ? "sierpinski-smallest" : "membership-continuity",
                                           smallest ? "Sierpinski optimality for every space"
                                                    : "Membership iff continuity into the Sierpinski space");
        cmd->alias(smallest ? "theorem-3.2" : "theorem-3.1");
        auto* space_opt = cmd->add_option("--space", o.space);
        cmd->add_option("--algebra", o.algebra)->excludes(space_opt);
        cmd->add_option("--max-ground", o.max_ground);
        bind(cmd, [&, smallest](const Workspace& ws) { return verify_space_check(ws, o, smallest); });
    }
    using AdapterCheck = std::function<Report(const StructuredCategory&, Index)>;
    struct NamedCheck
    {
        std::string name;
        std::string alias;
        std::string help;
        AdapterCheck check;
    };
    const std::vector<NamedCheck> adapter_checks = {
        {"axiom-a1", "", "Admissible maps compose", check_axiom_a1},
        {"axiom-a2", "", "Structures transport uniquely along bijections", check_axiom_a2},
        {"sierpinski-object", "", "Maps into the distinguished object form optimal families", is_sierpinski_object},
        {"condition-1", "", "Every family into the distinguished object has an optimal lift", check_condition_1},
        {"condition-2", "", "Every operation S^n -> S is admissible",
         [](const StructuredCategory& c, Index) { return check_condition_2(c); }},
        {"characterization", "theorem-4.1", "The category is isomorphic to Q-TOP over the same Q",
         verify_characterization},
    };
    for (const auto& [name, alias, help, check] : adapter_checks) {
        auto* cmd = verify->add_subcommand(name, help);
        if (!alias.empty())
            cmd->alias(alias);
        cmd->add_option("--adapter", o.adapter, "Workspace adapter name or kind:ALGEBRA[:seed]")->required();
        if (name != "condition-2")
            cmd->add_option("--max-ground", o.max_ground);
        bind(cmd, [&, check = check](const Workspace& ws) { return check(*resolve_adapter(ws, o.adapter), o.max_ground); });
    }

    auto* show = app.add_subcommand("show", "Print the workspace in canonical form");
    bool show_only = false;
    show->callback([&] { show_only = true; });

    auto* report = app.add_subcommand("report", "Re-render saved machine reports");
    report->add_option("--input", o.input)->required();
    bool report_only = false;
    report->callback([&] { report_only = true; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (report_only) {
            std::istringstream lines(read_file(o.input));
            std::string line;
            int status = 0;
            while (std::getline(lines, line)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos)
                    continue;
                const Report r = report_from_json(Json::parse(line));
                emit(r, o.format, {}, out);
                status = std::max(status, exit_code(r.verdict()));
            }
            return status;
        }

        Workspace ws = parse_workspace(o.workspace_file.empty() ? std::string(builtin_workspace_text())
                                                                 : read_file(o.workspace_file));
        if (o.max_carrier)
            ws.budget.max_carrier = o.max_carrier;
        if (o.max_subset_space)
            ws.budget.max_subset_space = o.max_subset_space;

        if (show_only) {
            out << serialize_workspace(ws);
            return 0;
        }
        const Report r = action(ws);
        emit(r, o.format, o.report_out, out);
        return exit_code(r.verdict());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace qtop
