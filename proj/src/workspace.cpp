#include "qtop/workspace.hpp"
#include "qtop/adapters.hpp"
#include "qtop/report.hpp"
#include "qtop/sierpinski.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace qtop {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      _line{line}, _column{column}
{}

const AlgebraPtr& Workspace::algebra(std::string_view name) const
{
    auto it = algebras.find(std::string(name));
    if (it == algebras.end())
        throw ValidationError("no algebra named '" + std::string(name) + "'");
    return it->second;
}

const NamedSpace& Workspace::space(std::string_view name) const
{
    auto it = spaces.find(std::string(name));
    if (it == spaces.end())
        throw ValidationError("no space named '" + std::string(name) + "'");
    return it->second;
}

const FnTable& Workspace::map(std::string_view name) const
{
    auto it = maps.find(std::string(name));
    if (it == maps.end())
        throw ValidationError("no map named '" + std::string(name) + "'");
    return it->second;
}

bool operator==(const Workspace& a, const Workspace& b)
{
    if (a.algebras.size() != b.algebras.size())
        return false;
    for (const auto& [name, alg] : a.algebras) {
        auto it = b.algebras.find(name);
        if (it == b.algebras.end() || !(*alg == *it->second))
            return false;
    }
    return a.spaces == b.spaces && a.maps == b.maps && a.adapters == b.adapters &&
           a.budget.max_carrier == b.budget.max_carrier && a.budget.max_subset_space == b.budget.max_subset_space;
}

FnTable parse_labelled(std::string_view text, Index dom_size, const FiniteAlgebra& q)
{
    std::vector<std::string_view> parts;
    if (text.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (true) {
            auto end = text.find(',', start);
            parts.push_back(text.substr(start, end == std::string_view::npos ? end : end - start));
            if (end == std::string_view::npos)
                break;
            start = end + 1;
        }
    } else if (!text.empty()) {
        for (std::size_t i = 0; i < text.size(); ++i)
            parts.push_back(text.substr(i, 1));
    }
    std::vector<Index> values;
    for (auto part : parts) {
        auto v = q.find_label(part);
        if (!v)
            throw ValidationError("'" + std::string(part) + "' is not a carrier label (in '" + std::string(text) + "')");
        values.push_back(*v);
    }
    return FnTable(dom_size, q.size(), std::move(values));
}

namespace {

// Definitions shared by both front ends. Every method validates and throws ValidationError.
class Builder
{
public:
    struct RawOp
    {
        std::string symbol;
        std::size_t arity;
        std::vector<std::string> values; // carrier labels
    };

    Workspace ws;

    void algebra_explicit(const std::string& name, Index size, std::vector<std::string> labels,
                          const std::vector<RawOp>& ops)
    {
        fresh_algebra(name);
        if (size == 0)
            throw ValidationError("algebra carrier must be non-empty");
        if (labels.empty())
            for (Index i = 0; i < size; ++i)
                labels.push_back(std::to_string(i));
        if (labels.size() != size)
            throw ValidationError("expected " + std::to_string(size) + " labels, got " + std::to_string(labels.size()));
        std::vector<Operation> sig;
        RawTables tables;
        for (const auto& op : ops) {
            sig.push_back({op.symbol, op.arity});
            std::vector<Index> values;
            for (const auto& v : op.values) {
                auto it = std::find(labels.begin(), labels.end(), v);
                if (it == labels.end())
                    throw ValidationError("table for '" + op.symbol + "' uses unknown label '" + v + "'");
                values.push_back(static_cast<Index>(it - labels.begin()));
            }
            if (!tables.emplace(op.symbol, std::move(values)).second)
                throw ValidationError("duplicate operation symbol '" + op.symbol + "'");
        }
        put_algebra(name, make_algebra(Signature(std::move(sig)), size, tables, std::move(labels)));
    }

    void algebra_power(const std::string& name, const std::string& base, Index exponent)
    {
        fresh_algebra(name);
        put_algebra(name, power_algebra(*ws.algebra(base), exponent, ws.budget));
    }

    void algebra_product(const std::string& name, const std::vector<std::string>& factors)
    {
        fresh_algebra(name);
        std::vector<FiniteAlgebra> fs;
        for (const auto& f : factors)
            fs.push_back(*ws.algebra(f));
        put_algebra(name, product_algebra(fs, ws.budget));
    }

    void space_explicit(const std::string& name, const std::string& algebra, Index ground,
                        const std::vector<std::string>& opens)
    {
        fresh_space(name);
        const auto& q = ws.algebra(algebra);
        std::vector<FnTable> tables;
        for (const auto& o : opens)
            tables.push_back(parse_labelled(o, ground, *q));
        if (auto escape = find_topology_escape(*q, ground, tables, ws.budget))
            throw ValidationError("space '" + name + "' is not a Q-topology: " + *escape);
        put_space(name, algebra, QSpace(QTopology::unchecked(q, ground, std::move(tables))));
    }

    void space_sierpinski(const std::string& name, const std::string& algebra)
    {
        fresh_space(name);
        put_space(name, algebra, sierpinski_space(ws.algebra(algebra), ws.budget));
    }

    void space_discrete(const std::string& name, const std::string& algebra, Index ground)
    {
        fresh_space(name);
        put_space(name, algebra, QSpace(discrete_topology(ws.algebra(algebra), ground, ws.budget)));
    }

    void space_generated(const std::string& name, const std::string& algebra, Index ground,
                         const std::vector<std::string>& generators)
    {
        fresh_space(name);
        const auto& q = ws.algebra(algebra);
        std::vector<FnTable> tables;
        for (const auto& g : generators)
            tables.push_back(parse_labelled(g, ground, *q));
        put_space(name, algebra, QSpace(generate_topology(q, ground, tables, ws.budget)));
    }

    void space_product(const std::string& name, const std::vector<std::string>& factors)
    {
        fresh_space(name);
        std::vector<QSpace> fs;
        for (const auto& f : factors)
            fs.push_back(ws.space(f).space);
        if (fs.empty())
            throw ValidationError("product of an empty list of spaces");
        put_space(name, ws.space(factors.front()).algebra, product_space(fs, ws.budget));
    }

    void map(const std::string& name, Index dom, Index cod, std::string_view values)
    {
        if (ws.maps.count(name))
            throw ValidationError("duplicate map name '" + name + "'");
        ws.maps.emplace(name, parse_fn_table(values, dom, cod));
    }

    void adapter(const std::string& name, AdapterRef ref)
    {
        if (ws.adapters.count(name))
            throw ValidationError("duplicate adapter name '" + name + "'");
        (void)ws.algebra(ref.algebra); // existence check
        const auto kinds = adapter_kinds();
        if (std::find(kinds.begin(), kinds.end(), ref.kind) == kinds.end())
            throw ValidationError("unknown adapter kind '" + ref.kind + "'");
        ws.adapters.emplace(name, std::move(ref));
    }

private:
    void fresh_algebra(const std::string& name)
    {
        if (ws.algebras.count(name))
            throw ValidationError("duplicate algebra name '" + name + "'");
    }
    void fresh_space(const std::string& name)
    {
        if (ws.spaces.count(name))
            throw ValidationError("duplicate space name '" + name + "'");
    }
    void put_algebra(const std::string& name, FiniteAlgebra a)
    {
        ws.algebras.emplace(name, std::make_shared<const FiniteAlgebra>(std::move(a)));
    }
    void put_space(const std::string& name, const std::string& algebra, QSpace space)
    {
        // Spaces built from named parts share the workspace algebra pointer.
        auto rebound = QSpace(QTopology::unchecked(ws.algebra(algebra), space.ground_size(),
                                                   {space.topology().opens().begin(), space.topology().opens().end()}));
        ws.spaces.emplace(name, NamedSpace{algebra, std::move(rebound)});
    }
};

struct Token
{
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#')
            ++j;
        out.push_back({std::string(line.substr(i, j - i)), i + 1});
        i = j;
    }
    return out;
}

class TextParser
{
public:
    explicit TextParser(std::string_view text)
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            auto line = text.substr(start, end - start);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            _lines.push_back(tokenize(line));
            start = end + 1;
        }
    }

    Workspace run()
    {
        while (next_statement()) {
            const auto& t = _current;
            const auto& head = t[0].text;
            try {
                if (head == "budget")
                    budget(t);
                else if (head == "algebra")
                    algebra(t);
                else if (head == "space")
                    space(t);
                else if (head == "map")
                    map(t);
                else if (head == "adapter")
                    adapter(t);
                else
                    fail(t[0], "unknown statement '" + head + "'");
            } catch (const ParseError&) {
                throw;
            } catch (const ValidationError& e) {
                fail(t[0], e.what());
            } catch (const BudgetExceeded& e) {
                fail(t[0], e.what());
            }
        }
        return std::move(_builder.ws);
    }

private:
    bool next_statement()
    {
        while (_next < _lines.size()) {
            _line = ++_next;
            if (!_lines[_line - 1].empty()) {
                _current = _lines[_line - 1];
                return true;
            }
        }
        return false;
    }

    [[noreturn]] void fail(const Token& at, const std::string& message) const
    {
        throw ParseError(_line, at.column, message);
    }
    [[noreturn]] void fail_end(const std::vector<Token>& t, const std::string& message) const
    {
        const std::size_t col = t.empty() ? 1 : t.back().column + t.back().text.size();
        throw ParseError(_line, col, message);
    }

    const Token& at(const std::vector<Token>& t, std::size_t i, std::string_view what) const
    {
        if (i >= t.size())
            fail_end(t, "expected " + std::string(what));
        return t[i];
    }

    void expect(const std::vector<Token>& t, std::size_t i, std::string_view keyword) const
    {
        if (at(t, i, "'" + std::string(keyword) + "'").text != keyword)
            fail(t[i], "expected '" + std::string(keyword) + "', found '" + t[i].text + "'");
    }

    std::uint64_t number(const std::vector<Token>& t, std::size_t i, std::string_view what) const
    {
        const auto& tok = at(t, i, what);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
        if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size())
            fail(tok, "expected " + std::string(what) + ", found '" + tok.text + "'");
        return v;
    }

    void no_more(const std::vector<Token>& t, std::size_t i) const
    {
        if (i < t.size())
            fail(t[i], "unexpected '" + t[i].text + "'");
    }

    std::vector<std::string> rest(const std::vector<Token>& t, std::size_t i) const
    {
        std::vector<std::string> out;
        for (; i < t.size(); ++i)
            out.push_back(t[i].text);
        return out;
    }

    void budget(const std::vector<Token>& t)
    {
        const auto& key = at(t, 1, "budget key");
        const auto value = number(t, 2, "budget value");
        no_more(t, 3);
        if (value == 0)
            fail(t[2], "budget values must be positive");
        if (key.text == "max-carrier")
            _builder.ws.budget.max_carrier = value;
        else if (key.text == "max-subset-space")
            _builder.ws.budget.max_subset_space = value;
        else
            fail(key, "unknown budget key '" + key.text + "'");
    }

    // Collects the body lines of a block up to `end`.
    std::vector<std::pair<std::size_t, std::vector<Token>>> block(const std::vector<Token>& header)
    {
        std::vector<std::pair<std::size_t, std::vector<Token>>> body;
        const std::size_t header_line = _line;
        while (true) {
            if (!next_statement()) {
                _line = header_line;
                fail(header[0], "block is missing 'end'");
            }
            if (_current[0].text == "end") {
                no_more(_current, 1);
                break;
            }
            body.emplace_back(_line, _current);
        }
        _line = header_line;
        return body;
    }

    void algebra(const std::vector<Token>& t)
    {
        const std::string name = at(t, 1, "algebra name").text;
        if (at(t, 2, "'size' or '='").text == "=") {
            const auto& kind = at(t, 3, "'power' or 'product'");
            if (kind.text == "power") {
                const std::string base = at(t, 4, "base algebra").text;
                const auto exponent = number(t, 5, "exponent");
                no_more(t, 6);
                _builder.algebra_power(name, base, exponent);
            } else if (kind.text == "product") {
                auto factors = rest(t, 4);
                if (factors.empty())
                    fail_end(t, "expected factor algebras");
                _builder.algebra_product(name, factors);
            } else {
                fail(kind, "expected 'power' or 'product', found '" + kind.text + "'");
            }
            return;
        }
        expect(t, 2, "size");
        const auto size = number(t, 3, "carrier size");
        std::vector<std::string> labels;
        if (t.size() > 4) {
            expect(t, 4, "labels");
            labels = rest(t, 5);
        }
        std::vector<Builder::RawOp> ops;
        const std::size_t header_line = _line;
        for (const auto& [line, body] : block(t)) {
            _line = line;
            expect(body, 0, "op");
            Builder::RawOp op;
            op.symbol = at(body, 1, "operation symbol").text;
            op.arity = number(body, 2, "arity");
            expect(body, 3, "=");
            op.values = rest(body, 4);
            ops.push_back(std::move(op));
        }
        _line = header_line;
        _builder.algebra_explicit(name, size, std::move(labels), ops);
    }

    void space(const std::vector<Token>& t)
    {
        const std::string name = at(t, 1, "space name").text;
        const auto& mode = at(t, 2, "'over' or '='");
        if (mode.text == "=") {
            const auto& kind = at(t, 3, "space constructor");
            if (kind.text == "sierpinski") {
                const std::string alg = at(t, 4, "algebra").text;
                no_more(t, 5);
                _builder.space_sierpinski(name, alg);
            } else if (kind.text == "discrete") {
                const std::string alg = at(t, 4, "algebra").text;
                const auto ground = number(t, 5, "ground size");
                no_more(t, 6);
                _builder.space_discrete(name, alg, ground);
            } else if (kind.text == "generate") {
                const std::string alg = at(t, 4, "algebra").text;
                const auto ground = number(t, 5, "ground size");
                _builder.space_generated(name, alg, ground, rest(t, 6));
            } else if (kind.text == "product") {
                auto factors = rest(t, 4);
                if (factors.empty())
                    fail_end(t, "expected factor spaces");
                _builder.space_product(name, factors);
            } else {
                fail(kind, "unknown space constructor '" + kind.text + "'");
            }
            return;
        }
        if (mode.text != "over")
            fail(mode, "expected 'over' or '=', found '" + mode.text + "'");
        const std::string alg = at(t, 3, "algebra").text;
        expect(t, 4, "ground");
        const auto ground = number(t, 5, "ground size");
        no_more(t, 6);
        std::vector<std::string> opens;
        const std::size_t header_line = _line;
        for (const auto& [line, body] : block(t)) {
            _line = line;
            expect(body, 0, "open");
            if (body.size() > 2)
                fail(body[2], "unexpected '" + body[2].text + "'");
            opens.push_back(body.size() == 2 ? body[1].text : std::string());
        }
        _line = header_line;
        _builder.space_explicit(name, alg, ground, opens);
    }

    void map(const std::vector<Token>& t)
    {
        const std::string name = at(t, 1, "map name").text;
        const auto dom = number(t, 2, "domain size");
        expect(t, 3, "->");
        const auto cod = number(t, 4, "codomain size");
        expect(t, 5, "=");
        if (t.size() > 7)
            fail(t[7], "unexpected '" + t[7].text + "'");
        _builder.map(name, dom, cod, t.size() == 7 ? t[6].text : std::string());
    }

    void adapter(const std::vector<Token>& t)
    {
        const std::string name = at(t, 1, "adapter name").text;
        expect(t, 2, "=");
        AdapterRef ref;
        ref.kind = at(t, 3, "adapter kind").text;
        ref.algebra = at(t, 4, "algebra").text;
        if (t.size() > 5) {
            expect(t, 5, "seed");
            ref.seed = number(t, 6, "seed");
            no_more(t, 7);
        }
        _builder.adapter(name, std::move(ref));
    }

    std::vector<std::vector<Token>> _lines;
    std::size_t _next = 0;
    std::size_t _line = 0;
    std::vector<Token> _current;
    Builder _builder;
};

std::vector<std::string> string_list(const Json& j)
{
    std::vector<std::string> out;
    for (const auto& v : j)
        out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    return out;
}

} // namespace

Workspace parse_workspace_text(std::string_view text)
{
    return TextParser(text).run();
}

Workspace parse_workspace_json(std::string_view text)
{
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(1, e.byte, e.what());
    }
    Builder b;
    const auto section = [&](const char* key) { return root.contains(key) ? root.at(key) : Json::array(); };
    try {
        if (root.contains("budget")) {
            const auto& budget = root.at("budget");
            if (budget.contains("max_carrier"))
                b.ws.budget.max_carrier = budget.at("max_carrier").get<std::uint64_t>();
            if (budget.contains("max_subset_space"))
                b.ws.budget.max_subset_space = budget.at("max_subset_space").get<std::uint64_t>();
            b.ws.budget.validate();
        }
        for (const auto& a : section("algebras")) {
            const auto name = a.at("name").get<std::string>();
            if (a.contains("power")) {
                b.algebra_power(name, a.at("power").at("base").get<std::string>(),
                                a.at("power").at("exponent").get<Index>());
            } else if (a.contains("product")) {
                b.algebra_product(name, string_list(a.at("product")));
            } else {
                std::vector<Builder::RawOp> ops;
                std::vector<std::string> labels;
                if (a.contains("labels"))
                    labels = string_list(a.at("labels"));
                for (const auto& op : a.value("ops", Json::array()))
                    ops.push_back({op.at("symbol").get<std::string>(), op.at("arity").get<std::size_t>(),
                                   string_list(op.at("table"))});
                b.algebra_explicit(name, a.at("size").get<Index>(), std::move(labels), ops);
            }
        }
        for (const auto& s : section("spaces")) {
            const auto name = s.at("name").get<std::string>();
            if (s.contains("sierpinski"))
                b.space_sierpinski(name, s.at("sierpinski").get<std::string>());
            else if (s.contains("product"))
                b.space_product(name, string_list(s.at("product")));
            else if (s.contains("discrete"))
                b.space_discrete(name, s.at("discrete").at("algebra").get<std::string>(),
                                 s.at("discrete").at("ground").get<Index>());
            else if (s.contains("generate"))
                b.space_generated(name, s.at("generate").at("algebra").get<std::string>(),
                                  s.at("generate").at("ground").get<Index>(),
                                  string_list(s.at("generate").value("generators", Json::array())));
            else
                b.space_explicit(name, s.at("algebra").get<std::string>(), s.at("ground").get<Index>(),
                                 string_list(s.at("opens")));
        }
        for (const auto& m : section("maps")) {
            std::string values;
            const auto cod = m.at("cod").get<Index>();
            const auto& raw = m.at("values");
            if (raw.is_string())
                values = raw.get<std::string>();
            else
                values = to_string(FnTable(raw.size(), cod, raw.get<std::vector<Index>>()));
            b.map(m.at("name").get<std::string>(), m.at("dom").get<Index>(), cod, values);
        }
        for (const auto& a : section("adapters"))
            b.adapter(a.at("name").get<std::string>(),
                      {a.at("kind").get<std::string>(), a.at("algebra").get<std::string>(), a.value("seed", 0ULL)});
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("malformed workspace object: ") + e.what());
    }
    return std::move(b.ws);
}

Workspace parse_workspace(std::string_view text)
{
    auto first = std::find_if(text.begin(), text.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
    if (first != text.end() && *first == '{')
        return parse_workspace_json(text);
    return parse_workspace_text(text);
}

std::string serialize_algebra(std::string_view name, const FiniteAlgebra& a)
{
    std::ostringstream out;
    out << "algebra " << name << " size " << a.size() << " labels";
    for (const auto& l : a.labels())
        out << ' ' << l;
    out << '\n';
    for (std::size_t op = 0; op < a.signature().size(); ++op) {
        out << "  op " << a.signature()[op].symbol << ' ' << a.signature()[op].arity << " =";
        for (Index v : a.table(op))
            out << ' ' << a.label(v);
        out << '\n';
    }
    out << "end\n";
    return out.str();
}

std::string serialize_workspace(const Workspace& ws)
{
    std::ostringstream out;
    const EnumerationBudget defaults;
    if (ws.budget.max_carrier != defaults.max_carrier)
        out << "budget max-carrier " << ws.budget.max_carrier << '\n';
    if (ws.budget.max_subset_space != defaults.max_subset_space)
        out << "budget max-subset-space " << ws.budget.max_subset_space << '\n';
    for (const auto& [name, a] : ws.algebras)
        out << serialize_algebra(name, *a);
    for (const auto& [name, s] : ws.spaces) {
        out << "space " << name << " over " << s.algebra << " ground " << s.space.ground_size() << '\n';
        for (const auto& open : open_strings(s.space.topology()))
            out << "  open " << open << '\n';
        out << "end\n";
    }
    for (const auto& [name, f] : ws.maps)
        out << "map " << name << ' ' << f.dom_size() << " -> " << f.cod_size() << " = " << to_string(f) << '\n';
    for (const auto& [name, a] : ws.adapters) {
        out << "adapter " << name << " = " << a.kind << ' ' << a.algebra;
        if (a.seed != 0)
            out << " seed " << a.seed;
        out << '\n';
    }
    return out.str();
}

std::string_view builtin_workspace_text()
{
    return R"(# Two-element bounded lattice.
algebra BOOL2 size 2 labels 0 1
  op meet 2 = 0 0 0 1
  op join 2 = 0 1 1 1
  op bot 0 = 0
  op top 0 = 1
end

# Three-element chain 0 < 1 < 2.
algebra CHAIN3 size 3 labels 0 1 2
  op min 2 = 0 0 0 0 1 1 0 1 2
  op max 2 = 0 1 2 1 1 2 2 2 2
  op bot 0 = 0
  op top 0 = 2
end

algebra BOOL2pow2 = power BOOL2 2
algebra CHAIN3pow2 = power CHAIN3 2

space S_BOOL2 = sierpinski BOOL2
space S_CHAIN3 = sierpinski CHAIN3

adapter qtop_BOOL2 = qtop BOOL2
adapter relabeled_BOOL2 = relabeled BOOL2 seed 7
)";
}

} // namespace qtop
