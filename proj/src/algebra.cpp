#include "qtop/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace qtop {

namespace {

bool is_identifier(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

bool is_label(std::string_view s)
{
    return !s.empty() && std::none_of(s.begin(), s.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '#' || c == '{' || c == '}';
    });
}

std::vector<std::string> index_labels(Index n)
{
    std::vector<std::string> out(n);
    for (Index i = 0; i < n; ++i)
        out[i] = std::to_string(i);
    return out;
}

// Guard on materialized tables, independent of the carrier cap: a binary table on a
// 4096-element carrier already has 16M entries.
constexpr std::uint64_t max_table_entries = std::uint64_t{1} << 24;

} // namespace

Signature::Signature(std::vector<Operation> ops)
    : _ops{std::move(ops)}
{
    std::set<std::string_view> seen;
    for (const auto& op : _ops) {
        if (!is_identifier(op.symbol))
            throw ValidationError("invalid operation symbol '" + op.symbol + "'");
        if (!seen.insert(op.symbol).second)
            throw ValidationError("duplicate operation symbol '" + op.symbol + "'");
    }
}

std::optional<std::size_t> Signature::find(std::string_view symbol) const
{
    for (std::size_t i = 0; i < _ops.size(); ++i)
        if (_ops[i].symbol == symbol)
            return i;
    return std::nullopt;
}

bool Signature::has_constants() const
{
    return std::any_of(_ops.begin(), _ops.end(), [](const Operation& op) { return op.arity == 0; });
}

std::optional<Index> FiniteAlgebra::find_label(std::string_view label) const
{
    for (Index i = 0; i < _labels.size(); ++i)
        if (_labels[i] == label)
            return i;
    return std::nullopt;
}

FiniteAlgebra make_algebra(Signature sig, Index size, const RawTables& tables, std::vector<std::string> labels)
{
    if (size == 0)
        throw ValidationError("algebra carrier must be non-empty");
    if (labels.empty())
        labels = index_labels(size);
    if (labels.size() != size)
        throw ValidationError("expected " + std::to_string(size) + " labels, got " + std::to_string(labels.size()));
    std::set<std::string_view> seen;
    for (const auto& l : labels) {
        if (!is_label(l))
            throw ValidationError("invalid carrier label '" + l + "'");
        if (!seen.insert(l).second)
            throw ValidationError("duplicate carrier label '" + l + "'");
    }
    for (const auto& [symbol, _] : tables)
        if (!sig.find(symbol))
            throw ValidationError("table given for unknown symbol '" + symbol + "'");

    FiniteAlgebra a;
    a._tables.reserve(sig.size());
    for (const auto& op : sig.ops()) {
        auto it = tables.find(op.symbol);
        if (it == tables.end())
            throw ValidationError("missing table for symbol '" + op.symbol + "'");
        const auto expected = require_pow(size, op.arity, max_table_entries, "table for '" + op.symbol + "'");
        if (it->second.size() != expected)
            throw ValidationError("table for '" + op.symbol + "' is not total: " + std::to_string(it->second.size()) +
                                  " entries, expected " + std::to_string(expected));
        for (Index v : it->second)
            if (v >= size)
                throw ValidationError("table for '" + op.symbol + "' has out-of-range output " + std::to_string(v));
        a._tables.push_back(it->second);
    }
    a._sig = std::move(sig);
    a._size = size;
    a._labels = std::move(labels);
    return a;
}

Index apply_op(const FiniteAlgebra& a, std::string_view symbol, std::span<const Index> args)
{
    auto op = a.signature().find(symbol);
    if (!op)
        throw ValidationError("unknown operation symbol '" + std::string(symbol) + "'");
    if (args.size() != a.signature()[*op].arity)
        throw ValidationError("operation '" + std::string(symbol) + "' has arity " +
                              std::to_string(a.signature()[*op].arity) + ", got " + std::to_string(args.size()) +
                              " arguments");
    for (Index x : args)
        if (x >= a.size())
            throw ValidationError("argument " + std::to_string(x) + " outside carrier");
    return a.apply(*op, args);
}

Subset::Subset(Index of_size, std::vector<Index> members)
    : _of_size{of_size}, _members{std::move(members)}
{
    std::sort(_members.begin(), _members.end());
    _members.erase(std::unique(_members.begin(), _members.end()), _members.end());
    if (!_members.empty() && _members.back() >= of_size)
        throw ValidationError("subset member " + std::to_string(_members.back()) + " outside carrier of size " +
                              std::to_string(of_size));
}

bool Subset::contains(Index x) const
{
    return std::binary_search(_members.begin(), _members.end(), x);
}

bool Subset::is_subset_of(const Subset& other) const
{
    return std::includes(other._members.begin(), other._members.end(), _members.begin(), _members.end());
}

std::optional<Escape> find_homomorphism_violation(const FnTable& f, const FiniteAlgebra& a, const FiniteAlgebra& b)
{
    if (a.signature() != b.signature())
        throw ValidationError("homomorphism check across different signatures");
    if (f.dom_size() != a.size() || f.cod_size() != b.size())
        throw ValidationError("map sizes do not match the algebras");
    std::vector<Index> all(a.size());
    for (Index i = 0; i < all.size(); ++i)
        all[i] = i;
    std::vector<Index> args, image;
    std::optional<Escape> violation;
    const auto& sig = a.signature();
    for (std::size_t op = 0; op < sig.size() && !violation; ++op) {
        std::vector<std::pair<std::size_t, std::size_t>> ranges(sig[op].arity, {0, all.size()});
        detail::for_each_tuple(std::span<const Index>(all), ranges, args, [&](std::span<const Index> t) {
            image.resize(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                image[i] = f(t[i]);
            const Index r = a.apply(op, t);
            if (f(r) == b.apply(op, image))
                return true;
            violation = Escape{op, {t.begin(), t.end()}, r};
            return false;
        });
    }
    return violation;
}

bool is_homomorphism(const FnTable& f, const FiniteAlgebra& a, const FiniteAlgebra& b)
{
    return !find_homomorphism_violation(f, a, b);
}

PowerView::PowerView(const FiniteAlgebra& base, Index exponent, std::uint64_t max_carrier)
    : _base{&base}, _exponent{exponent},
      _size{static_cast<Index>(require_pow(base.size(), exponent, max_carrier, "power carrier"))}
{}

Index PowerView::apply(std::size_t op, std::span<const Index> args) const
{
    const Index q = _base->size();
    const std::size_t k = args.size();
    std::vector<Index> rest(args.begin(), args.end());
    std::vector<Index> digits(k);
    std::vector<Index> out(_exponent);
    // Peel coordinates from the least significant end.
    for (Index x = _exponent; x > 0; --x) {
        for (std::size_t i = 0; i < k; ++i) {
            digits[i] = rest[i] % q;
            rest[i] /= q;
        }
        out[x - 1] = _base->apply(op, digits);
    }
    return encode_tuple(out, q);
}

Index PowerView::encode(const FnTable& f) const
{
    if (f.dom_size() != _exponent || f.cod_size() != _base->size())
        throw ValidationError("function " + to_string(f) + " is not a point of this power");
    return encode_tuple(f.values(), _base->size());
}

FnTable PowerView::decode(Index code) const
{
    std::vector<Index> v(_exponent);
    decode_tuple(code, _base->size(), v);
    return FnTable(_exponent, _base->size(), std::move(v));
}

std::string join_labels(std::span<const std::string> parts)
{
    const bool short_parts = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i && !short_parts)
            out += '.';
        out += parts[i];
    }
    return out;
}

namespace {

template <OperationalAlgebra A>
RawTables materialize(const A& a)
{
    RawTables tables;
    const auto& sig = a.signature();
    std::vector<Index> all(a.size());
    for (Index i = 0; i < all.size(); ++i)
        all[i] = i;
    std::vector<Index> args;
    for (std::size_t op = 0; op < sig.size(); ++op) {
        require_pow(a.size(), sig[op].arity, max_table_entries, "table for '" + sig[op].symbol + "'");
        std::vector<Index> values;
        std::vector<std::pair<std::size_t, std::size_t>> ranges(sig[op].arity, {0, all.size()});
        detail::for_each_tuple(std::span<const Index>(all), ranges, args, [&](std::span<const Index> t) {
            values.push_back(a.apply(op, t));
            return true;
        });
        tables.emplace(sig[op].symbol, std::move(values));
    }
    return tables;
}

// Componentwise operations over row-major tuples of factor elements.
class ProductView
{
public:
    explicit ProductView(std::span<const FiniteAlgebra> factors, Index size)
        : _factors{factors}, _size{size}
    {}

    [[nodiscard]] Index size() const { return _size; }
    [[nodiscard]] const Signature& signature() const { return _factors.front().signature(); }

    [[nodiscard]] Index apply(std::size_t op, std::span<const Index> args) const
    {
        std::vector<Index> rest(args.begin(), args.end());
        std::vector<Index> coords(_factors.size());
        std::vector<Index> digits(args.size());
        for (std::size_t j = _factors.size(); j > 0; --j) {
            const auto& f = _factors[j - 1];
            for (std::size_t i = 0; i < args.size(); ++i) {
                digits[i] = rest[i] % f.size();
                rest[i] /= f.size();
            }
            coords[j - 1] = f.apply(op, digits);
        }
        Index code = 0;
        for (std::size_t j = 0; j < _factors.size(); ++j)
            code = code * _factors[j].size() + coords[j];
        return code;
    }

private:
    std::span<const FiniteAlgebra> _factors;
    Index _size;
};

} // namespace

FiniteAlgebra power_algebra(const FiniteAlgebra& a, Index exponent_size, const EnumerationBudget& budget)
{
    PowerView view(a, exponent_size, budget.max_carrier);
    std::vector<std::string> labels(view.size());
    std::vector<std::string> parts(exponent_size);
    for (Index c = 0; c < view.size(); ++c) {
        auto f = view.decode(c);
        for (Index x = 0; x < exponent_size; ++x)
            parts[x] = a.label(f(x));
        labels[c] = exponent_size == 0 ? std::string("()") : join_labels(parts);
    }
    return make_algebra(a.signature(), view.size(), materialize(view), std::move(labels));
}

FiniteAlgebra product_algebra(std::span<const FiniteAlgebra> factors, const EnumerationBudget& budget)
{
    if (factors.empty())
        throw ValidationError("product of an empty list of algebras");
    std::uint64_t size = 1;
    for (const auto& f : factors) {
        if (f.signature() != factors.front().signature())
            throw ValidationError("product factors have different signatures");
        if (size > budget.max_carrier / f.size())
            throw BudgetExceeded("product carrier exceeds the budget of " + std::to_string(budget.max_carrier));
        size *= f.size();
    }
    ProductView view(factors, static_cast<Index>(size));
    std::vector<std::string> labels(size);
    std::vector<std::string> parts(factors.size());
    for (Index c = 0; c < size; ++c) {
        Index rest = c;
        for (std::size_t j = factors.size(); j > 0; --j) {
            parts[j - 1] = factors[j - 1].label(rest % factors[j - 1].size());
            rest /= factors[j - 1].size();
        }
        labels[c] = join_labels(parts);
    }
    return make_algebra(factors.front().signature(), static_cast<Index>(size), materialize(view), std::move(labels));
}

} // namespace qtop
