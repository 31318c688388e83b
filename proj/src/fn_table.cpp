#include "qtop/fn_table.hpp"
#include "qtop/error.hpp"

#include <algorithm>
#include <charconv>

namespace qtop {

FnTable::FnTable(Index dom_size, Index cod_size, std::vector<Index> values)
    : _cod_size{cod_size}, _values{std::move(values)}
{
    if (_values.size() != dom_size)
        throw ValidationError("function table has " + std::to_string(_values.size()) + " values, expected " +
                              std::to_string(dom_size));
    for (Index v : _values)
        if (v >= cod_size)
            throw ValidationError("function value " + std::to_string(v) + " outside codomain of size " +
                                  std::to_string(cod_size));
}

FnTable FnTable::identity(Index n)
{
    std::vector<Index> v(n);
    for (Index i = 0; i < n; ++i)
        v[i] = i;
    return FnTable(n, n, std::move(v));
}

FnTable FnTable::constant(Index dom_size, Index cod_size, Index value)
{
    return FnTable(dom_size, cod_size, std::vector<Index>(dom_size, value));
}

bool FnTable::is_bijection() const
{
    if (dom_size() != _cod_size)
        return false;
    std::vector<bool> hit(_cod_size, false);
    for (Index v : _values) {
        if (hit[v])
            return false;
        hit[v] = true;
    }
    return true;
}

bool FnTable::is_identity() const
{
    if (dom_size() != _cod_size)
        return false;
    for (Index i = 0; i < _values.size(); ++i)
        if (_values[i] != i)
            return false;
    return true;
}

std::strong_ordering operator<=>(const FnTable& a, const FnTable& b)
{
    if (auto c = a.dom_size() <=> b.dom_size(); c != 0)
        return c;
    if (auto c = a._cod_size <=> b._cod_size; c != 0)
        return c;
    return std::lexicographical_compare_three_way(a._values.begin(), a._values.end(), b._values.begin(),
                                                  b._values.end());
}

FnTable compose(const FnTable& outer, const FnTable& inner)
{
    if (inner.cod_size() != outer.dom_size())
        throw ValidationError("cannot compose: codomain size " + std::to_string(inner.cod_size()) +
                              " does not match domain size " + std::to_string(outer.dom_size()));
    std::vector<Index> v(inner.dom_size());
    for (Index x = 0; x < v.size(); ++x)
        v[x] = outer(inner(x));
    return FnTable(inner.dom_size(), outer.cod_size(), std::move(v));
}

FnTable inverse(const FnTable& f)
{
    if (!f.is_bijection())
        throw ValidationError("inverse of a non-bijective function " + to_string(f));
    std::vector<Index> v(f.dom_size());
    for (Index x = 0; x < v.size(); ++x)
        v[f(x)] = x;
    return FnTable(f.dom_size(), f.dom_size(), std::move(v));
}

std::string to_string(const FnTable& f)
{
    std::string out;
    if (f.cod_size() <= 10) {
        for (Index v : f.values())
            out += static_cast<char>('0' + v);
        return out;
    }
    for (Index i = 0; i < f.dom_size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(f(i));
    }
    return out;
}

FnTable parse_fn_table(std::string_view text, Index dom_size, Index cod_size)
{
    std::vector<Index> values;
    if (text.find(',') == std::string_view::npos) {
        for (char c : text) {
            if (c < '0' || c > '9')
                throw ValidationError("bad function value string '" + std::string(text) + "'");
            values.push_back(static_cast<Index>(c - '0'));
        }
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find(',', start);
            if (end == std::string_view::npos)
                end = text.size();
            auto part = text.substr(start, end - start);
            Index v = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (ec != std::errc{} || ptr != part.data() + part.size())
                throw ValidationError("bad function value string '" + std::string(text) + "'");
            values.push_back(v);
            start = end + 1;
        }
    }
    return FnTable(dom_size, cod_size, std::move(values));
}

Index encode_tuple(std::span<const Index> digits, Index base)
{
    Index code = 0;
    for (Index d : digits)
        code = code * base + d;
    return code;
}

void decode_tuple(Index code, Index base, std::span<Index> digits)
{
    for (std::size_t i = digits.size(); i > 0; --i) {
        digits[i - 1] = code % base;
        code /= base;
    }
}

} // namespace qtop
