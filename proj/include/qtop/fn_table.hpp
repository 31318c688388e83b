#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qtop {

/// Carrier elements and ground points are plain indices 0..n-1.
using Index = std::size_t;

/// A total function {0..dom-1} -> {0..cod-1}, stored as its value list.
///
/// Points of Q^X, maps between ground sets, projections and preimages all use this one type.
/// Ordering is lexicographic on (dom, cod, values), which makes the value list the canonical key.
class FnTable
{
public:
    FnTable() = default;
    FnTable(Index dom_size, Index cod_size, std::vector<Index> values);

    static FnTable identity(Index n);
    static FnTable constant(Index dom_size, Index cod_size, Index value);

    [[nodiscard]] Index dom_size() const { return _values.size(); }
    [[nodiscard]] Index cod_size() const { return _cod_size; }
    [[nodiscard]] std::span<const Index> values() const { return _values; }
    [[nodiscard]] Index operator()(Index x) const { return _values[x]; }

    [[nodiscard]] bool is_bijection() const;
    [[nodiscard]] bool is_identity() const;

    friend bool operator==(const FnTable&, const FnTable&) = default;
    friend std::strong_ordering operator<=>(const FnTable& a, const FnTable& b);

private:
    Index _cod_size = 1;
    std::vector<Index> _values;
};

/// outer ∘ inner.
FnTable compose(const FnTable& outer, const FnTable& inner);

/// Inverse of a bijection; ValidationError otherwise.
FnTable inverse(const FnTable& f);

/// Digits when every value fits one decimal digit ("0110"), comma list otherwise ("0,11,3").
std::string to_string(const FnTable& f);

/// Inverse of to_string for a known codomain size.
FnTable parse_fn_table(std::string_view text, Index dom_size, Index cod_size);

/// Row-major encoding of a tuple over {0..base-1}: the first coordinate is most significant.
Index encode_tuple(std::span<const Index> digits, Index base);
void decode_tuple(Index code, Index base, std::span<Index> digits);

} // namespace qtop
