#pragma once

#include "qtop/topology.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace qtop {

/// A syntax or validation problem in a workspace file, located by line and column (1-based).
class ParseError : public ValidationError
{
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);
    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }

private:
    std::size_t _line;
    std::size_t _column;
};

struct NamedSpace
{
    std::string algebra;
    QSpace space;

    friend bool operator==(const NamedSpace&, const NamedSpace&) = default;
};

/// Reference to one of the registered adapter kinds over a named algebra.
struct AdapterRef
{
    std::string kind;
    std::string algebra;
    std::uint64_t seed = 0;

    friend bool operator==(const AdapterRef&, const AdapterRef&) = default;
};

struct Workspace
{
    std::map<std::string, AlgebraPtr> algebras;
    std::map<std::string, NamedSpace> spaces;
    std::map<std::string, FnTable> maps;
    std::map<std::string, AdapterRef> adapters;
    EnumerationBudget budget;

    [[nodiscard]] const AlgebraPtr& algebra(std::string_view name) const;
    [[nodiscard]] const NamedSpace& space(std::string_view name) const;
    [[nodiscard]] const FnTable& map(std::string_view name) const;

    friend bool operator==(const Workspace& a, const Workspace& b);
};

/// Line-oriented text, or a JSON object tree when the first non-blank character is '{'.
Workspace parse_workspace(std::string_view text);
Workspace parse_workspace_text(std::string_view text);
Workspace parse_workspace_json(std::string_view text);

/// Canonical text form: every algebra and space written out explicitly, names sorted.
std::string serialize_workspace(const Workspace& ws);

/// Text of one explicit algebra block.
std::string serialize_algebra(std::string_view name, const FiniteAlgebra& a);

/// Value string over the labels of q, as written by `labelled`.
FnTable parse_labelled(std::string_view text, Index dom_size, const FiniteAlgebra& q);

/// BOOL2 and CHAIN3 (bounded lattices), BOOL2pow2, and their Sierpinski spaces.
std::string_view builtin_workspace_text();

} // namespace qtop
