#pragma once

#include <stdexcept>
#include <string>

namespace qtop {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An input violates a documented invariant (table not total, index out of range, ...).
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// Closure of the empty set was requested in a signature without nullary symbols.
class EmptyGeneratorsNoConstants : public Error
{
public:
    EmptyGeneratorsNoConstants()
        : Error("closure of the empty set needs at least one nullary symbol") {}
};

/// An enumeration or materialization would exceed the configured budget.
class BudgetExceeded : public Error
{
public:
    using Error::Error;
};

/// A structured category does not support the requested capability.
class Unsupported : public Error
{
public:
    using Error::Error;
};

} // namespace qtop
