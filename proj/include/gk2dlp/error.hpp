#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gk2dlp {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Brute-force enumeration would exceed a configured size cap.
class EnumerationLimitError : public Error {
public:
    using Error::Error;
};

/// A formula mentions an atom outside the interpretation's universe.
class UniverseMismatchError : public Error {
public:
    using Error::Error;
};

/// Misuse of the fresh-atom registry (tag stacking, unknown kinds).
class NamespaceError : public Error {
public:
    using Error::Error;
};

/// Input uses a construct outside the supported fragment.
class UnsupportedFragmentError : public Error {
public:
    using Error::Error;
};

/// An answer set does not have the shape the translation guarantees.
class MalformedModelError : public Error {
public:
    using Error::Error;
};

/// External solver failed or returned an unexpected status.
class SolverError : public Error {
public:
    using Error::Error;
};

/// External solver output could not be understood.
class AdapterError : public Error {
public:
    using Error::Error;
};

/// Syntax error with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace gk2dlp
