#ifndef AIA_ERROR_HH_
#define AIA_ERROR_HH_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aia {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A label is unknown, of the wrong kind, or two automata disagree on their alphabets.
class AlphabetError : public Error {
public:
    using Error::Error;
};

/// A model violates a structural invariant (undeclared state, input mapped to bottom, ...).
class ModelError : public Error {
public:
    using Error::Error;
};

/// Caller violated a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Exploration exceeded the configured number of distinct configurations.
class ResourceError : public Error {
public:
    ResourceError(const std::string& what, std::size_t cap)
        : Error(what + " (exploration cap " + std::to_string(cap) + " exceeded)"), cap_(cap) {}

    std::size_t cap() const { return cap_; }

private:
    std::size_t cap_;
};

/// Textual input could not be parsed. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Bound on the number of distinct configurations an exploration may materialize.
struct ExplorationLimits {
    std::size_t max_configs = 100000;
};

} // namespace aia

#endif // AIA_ERROR_HH_
