#pragma once

#include <stdexcept>
#include <string>

namespace latticeq {

/// A call violated a documented precondition (bad universe size, window too
/// wide, divisibility failure, ...). The CLI maps this to exit code 3.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed predicate text. Carries a 1-based source location.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace latticeq
