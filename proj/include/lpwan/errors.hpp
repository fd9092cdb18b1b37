#pragma once

#include <stdexcept>
#include <string>

namespace lpwan {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An argument is outside the physical or mathematical domain of an operation
// (negative current, D >= 1, Lambert W argument below the branch point, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Duty-cycle fractions that cannot fit into one activation period.
class InfeasibleCycleError : public DomainError {
public:
    explicit InfeasibleCycleError(const std::string& what) : DomainError(what) {}
};

// Malformed or inconsistent input data (trace files, config files).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

// A trace row that cannot be parsed; carries the 1-based line number.
class ParseError : public InputError {
public:
    ParseError(long line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Sample times not strictly increasing.
class SequencingError : public InputError {
public:
    explicit SequencingError(const std::string& what) : InputError(what) {}
};

// A trace with no data rows.
class EmptyInputError : public InputError {
public:
    explicit EmptyInputError(const std::string& what) : InputError(what) {}
};

// A sample without a state label where one is required.
class MissingLabelError : public InputError {
public:
    explicit MissingLabelError(const std::string& what) : InputError(what) {}
};

// Trace shorter than one full measurement cycle.
class InsufficientTraceError : public InputError {
public:
    explicit InsufficientTraceError(const std::string& what) : InputError(what) {}
};

// Bad run configuration (missing fields, conflicting sections).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Numerical failure: non-convergence or a root bracket without a sign change.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what) {}
};

class BracketError : public NumericError {
public:
    explicit BracketError(const std::string& what) : NumericError(what) {}
};

} // namespace lpwan
