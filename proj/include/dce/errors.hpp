#pragma once

#include <stdexcept>
#include <string>

namespace dce {

// Base of everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad user input: a parameter outside its documented domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Pulse widths that cannot be fitted into one period with a smooth junction.
class InconsistentDurationsError : public DomainError {
public:
    using DomainError::DomainError;
};

// Config text that does not parse or validate. Carries the 1-based line
// number when the problem is tied to a line (0 otherwise).
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

// Failures of the numerical machinery; the CLI maps these to exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

class NoRootError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StationaryDenominatorError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateMatchingError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepRejectedError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonzeroInitialStrengthError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace dce
