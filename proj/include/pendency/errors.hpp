#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pendency {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value outside the domain of an operation (no judges, negative strength, T < 2).
class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Too few observations left to fit a line.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// Fewer than two distinct x-values.
class DegenerateFit : public Error {
public:
    using Error::Error;
};

class Infeasible : public Error {
public:
    using Error::Error;
};

class HorizonExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace pendency
