#pragma once

#include <stdexcept>
#include <string>

namespace physiorec {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. Carries the 1-based line number of the offending line.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

// Well-formed input whose values violate a documented bound or schema.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Invalid configuration / parameter set.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Caller broke an operation precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace physiorec
