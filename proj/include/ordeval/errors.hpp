#pragma once

#include <stdexcept>
#include <string>

namespace ordeval {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data (CSV cells, spec files). Carries the location when known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long row = -1, std::string column = {})
        : Error(msg), row_(row), column_(std::move(column)) {}

    long row() const { return row_; }
    const std::string& column() const { return column_; }

private:
    long row_;
    std::string column_;
};

// Violated invariant of an otherwise well-formed object.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace ordeval
