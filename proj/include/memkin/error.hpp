#pragma once

#include <stdexcept>
#include <string>

namespace memkin {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed config text. line is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// Numerical or physical failure while running the model.
class ModelError : public Error {
public:
    using Error::Error;
};

}  // namespace memkin
