#pragma once

#include <stdexcept>
#include <string>

namespace acctraj {

// Bad or contradictory configuration (unknown keys, invalid values).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Problems with input data: malformed files, violated preconditions.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text; carries the offending line number when known.
class ParseError : public DataError {
public:
    ParseError(const std::string& msg, long line = -1)
        : DataError(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

}  // namespace acctraj
