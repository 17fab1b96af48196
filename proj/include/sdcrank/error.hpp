#pragma once

#include <stdexcept>
#include <string>

namespace sdcrank {

enum class ErrorKind {
    InvalidInput,      // malformed arguments, shape mismatches, bad parameters
    DegenerateInput,   // structurally valid input on which the operation is undefined
    DegenerateColumn,  // a column lacks the variability the operation requires
    Overflow,          // exact integer arithmetic would overflow
    IoError,           // filesystem failures
    ParseError,        // malformed file contents
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid input";
        case ErrorKind::DegenerateInput: return "degenerate input";
        case ErrorKind::DegenerateColumn: return "degenerate column";
        case ErrorKind::Overflow: return "overflow";
        case ErrorKind::IoError: return "io error";
        case ErrorKind::ParseError: return "parse error";
    }
    return "unknown error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace sdcrank
