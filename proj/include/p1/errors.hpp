#pragma once

#include <stdexcept>
#include <string>

namespace p1 {

enum class ErrorKind {
    StepFailure,
    SpanExceeded,
    NonPositiveY,
    BracketFailure,
    DomainError,
    ToleranceFailure,
    NoZeros,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace p1
