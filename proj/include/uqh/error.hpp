#ifndef UQH_ERROR_HPP
#define UQH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uqh {

enum class ErrorKind {
    InvalidOrder = 1,
    DivisionByZero,
    ContextMismatch,
    FieldResolution,
    DegenerateParameter,
    InvalidArgument,
    GradingViolation,
    Unsupported,
    ResourceLimit,
    InvariantViolation,
    Internal
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace uqh

#endif
