#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

enum class ErrorKind {
    cyclic_input,
    cap_exceeded,
    bad_params,
    precondition_violated,
    not_a_tree_poset,
    timeout,
    parse_error,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::cyclic_input: return "CyclicInput";
    case ErrorKind::cap_exceeded: return "CapExceeded";
    case ErrorKind::bad_params: return "BadParams";
    case ErrorKind::precondition_violated: return "PreconditionViolated";
    case ErrorKind::not_a_tree_poset: return "NotATreePoset";
    case ErrorKind::timeout: return "Timeout";
    case ErrorKind::parse_error: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace rainbow
