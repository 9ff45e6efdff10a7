#pragma once

#include <stdexcept>
#include <string>

namespace autalg {

enum class ErrorKind {
    Usage,
    UnknownName,
    BadParams,
    ParseError,
    SyntaxError,
    ConflictingTransition,
    ReservedName,
    DuplicateIndex,
    IndexOutOfRange,
    CapExceeded,
    PreconditionViolated,
    NotPermutational,
    NotCommuting,
    NotTransitive,
    NotAbelian,
    NotSubgroup,
    ExponentMismatch,
    HypothesisFailed,
    InternalInconsistency,
    ConstructionFailed,
    PropositionViolated,
    ProofIdentityFailed,
};

const char* error_kind_name(ErrorKind k);

// 1 usage, 2 parse, 3 precondition, 4 internal invariant
int exit_code_for(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace autalg
