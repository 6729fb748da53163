#pragma once

#include <stdexcept>
#include <string>

namespace crowns {

struct PosetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// build_poset rejects (x,x) pairs outright.
struct SelfLoopError : PosetError {
    using PosetError::PosetError;
};

// Transitive closure produced x < x.
struct CycleError : PosetError {
    using PosetError::PosetError;
};

struct TooSmallError : PosetError {
    using PosetError::PosetError;
};

struct IsolatedPointError : PosetError {
    explicit IsolatedPointError(int point, const std::string& name)
        : PosetError("isolated point: " + name), point(point) {}
    int point;
};

struct NotHeightOneError : PosetError {
    using PosetError::PosetError;
};

struct NotConnectedError : PosetError {
    using PosetError::PosetError;
};

struct NotSurjectiveError : PosetError {
    using PosetError::PosetError;
};

// The named subset is not a full ordinal sum of two antichains.
struct NotOrdinalSumError : PosetError {
    using PosetError::PosetError;
};

struct PreconditionError : PosetError {
    using PosetError::PosetError;
};

// Brute-force search space exceeds the configured budget.
struct SizeGuardError : PosetError {
    using PosetError::PosetError;
};

struct ParseError : PosetError {
    ParseError(int line, const std::string& what)
        : PosetError("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

// A runtime self-check failed; indicates a bug, not bad input.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace crowns
