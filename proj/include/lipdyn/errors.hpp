#pragma once

#include <stdexcept>
#include <string>

namespace lipdyn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lexing/parsing errors carry 1-based source positions.
struct LexError : Error {
    int line, column;
    LexError(const std::string& msg, int line_, int col_)
        : Error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_), column(col_) {}
};

struct ParseError : Error {
    int line, column;
    std::string expected;
    ParseError(const std::string& msg, int line_, int col_, std::string expected_ = {})
        : Error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_), column(col_), expected(std::move(expected_)) {}
};

struct EvalError : Error {
    using Error::Error;
};

struct UnknownFamily : Error {
    using Error::Error;
};
struct MissingParameter : Error {
    using Error::Error;
};

struct InsufficientSamples : Error {
    using Error::Error;
};
struct NoBracket : Error {
    using Error::Error;
};

struct DegenerateNeighborhood : Error {
    using Error::Error;
};
struct NotAFixedPoint : Error {
    using Error::Error;
};
struct NotAPeriodicOrbit : Error {
    using Error::Error;
};
struct DerivativeUnavailable : Error {
    using Error::Error;
};
struct NotAContraction : Error {
    using Error::Error;
};
struct MaxIterExceeded : Error {
    using Error::Error;
};

struct BreakpointHit : Error {
    using Error::Error;
};
struct BreakpointOnCycle : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace lipdyn
