#pragma once

#include <stdexcept>
#include <string>

namespace dk {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two elements from different algebras (or polys over different tables) were combined.
struct AlgebraMismatch : Error {
    explicit AlgebraMismatch(const std::string& msg) : Error(msg) {}
};

// A precondition documented on an operation does not hold for the given input.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A configured resource cap (Groebner degree, term count) was hit.  Distinct from
// DomainError so callers can tell "you asked something ill-posed" from "this blew up".
struct ResourceExhausted : Error {
    explicit ResourceExhausted(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

} // namespace dk
