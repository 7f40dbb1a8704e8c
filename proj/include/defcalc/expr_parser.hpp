#pragma once

#include "defcalc/polyseries.hpp"

#include <stdexcept>

namespace defcalc {

/// Syntax or semantic error with the 1-based position of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ")"),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int column() const { return col_; }

private:
    int line_, col_;
};

struct ParsedExpr {
    PolySeries value;
    /// Set when some t-power exceeded the truncation order and was dropped.
    bool truncated = false;
};

/// Grammar: integers, rationals p/q, the imaginary unit i, variables
/// z1..zn, zb1..zbn and t, operators + - * / ^ and parentheses; whitespace
/// insensitive. '/' requires a nonzero constant divisor; '^' a nonnegative
/// integer literal exponent.
ParsedExpr parse_expression(const std::string& text, int n, int order);

} // namespace defcalc
