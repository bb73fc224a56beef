#pragma once

#include "tricomi/expr.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tricomi::sym {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t position, std::string expected);

    /// Byte offset into the input; equal to its length at end of input.
    [[nodiscard]] std::size_t position() const noexcept { return position_; }
    [[nodiscard]] const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

class UnknownIdentifier : public std::runtime_error {
public:
    UnknownIdentifier(std::size_t position, std::string name);

    [[nodiscard]] std::size_t position() const noexcept { return position_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

private:
    std::size_t position_;
    std::string name_;
};

/// Parses the expression grammar and returns the canonical form.
///
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | atom ('^' ['-'] integer)?
///   atom   := number | 'x' | 'y' | '(' expr ')' | func '(' expr ')'
///   func   := 'sin' | 'cos' | 'exp'
///   number := integer | integer '/' integer | integer '.' digits
///
/// Unary minus binds looser than '^', so "-x^2" is -(x^2). Decimals are exact.
Expr parse(std::string_view text);

/// A rational literal such as "-3/4" or "0.25", through the same grammar.
Rational parse_rational(std::string_view text);

}  // namespace tricomi::sym
