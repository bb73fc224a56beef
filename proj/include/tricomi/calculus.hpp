#pragma once

#include "tricomi/expr.hpp"

#include <optional>
#include <stdexcept>

namespace tricomi::sym {

class IllegalBound : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Canonical partial derivative.
Expr differentiate(const Expr& e, Var v);

/// Rule-based antiderivative with respect to `v`.
///
/// Total on finite sums of terms  c * x^m * y^n * T(lambda*v + rest)  where T is
/// sin, cos, exp or absent and `rest` is free of `v`; at most one factor may be
/// transcendental in `v`. Polynomial factors times T are integrated by the
/// tabular rule. Anything else (exp(x^2), sin(x)*cos(x), x^-1, ...) gives
/// nullopt. No constant of integration is added.
std::optional<Expr> antiderivative(const Expr& e, Var v);

/// F(upper) - F(lower) with F = antiderivative(e, v). Throws IllegalBound when a
/// bound mentions `v`.
std::optional<Expr> definite_integral(const Expr& e, Var v, const Expr& lower, const Expr& upper);

/// Integral of `e` from `lower` up to the variable itself, i.e. F(v) - F(lower).
/// This is how integrals with a dummy variable (upper bound x or y) are formed.
std::optional<Expr> integral_from(const Expr& e, Var v, const Expr& lower);

}  // namespace tricomi::sym
