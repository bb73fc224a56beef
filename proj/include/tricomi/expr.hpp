#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tricomi::sym {

using Rational = mpq_class;

/// The two independent variables. Nothing else can appear in a tree.
enum class Var : std::uint8_t { X, Y };

/// Node kinds, declared in canonical sort rank.
enum class Kind : std::uint8_t { Constant, Variable, Power, Sin, Cos, Exp, Product, Sum };

/// Raised by evaluate() for a negative power of zero.
class EvalDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Immutable expression tree with exact rational constants.
///
/// Nodes are shared and never mutated, so copies are cheap and an Expr may be
/// read from any number of threads. The static builders only enforce the
/// structural shape (arity, nonzero exponents); `simplify` produces the
/// canonical form.
class Expr {
public:
    /// Constant zero.
    Expr();

    static Expr constant(Rational value);
    static Expr integer(long value);
    static Expr variable(Var v);
    static Expr x() { return variable(Var::X); }
    static Expr y() { return variable(Var::Y); }
    /// Zero terms gives 0, one term gives that term.
    static Expr sum(std::vector<Expr> terms);
    /// Zero factors gives 1, one factor gives that factor.
    static Expr product(std::vector<Expr> factors);
    /// Exponent 0 gives 1, exponent 1 gives the base.
    static Expr power(Expr base, long exponent);
    static Expr sin(Expr arg);
    static Expr cos(Expr arg);
    static Expr exp(Expr arg);

    [[nodiscard]] Kind kind() const noexcept;
    [[nodiscard]] bool is_constant() const noexcept { return kind() == Kind::Constant; }
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_one() const;

    /// Constant only.
    [[nodiscard]] const Rational& value() const;
    /// Variable only.
    [[nodiscard]] Var var() const;
    /// Power only.
    [[nodiscard]] long exponent() const;
    /// Power base, or the argument of sin/cos/exp.
    [[nodiscard]] const Expr& arg() const;
    [[nodiscard]] const Expr& base() const { return arg(); }
    /// Sum terms or Product factors; the single child for unary kinds; empty for leaves.
    [[nodiscard]] std::span<const Expr> operands() const noexcept;

    [[nodiscard]] std::size_t hash() const noexcept;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

/// Deterministic total order used for canonical sorting. Negative, zero or
/// positive like strcmp.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Unsimplified tree builders.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// True when `v` occurs anywhere in `e`.
bool contains(const Expr& e, Var v);

/// Canonical form: flattened, expanded, like terms collected, sorted.
Expr simplify(const Expr& e);

/// Replace every occurrence of `v` and simplify.
Expr substitute(const Expr& e, Var v, const Expr& replacement);

/// Double-precision value at (x, y).
double evaluate(const Expr& e, double x, double y);

/// Rendering in the input grammar, deterministic for a given tree.
std::string render(const Expr& e);

std::string to_string(Var v);

struct Equivalence {
    bool equal = false;
    /// Decided by sampling because the canonical difference was not constant.
    bool probabilistic = false;
};

/// Canonical test first, then a 32-point sampling fallback on [-2,2]^2.
Equivalence check_equivalent(const Expr& a, const Expr& b);

inline bool equivalent(const Expr& a, const Expr& b) { return check_equivalent(a, b).equal; }

}  // namespace tricomi::sym
