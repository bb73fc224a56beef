#include "tricomi/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace tricomi::sym {

struct Expr::Node {
    Kind kind = Kind::Constant;
    Rational value;
    Var var = Var::X;
    long exponent = 0;
    std::vector<Expr> children;
    std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t rational_hash(const Rational& q) {
    return std::hash<std::string>{}(q.get_str());
}

}  // namespace

Expr::Expr() : Expr(constant(0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(Rational value) {
    value.canonicalize();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->hash = mix(static_cast<std::size_t>(Kind::Constant), rational_hash(value));
    n->value = std::move(value);
    return Expr(std::move(n));
}

Expr Expr::integer(long value) { return constant(Rational(value)); }

Expr Expr::variable(Var v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->var = v;
    n->hash = mix(static_cast<std::size_t>(Kind::Variable), static_cast<std::size_t>(v));
    return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
    if (terms.empty()) return integer(0);
    if (terms.size() == 1) return std::move(terms.front());
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    std::size_t h = mix(0, static_cast<std::size_t>(Kind::Sum));
    for (const auto& t : terms) h = mix(h, t.hash());
    n->hash = h;
    n->children = std::move(terms);
    return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
    if (factors.empty()) return integer(1);
    if (factors.size() == 1) return std::move(factors.front());
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    std::size_t h = mix(0, static_cast<std::size_t>(Kind::Product));
    for (const auto& f : factors) h = mix(h, f.hash());
    n->hash = h;
    n->children = std::move(factors);
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, long exponent) {
    if (exponent == 0) return integer(1);
    if (exponent == 1) return base;
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->exponent = exponent;
    n->hash = mix(mix(mix(0, static_cast<std::size_t>(Kind::Power)), static_cast<std::size_t>(exponent)),
                  base.hash());
    n->children.push_back(std::move(base));
    return Expr(std::move(n));
}

Expr Expr::sin(Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sin;
    n->hash = mix(mix(0, static_cast<std::size_t>(Kind::Sin)), arg.hash());
    n->children.push_back(std::move(arg));
    return Expr(std::move(n));
}

Expr Expr::cos(Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Cos;
    n->hash = mix(mix(0, static_cast<std::size_t>(Kind::Cos)), arg.hash());
    n->children.push_back(std::move(arg));
    return Expr(std::move(n));
}

Expr Expr::exp(Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Exp;
    n->hash = mix(mix(0, static_cast<std::size_t>(Kind::Exp)), arg.hash());
    n->children.push_back(std::move(arg));
    return Expr(std::move(n));
}

Kind Expr::kind() const noexcept { return node_->kind; }

bool Expr::is_zero() const { return is_constant() && sgn(node_->value) == 0; }

bool Expr::is_one() const { return is_constant() && node_->value == 1; }

const Rational& Expr::value() const {
    if (!is_constant()) throw std::logic_error("Expr::value on a non-constant node");
    return node_->value;
}

Var Expr::var() const {
    if (kind() != Kind::Variable) throw std::logic_error("Expr::var on a non-variable node");
    return node_->var;
}

long Expr::exponent() const {
    if (kind() != Kind::Power) throw std::logic_error("Expr::exponent on a non-power node");
    return node_->exponent;
}

const Expr& Expr::arg() const {
    switch (kind()) {
        case Kind::Power:
        case Kind::Sin:
        case Kind::Cos:
        case Kind::Exp:
            return node_->children.front();
        default:
            throw std::logic_error("Expr::arg on a node without a single argument");
    }
}

std::span<const Expr> Expr::operands() const noexcept { return node_->children; }

std::size_t Expr::hash() const noexcept { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
    return compare(a, b) == 0;
}

namespace {

int rank(const Expr& e) {
    // Variable(X) and Variable(Y) get distinct ranks between Constant and Power.
    switch (e.kind()) {
        case Kind::Constant: return 0;
        case Kind::Variable: return e.var() == Var::X ? 1 : 2;
        case Kind::Power: return 3;
        case Kind::Sin: return 4;
        case Kind::Cos: return 5;
        case Kind::Exp: return 6;
        case Kind::Product: return 7;
        case Kind::Sum: return 8;
    }
    return 9;
}

int three_way(long a, long b) { return a < b ? -1 : (a > b ? 1 : 0); }

int compare_lists(std::span<const Expr> a, std::span<const Expr> b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(a[i], b[i]); c != 0) return c;
    }
    return three_way(static_cast<long>(a.size()), static_cast<long>(b.size()));
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
    if (int c = three_way(rank(a), rank(b)); c != 0) return c;
    switch (a.kind()) {
        case Kind::Constant:
            return cmp(a.value(), b.value()) < 0 ? -1 : (cmp(a.value(), b.value()) > 0 ? 1 : 0);
        case Kind::Variable:
            return 0;
        case Kind::Power:
            // Graded: lower exponents sort first, then by base.
            if (int c = three_way(a.exponent(), b.exponent()); c != 0) return c;
            return compare(a.base(), b.base());
        case Kind::Sin:
        case Kind::Cos:
        case Kind::Exp:
            return compare(a.arg(), b.arg());
        case Kind::Product: {
            // Symbolic factors first, the leading coefficient only breaks ties.
            auto fa = a.operands();
            auto fb = b.operands();
            const bool ca = fa.front().is_constant();
            const bool cb = fb.front().is_constant();
            if (int c = compare_lists(fa.subspan(ca ? 1 : 0), fb.subspan(cb ? 1 : 0)); c != 0) return c;
            const Rational one(1);
            const Rational& ka = ca ? fa.front().value() : one;
            const Rational& kb = cb ? fb.front().value() : one;
            return cmp(ka, kb) < 0 ? -1 : (cmp(ka, kb) > 0 ? 1 : 0);
        }
        case Kind::Sum:
            return compare_lists(a.operands(), b.operands());
    }
    return 0;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }

Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }

Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }

Expr operator-(const Expr& a) { return Expr::product({Expr::integer(-1), a}); }

bool contains(const Expr& e, Var v) {
    if (e.kind() == Kind::Variable) return e.var() == v;
    return std::ranges::any_of(e.operands(), [v](const Expr& c) { return contains(c, v); });
}

namespace {

Expr replace(const Expr& e, Var v, const Expr& replacement) {
    switch (e.kind()) {
        case Kind::Constant:
            return e;
        case Kind::Variable:
            return e.var() == v ? replacement : e;
        case Kind::Power:
            return Expr::power(replace(e.base(), v, replacement), e.exponent());
        case Kind::Sin:
            return Expr::sin(replace(e.arg(), v, replacement));
        case Kind::Cos:
            return Expr::cos(replace(e.arg(), v, replacement));
        case Kind::Exp:
            return Expr::exp(replace(e.arg(), v, replacement));
        case Kind::Product:
        case Kind::Sum: {
            std::vector<Expr> kids;
            kids.reserve(e.operands().size());
            for (const auto& c : e.operands()) kids.push_back(replace(c, v, replacement));
            return e.kind() == Kind::Sum ? Expr::sum(std::move(kids)) : Expr::product(std::move(kids));
        }
    }
    return e;
}

}  // namespace

Expr substitute(const Expr& e, Var v, const Expr& replacement) {
    if (!contains(e, v)) return simplify(e);
    return simplify(replace(e, v, replacement));
}

double evaluate(const Expr& e, double x, double y) {
    switch (e.kind()) {
        case Kind::Constant:
            return e.value().get_d();
        case Kind::Variable:
            return e.var() == Var::X ? x : y;
        case Kind::Power: {
            const double b = evaluate(e.base(), x, y);
            if (e.exponent() < 0 && b == 0.0) {
                throw EvalDomainError("negative power of zero in " + render(e));
            }
            return std::pow(b, static_cast<double>(e.exponent()));
        }
        case Kind::Sin:
            return std::sin(evaluate(e.arg(), x, y));
        case Kind::Cos:
            return std::cos(evaluate(e.arg(), x, y));
        case Kind::Exp:
            return std::exp(evaluate(e.arg(), x, y));
        case Kind::Product: {
            double p = 1.0;
            for (const auto& f : e.operands()) p *= evaluate(f, x, y);
            return p;
        }
        case Kind::Sum: {
            double s = 0.0;
            for (const auto& t : e.operands()) s += evaluate(t, x, y);
            return s;
        }
    }
    return 0.0;
}

std::string to_string(Var v) { return v == Var::X ? "x" : "y"; }

Equivalence check_equivalent(const Expr& a, const Expr& b) {
    const Expr diff = simplify(a - b);
    if (diff.is_constant()) return {diff.is_zero(), false};

    constexpr int kSamples = 32;
    constexpr double kRelTol = 1e-10;
    std::mt19937_64 rng(0x7269636f6d69ULL);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int i = 0; i < kSamples; ++i) {
        const double px = coord(rng);
        const double py = coord(rng);
        double va = 0.0;
        double vb = 0.0;
        try {
            va = evaluate(a, px, py);
            vb = evaluate(b, px, py);
        } catch (const EvalDomainError&) {
            return {false, true};
        }
        const double scale = std::max({1.0, std::abs(va), std::abs(vb)});
        if (!(std::abs(va - vb) <= kRelTol * scale)) return {false, true};
    }
    return {true, true};
}

}  // namespace tricomi::sym
