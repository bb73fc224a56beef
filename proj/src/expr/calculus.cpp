#include "tricomi/calculus.hpp"

namespace tricomi::sym {

namespace {

Expr derive(const Expr& e, Var v) {
    if (!contains(e, v)) return Expr::integer(0);
    switch (e.kind()) {
        case Kind::Constant:
            return Expr::integer(0);
        case Kind::Variable:
            return Expr::integer(e.var() == v ? 1 : 0);
        case Kind::Power:
            return Expr::product({Expr::integer(e.exponent()), Expr::power(e.base(), e.exponent() - 1),
                                  derive(e.base(), v)});
        case Kind::Sin:
            return Expr::cos(e.arg()) * derive(e.arg(), v);
        case Kind::Cos:
            return -(Expr::sin(e.arg()) * derive(e.arg(), v));
        case Kind::Exp:
            return e * derive(e.arg(), v);
        case Kind::Product: {
            auto factors = e.operands();
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (!contains(factors[i], v)) continue;
                std::vector<Expr> part(factors.begin(), factors.end());
                part[i] = derive(factors[i], v);
                terms.push_back(Expr::product(std::move(part)));
            }
            return Expr::sum(std::move(terms));
        }
        case Kind::Sum: {
            std::vector<Expr> terms;
            for (const auto& t : e.operands()) terms.push_back(derive(t, v));
            return Expr::sum(std::move(terms));
        }
    }
    return Expr::integer(0);
}

/// A transcendental factor c * T(arg) with d(arg)/dv = slope.
struct Transcendental {
    Kind kind;
    Expr arg;
    Rational slope;
};

/// One antiderivative step: sin -> -cos/l, cos -> sin/l, exp -> exp/l.
void integrate_once(Kind& kind, Rational& coeff, const Rational& slope) {
    coeff /= slope;
    switch (kind) {
        case Kind::Sin:
            kind = Kind::Cos;
            coeff = -coeff;
            break;
        case Kind::Cos:
            kind = Kind::Sin;
            break;
        default:
            break;
    }
}

Expr make_transcendental(Kind kind, const Expr& arg) {
    switch (kind) {
        case Kind::Sin: return Expr::sin(arg);
        case Kind::Cos: return Expr::cos(arg);
        default: return Expr::exp(arg);
    }
}

std::optional<Expr> integrate_term(const Expr& term, Var v) {
    std::vector<Expr> factors;
    if (term.kind() == Kind::Product) {
        factors.assign(term.operands().begin(), term.operands().end());
    } else {
        factors.push_back(term);
    }

    std::vector<Expr> free;
    long degree = 0;
    std::optional<Transcendental> trans;
    for (const auto& f : factors) {
        if (!contains(f, v)) {
            free.push_back(f);
            continue;
        }
        switch (f.kind()) {
            case Kind::Variable:
                degree += 1;
                break;
            case Kind::Power:
                if (f.base().kind() != Kind::Variable) return std::nullopt;
                degree += f.exponent();
                break;
            case Kind::Sin:
            case Kind::Cos:
            case Kind::Exp: {
                if (trans) return std::nullopt;
                const Expr slope = derive(f.arg(), v);
                const Expr s = simplify(slope);
                if (!s.is_constant() || s.is_zero()) return std::nullopt;
                trans = Transcendental{f.kind(), f.arg(), s.value()};
                break;
            }
            default:
                return std::nullopt;
        }
    }

    const Expr var = Expr::variable(v);
    if (!trans) {
        if (degree == -1) return std::nullopt;
        free.push_back(Expr::constant(Rational(1, degree + 1)));
        free.push_back(Expr::power(var, degree + 1));
        return Expr::product(std::move(free));
    }
    if (degree < 0) return std::nullopt;

    // Tabular integration by parts: sum_k (-1)^k (v^m)^(k) * I^(k+1)[T].
    std::vector<Expr> terms;
    Kind kind = trans->kind;
    Rational coeff(1);
    Rational falling(1);  // m!/(m-k)!
    for (long k = 0; k <= degree; ++k) {
        integrate_once(kind, coeff, trans->slope);
        Rational c = coeff * falling;
        if (k % 2 == 1) c = -c;
        terms.push_back(Expr::product(
            {Expr::constant(c), Expr::power(var, degree - k), make_transcendental(kind, trans->arg)}));
        falling *= degree - k;
    }
    free.push_back(Expr::sum(std::move(terms)));
    return Expr::product(std::move(free));
}

}  // namespace

Expr differentiate(const Expr& e, Var v) { return simplify(derive(e, v)); }

std::optional<Expr> antiderivative(const Expr& e, Var v) {
    const Expr canonical = simplify(e);
    if (canonical.is_zero()) return Expr::integer(0);
    std::vector<Expr> parts;
    if (canonical.kind() == Kind::Sum) {
        for (const auto& t : canonical.operands()) {
            auto F = integrate_term(t, v);
            if (!F) return std::nullopt;
            parts.push_back(std::move(*F));
        }
    } else {
        auto F = integrate_term(canonical, v);
        if (!F) return std::nullopt;
        parts.push_back(std::move(*F));
    }
    return simplify(Expr::sum(std::move(parts)));
}

std::optional<Expr> definite_integral(const Expr& e, Var v, const Expr& lower, const Expr& upper) {
    if (contains(lower, v) || contains(upper, v)) {
        throw IllegalBound("integration bound depends on the integration variable " + to_string(v));
    }
    auto F = antiderivative(e, v);
    if (!F) return std::nullopt;
    return simplify(substitute(*F, v, upper) - substitute(*F, v, lower));
}

std::optional<Expr> integral_from(const Expr& e, Var v, const Expr& lower) {
    if (contains(lower, v)) {
        throw IllegalBound("lower bound depends on the integration variable " + to_string(v));
    }
    auto F = antiderivative(e, v);
    if (!F) return std::nullopt;
    return simplify(*F - substitute(*F, v, lower));
}

}  // namespace tricomi::sym
