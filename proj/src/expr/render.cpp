#include "tricomi/expr.hpp"

namespace tricomi::sym {

namespace {

std::string render_node(const Expr& e);

bool is_negative_term(const Expr& t) {
    if (t.is_constant()) return sgn(t.value()) < 0;
    return t.kind() == Kind::Product && t.operands().front().is_constant() &&
           sgn(t.operands().front().value()) < 0;
}

Expr negate_term(const Expr& t) {
    if (t.is_constant()) return Expr::constant(-t.value());
    std::vector<Expr> factors(t.operands().begin(), t.operands().end());
    factors.front() = Expr::constant(-factors.front().value());
    if (factors.front().is_one()) factors.erase(factors.begin());
    return Expr::product(std::move(factors));
}

std::string render_rational(const Rational& q) { return q.get_str(); }

/// Operand of '*': sums need parentheses, negative constants too when not leading.
std::string render_factor(const Expr& f, bool leading) {
    if (f.kind() == Kind::Sum) return "(" + render_node(f) + ")";
    if (f.is_constant() && !leading && sgn(f.value()) < 0) return "(" + render_rational(f.value()) + ")";
    return render_node(f);
}

std::string render_power_base(const Expr& b) {
    switch (b.kind()) {
        case Kind::Variable:
        case Kind::Sin:
        case Kind::Cos:
        case Kind::Exp:
            return render_node(b);
        case Kind::Constant:
            if (sgn(b.value()) >= 0 && b.value().get_den() == 1) return render_rational(b.value());
            return "(" + render_rational(b.value()) + ")";
        default:
            return "(" + render_node(b) + ")";
    }
}

std::string render_product(const Expr& e) {
    auto factors = e.operands();
    std::string out;
    std::size_t i = 0;
    if (factors.front().is_constant()) {
        const Rational& c = factors.front().value();
        if (c == -1) {
            out = "-";
        } else if (c != 1) {
            out = render_rational(c) + "*";
        }
        i = 1;
    }
    for (bool first = true; i < factors.size(); ++i, first = false) {
        if (!first) out += "*";
        out += render_factor(factors[i], first && out.empty());
    }
    return out;
}

std::string render_sum(const Expr& e) {
    std::string out;
    bool first = true;
    for (const auto& t : e.operands()) {
        if (first) {
            out = render_node(t);
            first = false;
        } else if (is_negative_term(t)) {
            out += " - " + render_node(negate_term(t));
        } else if (t.kind() == Kind::Sum) {
            out += " + (" + render_node(t) + ")";
        } else {
            out += " + " + render_node(t);
        }
    }
    return out;
}

std::string render_node(const Expr& e) {
    switch (e.kind()) {
        case Kind::Constant:
            return render_rational(e.value());
        case Kind::Variable:
            return to_string(e.var());
        case Kind::Power:
            return render_power_base(e.base()) + "^" + std::to_string(e.exponent());
        case Kind::Sin:
            return "sin(" + render_node(e.arg()) + ")";
        case Kind::Cos:
            return "cos(" + render_node(e.arg()) + ")";
        case Kind::Exp:
            return "exp(" + render_node(e.arg()) + ")";
        case Kind::Product:
            return render_product(e);
        case Kind::Sum:
            return render_sum(e);
    }
    return {};
}

}  // namespace

std::string render(const Expr& e) { return render_node(e); }

}  // namespace tricomi::sym
