#include "tricomi/expr.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace tricomi::sym {

namespace {

Expr simplify_sum(const std::vector<Expr>& terms);
Expr simplify_product(const std::vector<Expr>& factors);
Expr simplify_power(const Expr& base, long exponent);

Rational rational_pow(const Rational& q, long n) {
    const unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), k);
    Rational r = n < 0 ? Rational(den, num) : Rational(num, den);
    r.canonicalize();
    return r;
}

/// Coefficient and monomial of a canonical term; the monomial of a constant is 1.
std::pair<Rational, Expr> split_term(const Expr& t) {
    if (t.is_constant()) return {t.value(), Expr::integer(1)};
    if (t.kind() == Kind::Product && t.operands().front().is_constant()) {
        auto ops = t.operands();
        return {ops.front().value(), Expr::product(std::vector<Expr>(ops.begin() + 1, ops.end()))};
    }
    return {Rational(1), t};
}

Expr make_term(const Rational& c, const Expr& monomial) {
    if (monomial.is_one()) return Expr::constant(c);
    if (c == 1) return monomial;
    std::vector<Expr> factors{Expr::constant(c)};
    if (monomial.kind() == Kind::Product) {
        factors.insert(factors.end(), monomial.operands().begin(), monomial.operands().end());
    } else {
        factors.push_back(monomial);
    }
    return Expr::product(std::move(factors));
}

std::vector<Expr> terms_of(const Expr& e) {
    if (e.kind() == Kind::Sum) return {e.operands().begin(), e.operands().end()};
    return {e};
}

Expr simplify_sum(const std::vector<Expr>& terms) {
    Rational constant(0);
    std::map<Expr, Rational, ExprLess> collected;
    auto add = [&](const Expr& t) {
        auto [c, mono] = split_term(t);
        if (mono.is_one()) {
            constant += c;
            return;
        }
        auto [it, inserted] = collected.try_emplace(mono, c);
        if (!inserted) it->second += c;
    };
    for (const auto& t : terms) {
        if (t.kind() == Kind::Sum) {
            for (const auto& inner : t.operands()) add(inner);
        } else {
            add(t);
        }
    }

    std::vector<Expr> out;
    if (sgn(constant) != 0) out.push_back(Expr::constant(constant));
    for (const auto& [mono, c] : collected) {
        if (sgn(c) != 0) out.push_back(make_term(c, mono));
    }
    std::ranges::sort(out, ExprLess{});
    return Expr::sum(std::move(out));
}

Expr simplify_exp(const Expr& arg) {
    if (arg.is_zero()) return Expr::integer(1);
    return Expr::exp(arg);
}

Expr simplify_product(const std::vector<Expr>& input) {
    std::vector<Expr> flat;
    flat.reserve(input.size());
    for (const auto& f : input) {
        if (f.kind() == Kind::Product) {
            flat.insert(flat.end(), f.operands().begin(), f.operands().end());
        } else {
            flat.push_back(f);
        }
    }

    Rational coeff(1);
    std::vector<Expr> exp_args;
    std::map<Expr, long, ExprLess> powers;
    for (const auto& f : flat) {
        switch (f.kind()) {
            case Kind::Constant:
                coeff *= f.value();
                break;
            case Kind::Exp:
                exp_args.push_back(f.arg());
                break;
            case Kind::Power:
                powers[f.base()] += f.exponent();
                break;
            default:
                powers[f] += 1;
                break;
        }
    }
    if (sgn(coeff) == 0) return Expr::integer(0);

    std::vector<Expr> factors;
    std::vector<Expr> to_expand;
    for (const auto& [b, n] : powers) {
        if (n == 0) continue;
        if (b.kind() == Kind::Sum && n > 0) {
            for (long i = 0; i < n; ++i) to_expand.push_back(b);
        } else {
            factors.push_back(Expr::power(b, n));
        }
    }
    if (!exp_args.empty()) {
        Expr merged = simplify_exp(simplify_sum(exp_args));
        if (!merged.is_one()) factors.push_back(std::move(merged));
    }
    std::ranges::sort(factors, ExprLess{});

    Expr monomial = Expr::product(factors);
    Expr current = make_term(coeff, monomial);
    // Distribute over positive powers of sums one at a time, collecting between steps.
    for (const auto& s : to_expand) {
        std::vector<Expr> products;
        for (const auto& t : terms_of(current)) {
            for (const auto& u : s.operands()) products.push_back(simplify_product({t, u}));
        }
        current = simplify_sum(products);
    }
    return current;
}

Expr simplify_power(const Expr& base, long n) {
    if (n == 0) return Expr::integer(1);
    if (n == 1) return base;
    switch (base.kind()) {
        case Kind::Constant:
            if (base.is_zero()) return n > 0 ? Expr::integer(0) : Expr::power(base, n);
            return Expr::constant(rational_pow(base.value(), n));
        case Kind::Power:
            return simplify_power(base.base(), base.exponent() * n);
        case Kind::Product: {
            std::vector<Expr> parts;
            parts.reserve(base.operands().size());
            for (const auto& f : base.operands()) parts.push_back(simplify_power(f, n));
            return simplify_product(parts);
        }
        case Kind::Exp:
            return simplify_exp(simplify_product({Expr::integer(n), base.arg()}));
        case Kind::Sum:
            if (n > 0) return simplify_product(std::vector<Expr>(static_cast<std::size_t>(n), base));
            return Expr::power(base, n);
        default:
            return Expr::power(base, n);
    }
}

}  // namespace

Expr simplify(const Expr& e) {
    switch (e.kind()) {
        case Kind::Constant:
        case Kind::Variable:
            return e;
        case Kind::Power:
            return simplify_power(simplify(e.base()), e.exponent());
        case Kind::Sin: {
            Expr a = simplify(e.arg());
            return a.is_zero() ? Expr::integer(0) : Expr::sin(std::move(a));
        }
        case Kind::Cos: {
            Expr a = simplify(e.arg());
            return a.is_zero() ? Expr::integer(1) : Expr::cos(std::move(a));
        }
        case Kind::Exp:
            return simplify_exp(simplify(e.arg()));
        case Kind::Product:
        case Kind::Sum: {
            std::vector<Expr> kids;
            kids.reserve(e.operands().size());
            for (const auto& c : e.operands()) kids.push_back(simplify(c));
            return e.kind() == Kind::Sum ? simplify_sum(kids) : simplify_product(kids);
        }
    }
    return e;
}

}  // namespace tricomi::sym
