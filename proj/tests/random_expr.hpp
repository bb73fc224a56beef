#pragma once

// Random expression trees for property tests.

#include "tricomi/expr.hpp"

#include <cmath>
#include <random>

namespace tricomi::testing {

using sym::Expr;
using sym::Rational;

class ExprGenerator {
public:
    explicit ExprGenerator(std::uint64_t seed) : rng_(seed) {}

    /// Unsimplified tree over the full grammar, at most `depth` levels deep.
    Expr tree(int depth) {
        if (depth <= 1 || pick(0, 9) < 3) return leaf();
        switch (pick(0, 6)) {
            case 0:
            case 1: {
                std::vector<Expr> terms;
                for (int i = 0, n = pick(2, 3); i < n; ++i) terms.push_back(tree(depth - 1));
                return Expr::sum(std::move(terms));
            }
            case 2:
            case 3: {
                std::vector<Expr> factors;
                for (int i = 0, n = pick(2, 3); i < n; ++i) factors.push_back(tree(depth - 1));
                return Expr::product(std::move(factors));
            }
            case 4: {
                static constexpr long kExponents[] = {-2, -1, 2, 2, 3};
                return Expr::power(tree(depth - 2), kExponents[pick(0, 4)]);
            }
            case 5:
                return pick(0, 1) == 0 ? Expr::sin(tree(depth - 1)) : Expr::cos(tree(depth - 1));
            default:
                return Expr::exp(tree(depth - 2));
        }
    }

    /// Member of the integrable class for `v`: sum of c x^m y^n T(l x + k y + c0).
    Expr integrable(sym::Var v) {
        std::vector<Expr> terms;
        for (int i = 0, n = pick(1, 4); i < n; ++i) {
            std::vector<Expr> factors{constant()};
            factors.push_back(Expr::power(Expr::x(), pick(0, 3)));
            factors.push_back(Expr::power(Expr::y(), pick(0, 3)));
            const int which = pick(0, 3);
            if (which < 3) {
                Expr slope_v = Expr::constant(nonzero());
                Expr other = Expr::constant(Rational(pick(-2, 2)));
                Expr arg = v == sym::Var::X ? Expr::sum({slope_v * Expr::x(), other * Expr::y(), constant()})
                                            : Expr::sum({other * Expr::x(), slope_v * Expr::y(), constant()});
                factors.push_back(which == 0 ? Expr::sin(arg) : which == 1 ? Expr::cos(arg) : Expr::exp(arg));
            }
            terms.push_back(Expr::product(std::move(factors)));
        }
        return sym::simplify(Expr::sum(std::move(terms)));
    }

    double coordinate(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    Expr leaf() {
        switch (pick(0, 2)) {
            case 0: return constant();
            case 1: return Expr::x();
            default: return Expr::y();
        }
    }

    Expr constant() { return Expr::constant(Rational(pick(-5, 5), pick(1, 4))); }

    Rational nonzero() {
        int p = pick(1, 3) * (pick(0, 1) == 0 ? -1 : 1);
        return Rational(p, pick(1, 3));
    }

    std::mt19937_64 rng_;
};

/// Magnitude scale of evaluating `e`: every sum and product taken in absolute value.
inline double magnitude(const Expr& e, double x, double y) {
    using sym::Kind;
    switch (e.kind()) {
        case Kind::Sum: {
            double s = 0.0;
            for (const auto& t : e.operands()) s += magnitude(t, x, y);
            return s;
        }
        case Kind::Product: {
            double p = 1.0;
            for (const auto& f : e.operands()) p *= magnitude(f, x, y);
            return p;
        }
        case Kind::Power:
            if (e.exponent() > 0) return std::pow(magnitude(e.base(), x, y), static_cast<double>(e.exponent()));
            return std::abs(sym::evaluate(e, x, y));
        default:
            return std::abs(sym::evaluate(e, x, y));
    }
}

}  // namespace tricomi::testing
