#include "tricomi/calculus.hpp"
#include "tricomi/parse.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace tricomi::sym;

namespace {

double central_difference(const Expr& e, Var v, double x, double y, double h = 1e-5) {
    if (v == Var::X) return (evaluate(e, x + h, y) - evaluate(e, x - h, y)) / (2 * h);
    return (evaluate(e, x, y + h) - evaluate(e, x, y - h)) / (2 * h);
}

}  // namespace

TEST_CASE("differentiate: table rules") {
    CHECK(differentiate(parse("cos(x)"), Var::X) == parse("-sin(x)"));
    CHECK(differentiate(parse("x^3"), Var::Y) == Expr::integer(0));
    CHECK(differentiate(parse("exp(2*x + y)"), Var::Y) == parse("exp(2*x + y)"));
    CHECK(differentiate(parse("x^-2"), Var::X) == parse("-2*x^-3"));
    CHECK(differentiate(parse("sin(x*y)"), Var::X) == parse("y*cos(x*y)"));
}

TEST_CASE("differentiate: example polynomial, checked against finite differences") {
    const Expr f = parse("1/2*y^2 - 1/6*x^3");
    const Expr fx = differentiate(f, Var::X);
    CHECK(fx == parse("-1/2*x^2"));
    const std::array<std::array<double, 2>, 5> pts{{{0.3, -1.2}, {-0.7, 0.4}, {1.5, 1.1}, {-1.9, -0.2}, {0.05, 0.9}}};
    for (const auto& p : pts) {
        CHECK(evaluate(fx, p[0], p[1]) == doctest::Approx(central_difference(f, Var::X, p[0], p[1])).epsilon(1e-8));
    }
}

TEST_CASE("antiderivative: documented cases") {
    CHECK(antiderivative(parse("x"), Var::X) == parse("1/2*x^2"));
    CHECK(antiderivative(parse("cos(x)"), Var::X) == parse("sin(x)"));
    CHECK_FALSE(antiderivative(parse("exp(x^2)"), Var::X).has_value());
}

TEST_CASE("antiderivative: class boundaries") {
    CHECK(antiderivative(parse("x^2*sin(3*x + y)*y"), Var::X).has_value());
    CHECK(antiderivative(parse("x*exp(x)"), Var::X) == parse("x*exp(x) - exp(x)"));
    CHECK(antiderivative(parse("x^-2"), Var::X) == parse("-x^-1"));
    CHECK(antiderivative(parse("exp(x^2)"), Var::Y) == parse("y*exp(x^2)"));
    CHECK(antiderivative(parse("0"), Var::Y) == Expr::integer(0));
    CHECK_FALSE(antiderivative(parse("x^-1"), Var::X).has_value());
    CHECK_FALSE(antiderivative(parse("sin(x)*cos(x)"), Var::X).has_value());
    CHECK_FALSE(antiderivative(parse("sin(x)^2"), Var::X).has_value());
    CHECK_FALSE(antiderivative(parse("x^-1*sin(x)"), Var::X).has_value());
    CHECK_FALSE(antiderivative(parse("(1 + x)^-2"), Var::X).has_value());
    CHECK_FALSE(antiderivative(parse("sin(x*y)"), Var::X).has_value());
    CHECK_FALSE(antiderivative(parse("y + exp(x^2)"), Var::X).has_value());
}

TEST_CASE("antiderivative: derivative of the result is the integrand") {
    for (const char* text : {"x^3*y - 2*y^5", "x^4*cos(1/2*x - y)", "3*y^2*exp(-x + 2*y)", "x*sin(x) + x^2 + 7",
                             "y*x^2*sin(2*x)", "x^-3 + cos(y)"}) {
        for (Var v : {Var::X, Var::Y}) {
            const Expr e = parse(text);
            auto F = antiderivative(e, v);
            INFO(text, " over ", to_string(v));
            REQUIRE(F.has_value());
            CHECK(differentiate(*F, v) == e);
        }
    }
}

TEST_CASE("definite_integral") {
    // int_0^y s ds with the dummy standing for x.
    CHECK(definite_integral(parse("x"), Var::X, Expr::integer(0), Expr::y()) == parse("1/2*y^2"));
    CHECK(definite_integral(parse("1"), Var::Y, parse("3/2"), parse("3/2")) == Expr::integer(0));
    CHECK(definite_integral(parse("cos(x)"), Var::X, Expr::integer(0), parse("0")) == Expr::integer(0));
    CHECK_FALSE(definite_integral(parse("exp(x^2)"), Var::X, Expr::integer(0), Expr::integer(1)).has_value());
    CHECK_THROWS_AS(definite_integral(parse("x"), Var::X, Expr::integer(0), Expr::x()), IllegalBound);
    CHECK_THROWS_AS(integral_from(parse("x"), Var::Y, Expr::y()), IllegalBound);
}

TEST_CASE("integral_from: variable upper bound") {
    // int_0^y r dr
    CHECK(integral_from(parse("y"), Var::Y, Expr::integer(0)) == parse("1/2*y^2"));
    // int_1^x cos(s) ds
    CHECK(integral_from(parse("cos(x)"), Var::X, Expr::integer(1)) == parse("sin(x) - sin(1)"));
}
