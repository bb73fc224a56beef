#include "tricomi/tricomi.hpp"

#include "tricomi/calculus.hpp"
#include "tricomi/parse.hpp"

#include <doctest.h>

using namespace tricomi;
using sym::parse;
using sym::Var;

namespace {

TricomiProblem problem(const char* a, Rational x0 = 0, Rational y0 = 0) { return TricomiProblem(parse(a), x0, y0); }

bool is_zero(const Expr& e) { return e.is_zero(); }

/// Every documented invariant of a construction from `t`.
void check_construction(const TricomiProblem& p, const Expr& t) {
    INFO("a = ", sym::render(p.coeff_a), ", t = ", sym::render(t), ", base = (", p.base_x.get_str(), ", ",
         p.base_y.get_str(), ")");
    const SolutionRecord rec = construct_solution(p, t);
    CHECK(rec.path == ConstructionPath::Symbolic);
    CHECK(is_zero(residual_expr(p, rec.f)));

    Expr anchored = sym::substitute(sym::substitute(rec.f, Var::X, p.base_x_expr()), Var::Y, p.base_y_expr());
    CHECK(is_zero(anchored));
    CHECK(is_zero(neumann_check(p, t, rec)));

    const DerivationTrace tr = derivation_trace(p, t);
    CHECK(tr.f == rec.f);
    CHECK_FALSE(sym::contains(tr.g, Var::X));
    CHECK_FALSE(sym::contains(tr.h, Var::Y));
    const auto fx = sym::check_equivalent(sym::differentiate(tr.f, Var::X), tr.u);
    const auto fy = sym::check_equivalent(sym::differentiate(tr.f, Var::Y), tr.t);
    CHECK(fx.equal);
    CHECK_FALSE(fx.probabilistic);
    CHECK(fy.equal);
    CHECK_FALSE(fy.probabilistic);
    const auto [r1, r2] = first_order_residuals(p, tr.u, tr.t);
    CHECK(is_zero(r1));
    CHECK(is_zero(r2));
}

}  // namespace

TEST_CASE("TricomiProblem rejects a coefficient depending on y") {
    CHECK_THROWS_AS(TricomiProblem(parse("x*y")), std::invalid_argument);
    CHECK_NOTHROW(TricomiProblem(parse("cos(x) + 2")));
}

TEST_CASE("residual_expr") {
    CHECK(is_zero(residual_expr(problem("x"), parse("1/2*y^2 - 1/6*x^3"))));
    CHECK(is_zero(residual_expr(problem("cos(x)"), parse("-1 + 1/2*y^2 + cos(x)"))));
    CHECK(residual_expr(problem("x"), parse("x^2")) == Expr::integer(2));
}

TEST_CASE("first_order_residuals") {
    const auto p = problem("x");
    const DerivationTrace tr = derivation_trace(p, parse("y"));
    auto [a, b] = first_order_residuals(p, tr.u, parse("y"));
    CHECK(is_zero(a));
    CHECK(is_zero(b));
    std::tie(a, b) = first_order_residuals(p, Expr::integer(0), Expr::integer(0));
    CHECK(is_zero(a));
    CHECK(is_zero(b));
    std::tie(a, b) = first_order_residuals(p, parse("y"), Expr::integer(0));
    CHECK(is_zero(a));
    CHECK(b == Expr::integer(1));
}

TEST_CASE("construct_solution: worked examples") {
    CHECK(construct_solution(problem("x"), parse("y")).f == parse("1/2*y^2 - 1/6*x^3"));
    CHECK(construct_solution(problem("cos(x)"), parse("y")).f == parse("-1 + 1/2*y^2 + cos(x)"));
    // Hand integration: int_0^y (r^2/2 - x^3/6) dr, and t_y(s, 0) = 0 kills the second term.
    CHECK(construct_solution(problem("x"), parse("1/2*y^2 - 1/6*x^3")).f == parse("1/6*y^3 - 1/6*x^3*y"));
}

TEST_CASE("construct_solution: degenerate and shifted bases") {
    CHECK(is_zero(construct_solution(problem("x"), Expr::integer(0)).f));
    // t = 1 from base y0 = 2: f = y - 2.
    CHECK(construct_solution(problem("x", 0, 2), Expr::integer(1)).f == parse("y - 2"));
    // t = y, a = x, base (1, 0): f = y^2/2 - int_1^x int_1^q s ds dq = y^2/2 - (x^3/6 - x/2 + 1/3).
    CHECK(construct_solution(problem("x", 1, 0), parse("y")).f == parse("1/2*y^2 - 1/6*x^3 + 1/2*x - 1/3"));
}

TEST_CASE("construct_solution: precondition and integrability errors") {
    try {
        construct_solution(problem("x"), parse("x^2"));
        FAIL("expected SeedNotASolution");
    } catch (const SeedNotASolution& e) {
        CHECK(e.residual() == Expr::integer(2));
    }

    try {
        construct_solution(problem("exp(x^2)"), parse("y"));
        FAIL("expected NotSymbolicallyIntegrable");
    } catch (const NotSymbolicallyIntegrable& e) {
        CHECK(e.which() == FailedIntegral::InnerInX);
    }

    try {
        construct_solution(problem("x^-2", 1, 0), parse("y"));
        FAIL("expected NotSymbolicallyIntegrable");
    } catch (const NotSymbolicallyIntegrable& e) {
        CHECK(e.which() == FailedIntegral::OuterInX);
    }

    try {
        construct_solution_unchecked(problem("x"), parse("exp(y^2)"));
        FAIL("expected NotSymbolicallyIntegrable");
    } catch (const NotSymbolicallyIntegrable& e) {
        CHECK(e.which() == FailedIntegral::SeedInY);
    }
}

TEST_CASE("construct_solution_unchecked marks the record") {
    const SolutionRecord rec = construct_solution_unchecked(problem("x"), parse("x^2"));
    CHECK_FALSE(rec.checked);
    CHECK(rec.f == parse("x^2*y"));
    CHECK(construct_solution(problem("x"), parse("y")).checked);
}

TEST_CASE("derivation_trace: documented cases") {
    const DerivationTrace ex1 = derivation_trace(problem("x"), parse("y"));
    CHECK(ex1.u == parse("-1/2*x^2"));
    CHECK(ex1.h == parse("-1/6*x^3"));
    CHECK(ex1.f == parse("1/2*y^2 - 1/6*x^3"));

    const DerivationTrace one = derivation_trace(problem("x", 0, Rational(3, 2)), Expr::integer(1));
    CHECK(is_zero(one.u));
    CHECK(is_zero(one.g));
    CHECK(is_zero(one.h));
    CHECK(one.f == parse("y - 3/2"));

    const DerivationTrace ex2 = derivation_trace(problem("cos(x)"), parse("y"));
    CHECK(ex2.u == parse("-sin(x)"));
    CHECK(ex2.h == parse("cos(x) - 1"));
}

TEST_CASE("derivation_trace: g is nonzero when t depends on x") {
    // t = x*y solves any a: t_xx = t_yy = 0. g(y) = int_0^y t_x(x0, r) dr = y^2/2.
    const DerivationTrace tr = derivation_trace(problem("x"), parse("x*y"));
    CHECK(tr.g == parse("1/2*y^2"));
    // u = int_0^y t_x dr - int_0^x s * s ds.
    CHECK(tr.u == parse("1/2*y^2 - 1/3*x^3"));
}

TEST_CASE("iterate_solutions") {
    const auto p = problem("x");
    auto one = iterate_solutions(p, Expr::integer(1), 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].f == Expr::y());
    CHECK(one[0].depth == 1);

    auto three = iterate_solutions(p, Expr::integer(1), 3);
    REQUIRE(three.size() == 3);
    CHECK(three[1].f == parse("1/2*y^2 - 1/6*x^3"));
    CHECK(three[2].f == parse("1/6*y^3 - 1/6*x^3*y"));
    CHECK(three[2].seed == three[1].f);

    // Depth 4 by hand: int_0^y t dr plus the double integral of s * (-s^3/6).
    auto five = iterate_solutions(p, Expr::integer(1), 5);
    CHECK(five[3].f == parse("1/24*y^4 - 1/12*x^3*y^2 + 1/180*x^6"));
    CHECK(five[4].f == parse("1/120*y^5 - 1/36*x^3*y^3 + 1/180*x^6*y"));

    CHECK_THROWS_AS(iterate_solutions(p, Expr::integer(1), 0), std::invalid_argument);
}

TEST_CASE("iterate_solutions: failure is annotated with its depth") {
    // a = cos(x): the fourth step needs int cos(s)^2 ds, outside the class.
    try {
        iterate_solutions(problem("cos(x)"), Expr::integer(1), 5);
        FAIL("expected IterationFailed");
    } catch (const IterationFailed& e) {
        CHECK(e.depth() == 4);
        CHECK_THROWS_AS(std::rethrow_if_nested(e), NotSymbolicallyIntegrable);
    }
    try {
        iterate_solutions(problem("x"), parse("x^2"), 2);
        FAIL("expected IterationFailed");
    } catch (const IterationFailed& e) {
        CHECK(e.depth() == 1);
        CHECK_THROWS_AS(std::rethrow_if_nested(e), SeedNotASolution);
    }
}

TEST_CASE("dirichlet_solution") {
    const SolutionRecord rec = dirichlet_solution(problem("x"), parse("-1/6*x^3 + 1/2*y^2"));
    CHECK(rec.f == parse("-1/6*x^3*y + 1/6*y^3"));
    CHECK(is_zero(sym::substitute(rec.f, Var::Y, Expr::integer(0))));
    CHECK(is_zero(residual_expr(rec.problem, rec.f)));

    CHECK(dirichlet_solution(problem("x"), Expr::integer(1)).f == Expr::y());

    try {
        dirichlet_solution(problem("x"), parse("y"));
        FAIL("expected BoundaryHypothesisViolated");
    } catch (const BoundaryHypothesisViolated& e) {
        CHECK(e.boundary_derivative() == Expr::integer(1));
    }
    CHECK_THROWS_AS(dirichlet_solution(problem("x"), parse("x^2")), SeedNotASolution);

    // General base line: t = (y - 1)^2/2 - x^3/6 has t_y(x, 1) = 0.
    const auto shifted = problem("x", 0, 1);
    const SolutionRecord s = dirichlet_solution(shifted, parse("1/2*(y - 1)^2 - 1/6*x^3"));
    CHECK(is_zero(sym::substitute(s.f, Var::Y, Expr::integer(1))));
    CHECK(is_zero(residual_expr(shifted, s.f)));
}

TEST_CASE("neumann_check") {
    const auto p = problem("x");
    CHECK(is_zero(neumann_check(p, parse("y"), construct_solution(p, parse("y")))));
    CHECK(is_zero(neumann_check(p, Expr::integer(1), construct_solution(p, Expr::integer(1)))));
    const Expr t3 = parse("1/2*y^2 - 1/6*x^3");
    const SolutionRecord third = construct_solution(p, t3);
    CHECK(sym::substitute(sym::differentiate(third.f, Var::Y), Var::Y, Expr::integer(0)) == parse("-1/6*x^3"));
    CHECK(is_zero(neumann_check(p, t3, third)));
}

TEST_CASE("closure over a seed family") {
    const std::vector<std::pair<const char*, std::vector<const char*>>> family = {
        {"x", {"1", "y", "x", "x*y", "1/2*y^2 - 1/6*x^3", "3 + 2*x - 5*y + 7*x*y"}},
        {"cos(x)", {"y", "-1 + 1/2*y^2 + cos(x)", "x*y"}},
        {"exp(x)", {"y", "x*y + 2"}},
        {"x*sin(2*x)", {"y", "y + x"}},
        {"x^2 - 1", {"y", "x*y"}},
    };
    for (const auto& [a, seeds] : family) {
        for (Rational x0 : {Rational(0), Rational(1, 2)}) {
            for (Rational y0 : {Rational(0), Rational(-3, 4)}) {
                const auto p = problem(a, x0, y0);
                for (const char* t : seeds) check_construction(p, parse(t));
            }
        }
    }
    const auto p = problem("x");
    for (const auto& rec : iterate_solutions(p, Expr::integer(1), 5)) check_construction(p, rec.f);
}
