#include "tricomi/tricomi.hpp"

#include "tricomi/calculus.hpp"

#include <exception>

namespace tricomi {

using sym::differentiate;
using sym::integral_from;
using sym::simplify;
using sym::substitute;
using sym::Var;

TricomiProblem::TricomiProblem(Expr a, Rational x0, Rational y0)
    : coeff_a(simplify(a)), base_x(std::move(x0)), base_y(std::move(y0)) {
    if (sym::contains(coeff_a, Var::Y)) {
        throw std::invalid_argument("coefficient a(x) must not depend on y: " + sym::render(coeff_a));
    }
    base_x.canonicalize();
    base_y.canonicalize();
}

SeedNotASolution::SeedNotASolution(Expr residual)
    : std::runtime_error("seed is not a solution: residual f_xx + a*f_yy = " + sym::render(residual)),
      residual_(std::move(residual)) {}

std::string to_string(FailedIntegral which) {
    switch (which) {
        case FailedIntegral::SeedInY: return "integral of t over y";
        case FailedIntegral::InnerInX: return "inner integral of a(s)*t_y(s,y0) over s";
        case FailedIntegral::OuterInX: return "outer integral over q";
        case FailedIntegral::DerivationG: return "inner integral of a(s)*t_yy(s,r) over s";
    }
    return "unknown integral";
}

NotSymbolicallyIntegrable::NotSymbolicallyIntegrable(FailedIntegral which)
    : std::runtime_error("no closed-form antiderivative for the " + to_string(which) +
                         "; use the numeric evaluator"),
      which_(which) {}

BoundaryHypothesisViolated::BoundaryHypothesisViolated(Expr t_y_at_base)
    : std::runtime_error("boundary hypothesis t_y(x, y0) = 0 fails: t_y(x, y0) = " + sym::render(t_y_at_base)),
      expr_(std::move(t_y_at_base)) {}

IterationFailed::IterationFailed(std::size_t depth, const std::string& cause)
    : std::runtime_error("iteration failed at depth " + std::to_string(depth) + ": " + cause), depth_(depth) {}

Expr residual_expr(const TricomiProblem& problem, const Expr& f) {
    const Expr f_xx = differentiate(differentiate(f, Var::X), Var::X);
    const Expr f_yy = differentiate(differentiate(f, Var::Y), Var::Y);
    return simplify(f_xx + problem.coeff_a * f_yy);
}

std::pair<Expr, Expr> first_order_residuals(const TricomiProblem& problem, const Expr& u, const Expr& v) {
    Expr first = simplify(differentiate(u, Var::X) + problem.coeff_a * differentiate(v, Var::Y));
    Expr second = simplify(differentiate(u, Var::Y) - differentiate(v, Var::X));
    return {std::move(first), std::move(second)};
}

namespace {

Expr require(std::optional<Expr> e, FailedIntegral which) {
    if (!e) throw NotSymbolicallyIntegrable(which);
    return std::move(*e);
}

/// int_{x0}^{x} a(s) t_y(s, y0) ds
Expr boundary_flux(const TricomiProblem& problem, const Expr& t) {
    const Expr t_y_base = substitute(differentiate(t, Var::Y), Var::Y, problem.base_y_expr());
    const Expr integrand = simplify(problem.coeff_a * t_y_base);
    return require(integral_from(integrand, Var::X, problem.base_x_expr()), FailedIntegral::InnerInX);
}

void check_seed(const TricomiProblem& problem, const Expr& t) {
    Expr r = residual_expr(problem, t);
    if (!r.is_zero()) throw SeedNotASolution(std::move(r));
}

}  // namespace

Expr double_integral_term(const TricomiProblem& problem, const Expr& t) {
    const Expr inner = boundary_flux(problem, t);
    const Expr outer = require(integral_from(inner, Var::X, problem.base_x_expr()), FailedIntegral::OuterInX);
    return simplify(-outer);
}

SolutionRecord construct_solution_unchecked(const TricomiProblem& problem, const Expr& t, std::size_t depth) {
    const Expr seed = simplify(t);
    const Expr first = require(integral_from(seed, Var::Y, problem.base_y_expr()), FailedIntegral::SeedInY);
    Expr f = simplify(first + double_integral_term(problem, seed));
    return SolutionRecord{std::move(f), seed, depth, ConstructionPath::Symbolic, problem, false};
}

SolutionRecord construct_solution(const TricomiProblem& problem, const Expr& t, std::size_t depth) {
    check_seed(problem, t);
    SolutionRecord rec = construct_solution_unchecked(problem, t, depth);
    rec.checked = true;
    if (Expr r = residual_expr(problem, rec.f); !r.is_zero()) {
        throw TraceInconsistent("constructed f has nonzero canonical residual " + sym::render(r));
    }
    return rec;
}

DerivationTrace derivation_trace(const TricomiProblem& problem, const Expr& t) {
    check_seed(problem, t);
    const Expr seed = simplify(t);
    const Expr y0 = problem.base_y_expr();
    const Expr x0 = problem.base_x_expr();

    const Expr t_x = differentiate(seed, Var::X);
    const Expr t_yy = differentiate(differentiate(seed, Var::Y), Var::Y);

    Expr u = simplify(require(integral_from(t_x, Var::Y, y0), FailedIntegral::SeedInY) - boundary_flux(problem, seed));

    // g(y) = int_{y0}^{y} [ t_x(x,r) + int_{x0}^{x} a(s) t_yy(s,r) ds ] dr, free of x when t solves the equation.
    const Expr inner_g =
        require(integral_from(simplify(problem.coeff_a * t_yy), Var::X, x0), FailedIntegral::DerivationG);
    Expr g = require(integral_from(simplify(t_x + inner_g), Var::Y, y0), FailedIntegral::SeedInY);
    if (sym::contains(g, Var::X)) {
        throw TraceInconsistent("g(y) still depends on x after simplification: " + sym::render(g));
    }

    Expr h = double_integral_term(problem, seed);
    if (sym::contains(h, Var::Y)) {
        throw TraceInconsistent("h(x) depends on y: " + sym::render(h));
    }
    Expr f = simplify(require(integral_from(seed, Var::Y, y0), FailedIntegral::SeedInY) + h);

    if (!simplify(differentiate(f, Var::X) - u).is_zero()) {
        throw TraceInconsistent("f_x differs from u for f = " + sym::render(f));
    }
    if (!simplify(differentiate(f, Var::Y) - seed).is_zero()) {
        throw TraceInconsistent("f_y differs from t for f = " + sym::render(f));
    }
    return DerivationTrace{seed, std::move(u), std::move(g), std::move(h), std::move(f)};
}

std::vector<SolutionRecord> iterate_solutions(const TricomiProblem& problem, const Expr& seed, std::size_t n) {
    if (n == 0) throw std::invalid_argument("iterate_solutions needs n >= 1");
    std::vector<SolutionRecord> out;
    out.reserve(n);
    Expr current = seed;
    for (std::size_t depth = 1; depth <= n; ++depth) {
        try {
            out.push_back(construct_solution(problem, current, depth));
        } catch (const std::exception& e) {
            std::throw_with_nested(IterationFailed(depth, e.what()));
        }
        current = out.back().f;
    }
    return out;
}

SolutionRecord dirichlet_solution(const TricomiProblem& problem, const Expr& t) {
    check_seed(problem, t);
    const Expr seed = simplify(t);
    Expr t_y_base = substitute(differentiate(seed, Var::Y), Var::Y, problem.base_y_expr());
    if (!t_y_base.is_zero()) throw BoundaryHypothesisViolated(std::move(t_y_base));
    Expr f = require(integral_from(seed, Var::Y, problem.base_y_expr()), FailedIntegral::SeedInY);
    return SolutionRecord{std::move(f), seed, 1, ConstructionPath::Symbolic, problem, true};
}

Expr neumann_check(const TricomiProblem& problem, const Expr& t, const SolutionRecord& record) {
    const Expr y0 = problem.base_y_expr();
    return simplify(substitute(differentiate(record.f, Var::Y), Var::Y, y0) - substitute(t, Var::Y, y0));
}

}  // namespace tricomi
