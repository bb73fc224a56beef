#pragma once

#include "tricomi/expr.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tricomi {

using sym::Expr;
using sym::Rational;

/// The equation f_xx + a(x) f_yy = 0 together with the base point (x0, y0)
/// from which every integral of the construction starts.
struct TricomiProblem {
    Expr coeff_a;
    Rational base_x{0};
    Rational base_y{0};

    /// Throws std::invalid_argument when the coefficient mentions y.
    TricomiProblem(Expr a, Rational x0 = 0, Rational y0 = 0);

    [[nodiscard]] Expr base_x_expr() const { return Expr::constant(base_x); }
    [[nodiscard]] Expr base_y_expr() const { return Expr::constant(base_y); }
};

enum class ConstructionPath { Symbolic, Hybrid };

struct SolutionRecord {
    Expr f;
    Expr seed;
    std::size_t depth = 1;
    ConstructionPath path = ConstructionPath::Symbolic;
    TricomiProblem problem;
    /// False when the seed's residual was not verified before construction.
    bool checked = true;
};

/// Intermediate functions of the first-order reduction: t = f_y, u = f_x,
/// g(y) the integration function of u, h(x) the integration function of f.
struct DerivationTrace {
    Expr t;
    Expr u;
    Expr g;
    Expr h;
    Expr f;
};

class SeedNotASolution : public std::runtime_error {
public:
    explicit SeedNotASolution(Expr residual);
    [[nodiscard]] const Expr& residual() const noexcept { return residual_; }

private:
    Expr residual_;
};

/// Which integral of the construction left the symbolic class.
enum class FailedIntegral { SeedInY, InnerInX, OuterInX, DerivationG };

std::string to_string(FailedIntegral which);

class NotSymbolicallyIntegrable : public std::runtime_error {
public:
    explicit NotSymbolicallyIntegrable(FailedIntegral which);
    [[nodiscard]] FailedIntegral which() const noexcept { return which_; }

private:
    FailedIntegral which_;
};

class BoundaryHypothesisViolated : public std::runtime_error {
public:
    explicit BoundaryHypothesisViolated(Expr t_y_at_base);
    /// The nonzero t_y(x, y0).
    [[nodiscard]] const Expr& boundary_derivative() const noexcept { return expr_; }

private:
    Expr expr_;
};

/// A trace invariant failed: a canonicalizer gap, never a user error.
class TraceInconsistent : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Failure inside iterate_solutions, tagged with the depth that was being built.
class IterationFailed : public std::runtime_error {
public:
    IterationFailed(std::size_t depth, const std::string& cause);
    [[nodiscard]] std::size_t depth() const noexcept { return depth_; }

private:
    std::size_t depth_;
};

/// Canonical f_xx + a(x) f_yy.
Expr residual_expr(const TricomiProblem& problem, const Expr& f);

/// Residuals (u_x + a v_y, u_y - v_x) of the equivalent first-order system.
std::pair<Expr, Expr> first_order_residuals(const TricomiProblem& problem, const Expr& u, const Expr& v);

/// New solution from a known one:
///   f(x,y) = int_{y0}^{y} t(x,r) dr - int_{x0}^{x} int_{x0}^{q} a(s) t_y(s,y0) ds dq.
/// Checks that `t` is a solution first.
SolutionRecord construct_solution(const TricomiProblem& problem, const Expr& t, std::size_t depth = 1);

/// Same construction without the seed check; the record is marked unchecked.
SolutionRecord construct_solution_unchecked(const TricomiProblem& problem, const Expr& t, std::size_t depth = 1);

/// The second term of the construction, -int int a(s) t_y(s,y0) ds dq, as a function of x.
Expr double_integral_term(const TricomiProblem& problem, const Expr& t);

DerivationTrace derivation_trace(const TricomiProblem& problem, const Expr& t);

/// Records of depth 1..n, each built from the previous one, starting from `seed`.
std::vector<SolutionRecord> iterate_solutions(const TricomiProblem& problem, const Expr& seed, std::size_t n);

/// f = int_{y0}^{y} t dr, which vanishes on y = y0. Needs t_y(x, y0) == 0.
SolutionRecord dirichlet_solution(const TricomiProblem& problem, const Expr& t);

/// f_y(x, y0) - t(x, y0) for a record built from `t`; zero for every constructed record.
Expr neumann_check(const TricomiProblem& problem, const Expr& t, const SolutionRecord& record);

}  // namespace tricomi
