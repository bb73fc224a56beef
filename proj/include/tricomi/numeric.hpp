#pragma once

#include "tricomi/tricomi.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace tricomi::numeric {

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr double kDefaultFdStep = 1e-3;
inline constexpr int kMaxQuadDepth = 50;

/// Adaptive Simpson recursion hit the depth cap.
class MaxDepthExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridEvaluationError : public std::runtime_error {
public:
    GridEvaluationError(double x, double y, const std::string& cause);
    [[nodiscard]] double x() const noexcept { return x_; }
    [[nodiscard]] double y() const noexcept { return y_; }

private:
    double x_;
    double y_;
};

using Integrand = std::function<double(double)>;
using Field = std::function<double(double, double)>;

/// Adaptive Simpson with Richardson correction, absolute tolerance `tol`,
/// tolerance halved per split. quad(f, c, c) is exactly 0 and reversed bounds
/// flip the sign.
double quad(const Integrand& f, double lower, double upper, double tol = kDefaultQuadTol);

/// Construction formula evaluated by nested quadrature. Only t_y is taken
/// symbolically; a(x) and t are evaluated pointwise, so the coefficient may lie
/// outside the integrable class.
class NumericSolution {
public:
    NumericSolution(TricomiProblem problem, const Expr& t, double tol = kDefaultQuadTol);

    /// Outer integrals at `tol`, the inner one at tol/10.
    double operator()(double x, double y) const;

    [[nodiscard]] const TricomiProblem& problem() const noexcept { return problem_; }
    [[nodiscard]] double tolerance() const noexcept { return tol_; }

private:
    TricomiProblem problem_;
    Expr t_;
    Expr t_y_base_;
    double tol_;
};

double numeric_f(const TricomiProblem& problem, const Expr& t, double x, double y, double tol = kDefaultQuadTol);

enum class Axis { XX, YY };

/// (f(p+h) - 2 f(p) + f(p-h)) / h^2 along the chosen axis.
double fd_second_derivative(const Field& f, Axis which, double x, double y, double h);

struct Grid {
    double x_min = -1.0;
    double x_max = 1.0;
    double y_min = -1.0;
    double y_max = 1.0;
    int nx = 21;
    int ny = 21;

    /// Throws std::invalid_argument on an empty range or fewer than 2 points per axis.
    void validate() const;
    [[nodiscard]] double x(int i) const;
    [[nodiscard]] double y(int j) const;
};

enum class Method { SymbolicExprEval, FiniteDifference };

std::string to_string(Method m);

struct ResidualSample {
    double x = 0.0;
    double y = 0.0;
    double residual = 0.0;
};

struct VerificationReport {
    Grid grid;
    double max_abs_residual = 0.0;
    double mean_abs_residual = 0.0;
    bool symbolic_zero = false;
    ResidualSample worst_point;
    Method method = Method::SymbolicExprEval;
};

/// Symbolic method: the canonical residual expression is evaluated on every
/// lattice point, row by row (y outer, x inner).
VerificationReport verify_on_grid(const TricomiProblem& problem, const Expr& f, const Grid& grid);

/// Finite-difference method on interior lattice points.
VerificationReport verify_on_grid(const TricomiProblem& problem, const Field& f, const Grid& grid,
                                  double fd_step = kDefaultFdStep);

/// FD residual f_xx + a f_yy at one point.
double fd_residual(const TricomiProblem& problem, const Field& f, double x, double y, double h);

}  // namespace tricomi::numeric
