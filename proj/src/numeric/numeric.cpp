#include "tricomi/numeric.hpp"

#include "tricomi/calculus.hpp"

#include <cmath>
#include <map>

namespace tricomi::numeric {

using sym::evaluate;
using sym::Var;

GridEvaluationError::GridEvaluationError(double x, double y, const std::string& cause)
    : std::runtime_error("evaluation failed at lattice point (" + std::to_string(x) + ", " + std::to_string(y) +
                         "): " + cause),
      x_(x),
      y_(y) {}

namespace {

struct Panel {
    double a, fa, m, fm, b, fb, whole;
};

double simpson(double a, double fa, double fm, double b, double fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

double adapt(const Integrand& f, const Panel& p, double tol, int depth) {
    const double lm = 0.5 * (p.a + p.m);
    const double rm = 0.5 * (p.m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(p.a, p.fa, flm, p.m, p.fm);
    const double right = simpson(p.m, p.fm, frm, p.b, p.fb);
    const double delta = left + right - p.whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= kMaxQuadDepth) {
        throw MaxDepthExceeded("adaptive Simpson did not converge on [" + std::to_string(p.a) + ", " +
                               std::to_string(p.b) + "] within depth " + std::to_string(kMaxQuadDepth));
    }
    return adapt(f, {p.a, p.fa, lm, flm, p.m, p.fm, left}, tol / 2.0, depth + 1) +
           adapt(f, {p.m, p.fm, rm, frm, p.b, p.fb, right}, tol / 2.0, depth + 1);
}

}  // namespace

double quad(const Integrand& f, double lower, double upper, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("quad tolerance must be positive");
    if (lower == upper) return 0.0;
    if (upper < lower) return -quad(f, upper, lower, tol);
    const double m = 0.5 * (lower + upper);
    const double fa = f(lower);
    const double fm = f(m);
    const double fb = f(upper);
    return adapt(f, {lower, fa, m, fm, upper, fb, simpson(lower, fa, fm, upper, fb)}, tol, 0);
}

NumericSolution::NumericSolution(TricomiProblem problem, const Expr& t, double tol)
    : problem_(std::move(problem)),
      t_(sym::simplify(t)),
      t_y_base_(sym::substitute(sym::differentiate(t_, Var::Y), Var::Y, problem_.base_y_expr())),
      tol_(tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
}

double NumericSolution::operator()(double x, double y) const {
    const double x0 = problem_.base_x.get_d();
    const double y0 = problem_.base_y.get_d();

    double seed_part = 0.0;
    try {
        seed_part = quad([&](double r) { return evaluate(t_, x, r); }, y0, y, tol_);
    } catch (const MaxDepthExceeded& e) {
        throw MaxDepthExceeded(std::string("integral of t over y: ") + e.what());
    }

    if (t_y_base_.is_zero()) return seed_part;

    const Integrand flux = [&](double s) { return evaluate(problem_.coeff_a, s, 0.0) * evaluate(t_y_base_, s, 0.0); };
    // Inner integrals are reused when the outer rule revisits a node.
    std::map<double, double> inner_cache;
    const Integrand inner = [&](double q) {
        auto it = inner_cache.find(q);
        if (it != inner_cache.end()) return it->second;
        double v = 0.0;
        try {
            v = quad(flux, x0, q, tol_ / 10.0);
        } catch (const MaxDepthExceeded& e) {
            throw MaxDepthExceeded(std::string("inner integral of a(s)*t_y(s,y0): ") + e.what());
        }
        inner_cache.emplace(q, v);
        return v;
    };
    double double_part = 0.0;
    try {
        double_part = quad(inner, x0, x, tol_);
    } catch (const MaxDepthExceeded& e) {
        const std::string what = e.what();
        if (what.starts_with("inner")) throw;
        throw MaxDepthExceeded("outer integral over q: " + what);
    }
    return seed_part - double_part;
}

double numeric_f(const TricomiProblem& problem, const Expr& t, double x, double y, double tol) {
    return NumericSolution(problem, t, tol)(x, y);
}

double fd_second_derivative(const Field& f, Axis which, double x, double y, double h) {
    const double center = f(x, y);
    if (which == Axis::XX) return (f(x + h, y) - 2.0 * center + f(x - h, y)) / (h * h);
    return (f(x, y + h) - 2.0 * center + f(x, y - h)) / (h * h);
}

void Grid::validate() const {
    if (!(x_min < x_max) || !(y_min < y_max)) throw std::invalid_argument("grid ranges must satisfy min < max");
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
}

double Grid::x(int i) const {
    if (i == nx - 1) return x_max;
    return x_min + (x_max - x_min) * static_cast<double>(i) / static_cast<double>(nx - 1);
}

double Grid::y(int j) const {
    if (j == ny - 1) return y_max;
    return y_min + (y_max - y_min) * static_cast<double>(j) / static_cast<double>(ny - 1);
}

std::string to_string(Method m) { return m == Method::SymbolicExprEval ? "symbolic" : "finite-difference"; }

namespace {

class Accumulator {
public:
    void add(double x, double y, double r) {
        const double a = std::abs(r);
        if (count_ == 0 || a > max_) {
            max_ = a;
            worst_ = {x, y, r};
        }
        sum_ += a;
        ++count_;
    }

    void finish(VerificationReport& report) const {
        report.max_abs_residual = max_;
        report.mean_abs_residual = count_ == 0 ? 0.0 : sum_ / static_cast<double>(count_);
        report.worst_point = worst_;
    }

private:
    double max_ = 0.0;
    double sum_ = 0.0;
    long count_ = 0;
    ResidualSample worst_;
};

}  // namespace

VerificationReport verify_on_grid(const TricomiProblem& problem, const Expr& f, const Grid& grid) {
    grid.validate();
    VerificationReport report;
    report.grid = grid;
    report.method = Method::SymbolicExprEval;
    const Expr residual = residual_expr(problem, f);
    report.symbolic_zero = residual.is_zero();

    Accumulator acc;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            const double y = grid.y(j);
            try {
                acc.add(x, y, evaluate(residual, x, y));
            } catch (const std::exception& e) {
                throw GridEvaluationError(x, y, e.what());
            }
        }
    }
    acc.finish(report);
    return report;
}

double fd_residual(const TricomiProblem& problem, const Field& f, double x, double y, double h) {
    const double f_xx = fd_second_derivative(f, Axis::XX, x, y, h);
    const double f_yy = fd_second_derivative(f, Axis::YY, x, y, h);
    return f_xx + evaluate(problem.coeff_a, x, y) * f_yy;
}

VerificationReport verify_on_grid(const TricomiProblem& problem, const Field& f, const Grid& grid, double fd_step) {
    grid.validate();
    if (!(fd_step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    if (grid.nx < 3 || grid.ny < 3) throw std::invalid_argument("finite-difference verification needs interior grid points");
    VerificationReport report;
    report.grid = grid;
    report.method = Method::FiniteDifference;
    report.symbolic_zero = false;

    Accumulator acc;
    for (int j = 1; j + 1 < grid.ny; ++j) {
        for (int i = 1; i + 1 < grid.nx; ++i) {
            const double x = grid.x(i);
            const double y = grid.y(j);
            try {
                acc.add(x, y, fd_residual(problem, f, x, y, fd_step));
            } catch (const MaxDepthExceeded&) {
                throw;
            } catch (const std::exception& e) {
                throw GridEvaluationError(x, y, e.what());
            }
        }
    }
    acc.finish(report);
    return report;
}

}  // namespace tricomi::numeric
