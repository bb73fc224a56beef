#include "tricomi/cli.hpp"

#include "tricomi/calculus.hpp"
#include "tricomi/parse.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace tricomi::cli {

using nlohmann::ordered_json;
using sym::render;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string rational_string(const Rational& q) { return q.get_str(); }

const char* path_name(ConstructionPath p) { return p == ConstructionPath::Symbolic ? "symbolic" : "hybrid"; }

}  // namespace

ordered_json to_json(const TricomiProblem& problem) {
    return {{"a", render(problem.coeff_a)},
            {"base_x", rational_string(problem.base_x)},
            {"base_y", rational_string(problem.base_y)}};
}

ordered_json to_json(const SolutionRecord& record) {
    return {{"problem", to_json(record.problem)},
            {"seed", render(record.seed)},
            {"depth", record.depth},
            {"path", path_name(record.path)},
            {"f", render(record.f)},
            {"residual", render(residual_expr(record.problem, record.f))},
            {"checked", record.checked}};
}

ordered_json to_json(const TricomiProblem& problem, const DerivationTrace& trace) {
    return {{"problem", to_json(problem)}, {"t", render(trace.t)}, {"u", render(trace.u)},
            {"g", render(trace.g)},        {"h", render(trace.h)}, {"f", render(trace.f)}};
}

ordered_json to_json(const numeric::VerificationReport& report) {
    const auto& g = report.grid;
    return {{"grid",
             {{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min}, {"y_max", g.y_max}, {"nx", g.nx},
              {"ny", g.ny}}},
            {"method", numeric::to_string(report.method)},
            {"symbolic_zero", report.symbolic_zero},
            {"max_abs_residual", report.max_abs_residual},
            {"mean_abs_residual", report.mean_abs_residual},
            {"worst_point",
             {{"x", report.worst_point.x}, {"y", report.worst_point.y}, {"residual", report.worst_point.residual}}}};
}

namespace {

/// Error raised for malformed configuration values.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Inputs {
    TricomiProblem problem;
    Expr t;
};

Inputs resolve(const RunConfig& cfg) {
    const Expr a = sym::parse(cfg.coeff_a);
    const Expr t = sym::parse(cfg.seed_t);
    return {TricomiProblem(a, sym::parse_rational(cfg.base_x), sym::parse_rational(cfg.base_y)), t};
}

SolutionRecord construct(const RunConfig& cfg, const Inputs& in, std::size_t depth = 1) {
    return cfg.unchecked ? construct_solution_unchecked(in.problem, in.t, depth)
                         : construct_solution(in.problem, in.t, depth);
}

std::vector<SolutionRecord> iterate(const RunConfig& cfg, const Inputs& in) {
    if (!cfg.unchecked) return iterate_solutions(in.problem, in.t, static_cast<std::size_t>(cfg.n));
    std::vector<SolutionRecord> out;
    Expr current = in.t;
    for (int depth = 1; depth <= cfg.n; ++depth) {
        out.push_back(construct_solution_unchecked(in.problem, current, static_cast<std::size_t>(depth)));
        current = out.back().f;
    }
    return out;
}

void write_csv_header(std::ostream& os) { os << "x,y,f,residual\n"; }

void write_csv_row(std::ostream& os, double x, double y, double f, std::optional<double> r) {
    os << format_double(x) << ',' << format_double(y) << ',' << format_double(f) << ',';
    if (r) os << format_double(*r);
    os << '\n';
}

void emit_construct(const RunConfig& cfg, const Inputs& in, std::ostream& os) {
    const SolutionRecord rec = construct(cfg, in);
    if (cfg.output == OutputFormat::Json) {
        os << to_json(rec).dump(2) << '\n';
    } else {
        os << "f(x,y) = " << render(rec.f) << '\n';
    }
}

void emit_iterate(const RunConfig& cfg, const Inputs& in, std::ostream& os) {
    const auto records = iterate(cfg, in);
    if (cfg.output == OutputFormat::Json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : records) arr.push_back(to_json(r));
        os << arr.dump(2) << '\n';
    } else {
        for (const auto& r : records) os << "f_" << r.depth << "(x,y) = " << render(r.f) << '\n';
    }
}

void emit_trace(const RunConfig& cfg, const Inputs& in, std::ostream& os) {
    const DerivationTrace tr = derivation_trace(in.problem, in.t);
    if (cfg.output == OutputFormat::Json) {
        os << to_json(in.problem, tr).dump(2) << '\n';
    } else {
        os << "t(x,y) = " << render(tr.t) << '\n'
           << "u(x,y) = " << render(tr.u) << '\n'
           << "g(y) = " << render(tr.g) << '\n'
           << "h(x) = " << render(tr.h) << '\n'
           << "f(x,y) = " << render(tr.f) << '\n';
    }
}

void emit_report_text(std::ostream& os, const char* path, const numeric::VerificationReport& rep) {
    os << "path: " << path << '\n'
       << "method: " << numeric::to_string(rep.method) << '\n'
       << "symbolic_zero: " << (rep.symbolic_zero ? "true" : "false") << '\n'
       << "max_abs_residual: " << format_double(rep.max_abs_residual) << '\n'
       << "mean_abs_residual: " << format_double(rep.mean_abs_residual) << '\n'
       << "worst_point: x = " << format_double(rep.worst_point.x) << ", y = " << format_double(rep.worst_point.y)
       << ", residual = " << format_double(rep.worst_point.residual) << '\n';
}

void emit_verify(const RunConfig& cfg, const Inputs& in, std::ostream& os) {
    cfg.grid.validate();
    std::optional<SolutionRecord> rec;
    try {
        rec = construct(cfg, in);
    } catch (const NotSymbolicallyIntegrable&) {
        // Falls through to the hybrid path below.
    }

    if (rec) {
        const auto report = numeric::verify_on_grid(in.problem, rec->f, cfg.grid);
        if (cfg.output == OutputFormat::Csv) {
            const Expr residual = residual_expr(in.problem, rec->f);
            write_csv_header(os);
            for (int j = 0; j < cfg.grid.ny; ++j) {
                for (int i = 0; i < cfg.grid.nx; ++i) {
                    const double x = cfg.grid.x(i);
                    const double y = cfg.grid.y(j);
                    write_csv_row(os, x, y, sym::evaluate(rec->f, x, y), sym::evaluate(residual, x, y));
                }
            }
        } else if (cfg.output == OutputFormat::Json) {
            ordered_json payload = to_json(*rec);
            payload["report"] = to_json(report);
            os << payload.dump(2) << '\n';
        } else {
            os << "f(x,y) = " << render(rec->f) << '\n';
            emit_report_text(os, "symbolic", report);
        }
        return;
    }

    if (!cfg.unchecked) {
        if (Expr r = residual_expr(in.problem, in.t); !r.is_zero()) throw SeedNotASolution(std::move(r));
    }
    const numeric::NumericSolution f(in.problem, in.t, cfg.quad_tol);
    const numeric::Field field = [&f](double x, double y) { return f(x, y); };
    const auto report = numeric::verify_on_grid(in.problem, field, cfg.grid, cfg.fd_step);
    if (cfg.output == OutputFormat::Csv) {
        write_csv_header(os);
        for (int j = 0; j < cfg.grid.ny; ++j) {
            for (int i = 0; i < cfg.grid.nx; ++i) {
                const double x = cfg.grid.x(i);
                const double y = cfg.grid.y(j);
                // Stencils are only taken at interior points; boundary rows leave the residual empty.
                const bool interior = i > 0 && j > 0 && i + 1 < cfg.grid.nx && j + 1 < cfg.grid.ny;
                write_csv_row(os, x, y, f(x, y),
                              interior ? std::optional(numeric::fd_residual(in.problem, field, x, y, cfg.fd_step))
                                       : std::nullopt);
            }
        }
    } else if (cfg.output == OutputFormat::Json) {
        ordered_json payload = {{"problem", to_json(in.problem)},
                                {"seed", render(in.t)},
                                {"depth", 1},
                                {"path", "hybrid"},
                                {"f", nullptr},
                                {"quad_tol", cfg.quad_tol},
                                {"fd_step", cfg.fd_step},
                                {"report", to_json(report)}};
        os << payload.dump(2) << '\n';
    } else {
        os << "f(x,y) = <numeric: nested quadrature, tol " << format_double(cfg.quad_tol) << ">\n";
        emit_report_text(os, "hybrid", report);
    }
}

void emit_bvp(const RunConfig& cfg, const Inputs& in, std::ostream& os) {
    const Expr y0 = in.problem.base_y_expr();
    if (cfg.bvp_kind == BvpKind::Dirichlet) {
        const SolutionRecord rec = dirichlet_solution(in.problem, in.t);
        const Expr boundary = sym::substitute(rec.f, sym::Var::Y, y0);
        if (cfg.output == OutputFormat::Json) {
            ordered_json payload = {{"kind", "dirichlet"}, {"record", to_json(rec)}, {"boundary_value", render(boundary)}};
            os << payload.dump(2) << '\n';
        } else {
            os << "f(x,y) = " << render(rec.f) << '\n' << "f(x," << rational_string(in.problem.base_y)
               << ") = " << render(boundary) << '\n';
        }
        return;
    }
    const SolutionRecord rec = construct(cfg, in);
    const Expr datum = sym::substitute(in.t, sym::Var::Y, y0);
    const Expr check = neumann_check(in.problem, in.t, rec);
    if (cfg.output == OutputFormat::Json) {
        ordered_json payload = {{"kind", "neumann"},
                                {"record", to_json(rec)},
                                {"datum", render(datum)},
                                {"neumann_residual", render(check)}};
        os << payload.dump(2) << '\n';
    } else {
        const std::string y0s = rational_string(in.problem.base_y);
        os << "f(x,y) = " << render(rec.f) << '\n'
           << "g(x) = t(x," << y0s << ") = " << render(datum) << '\n'
           << "f_y(x," << y0s << ") - g(x) = " << render(check) << '\n';
    }
}

struct Failure {
    int code;
    std::string kind;
    std::string message;
    ordered_json extra = ordered_json::object();
};

Failure classify_current() {
    try {
        throw;
    } catch (const sym::SyntaxError& e) {
        return {kInputError, "SyntaxError", e.what(), {{"position", e.position()}, {"expected", e.expected()}}};
    } catch (const sym::UnknownIdentifier& e) {
        return {kInputError, "UnknownIdentifier", e.what(), {{"position", e.position()}, {"name", e.name()}}};
    } catch (const InputError& e) {
        return {kInputError, "InputError", e.what()};
    } catch (const std::invalid_argument& e) {
        return {kInputError, "InvalidArgument", e.what()};
    } catch (const SeedNotASolution& e) {
        return {kPreconditionFailed, "SeedNotASolution", e.what(), {{"residual", render(e.residual())}}};
    } catch (const BoundaryHypothesisViolated& e) {
        return {kPreconditionFailed, "BoundaryHypothesisViolated", e.what(),
                {{"t_y_at_base", render(e.boundary_derivative())}}};
    } catch (const NotSymbolicallyIntegrable& e) {
        return {kPreconditionFailed, "NotSymbolicallyIntegrable", e.what(), {{"integral", to_string(e.which())}}};
    } catch (const numeric::MaxDepthExceeded& e) {
        return {kNonConvergence, "MaxDepthExceeded", e.what()};
    } catch (const IterationFailed& e) {
        Failure inner{kInternal, "Internal", e.what()};
        try {
            std::rethrow_if_nested(e);
        } catch (...) {
            inner = classify_current();
        }
        inner.message = e.what();
        inner.extra["depth"] = e.depth();
        return inner;
    } catch (const sym::EvalDomainError& e) {
        return {kInputError, "EvalDomainError", e.what()};
    } catch (const numeric::GridEvaluationError& e) {
        return {kInputError, "GridEvaluationError", e.what(), {{"x", e.x()}, {"y", e.y()}}};
    } catch (const std::exception& e) {
        return {kInternal, "Internal", e.what()};
    }
}

int report_failure(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Failure f = classify_current();
    err << "error: " << f.message << '\n';
    if (cfg.output == OutputFormat::Json) {
        ordered_json payload = {{"kind", f.kind}, {"message", f.message}, {"exit_code", f.code}};
        for (const auto& [k, v] : f.extra.items()) payload[k] = v;
        out << ordered_json{{"error", payload}}.dump(2) << '\n';
    }
    return f.code;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ostringstream buffer;
    try {
        if (cfg.output == OutputFormat::Csv && cfg.command != Command::Verify) {
            throw InputError("csv output is only available for the verify command");
        }
        if (cfg.n < 1) throw InputError("--n must be at least 1");
        if (!(cfg.quad_tol > 0.0)) throw InputError("quadrature tolerance must be positive");
        const Inputs in = resolve(cfg);
        switch (cfg.command) {
            case Command::Construct: emit_construct(cfg, in, buffer); break;
            case Command::Iterate: emit_iterate(cfg, in, buffer); break;
            case Command::Trace: emit_trace(cfg, in, buffer); break;
            case Command::Verify: emit_verify(cfg, in, buffer); break;
            case Command::Bvp: emit_bvp(cfg, in, buffer); break;
        }
    } catch (...) {
        return report_failure(cfg, out, err);
    }

    if (cfg.out_path) {
        std::ofstream file(*cfg.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open output file " << *cfg.out_path << '\n';
            return kInputError;
        }
        file << buffer.str();
    } else {
        out << buffer.str();
    }
    return kOk;
}

namespace {

void add_common(CLI::App* sub, RunConfig& cfg, std::string& output, std::string& out_path, std::string& quad_tol) {
    sub->add_option("--a", cfg.coeff_a, "coefficient a(x)")->required();
    sub->add_option("--t", cfg.seed_t, "seed solution t(x,y)")->required();
    sub->add_option("--base-x", cfg.base_x, "lower bound of the x integrals (rational)");
    sub->add_option("--base-y", cfg.base_y, "lower bound of the y integral (rational)");
    sub->add_option("--output", output, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", out_path, "write the payload to this file instead of stdout");
    sub->add_flag("--unchecked", cfg.unchecked, "skip the seed residual check");
    sub->add_option("--quad-tol", quad_tol, "quadrature tolerance for the numeric path");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string output = "text";
    std::string out_path;
    std::string quad_tol;
    std::string bvp_kind = "dirichlet";

    CLI::App app{"Construct and verify exact solutions of f_xx + a(x) f_yy = 0", "tricomi-forge"};
    app.require_subcommand(1);
    struct Sub {
        Command command;
        CLI::App* app;
    };
    std::vector<Sub> subs;
    auto* construct_cmd = app.add_subcommand("construct", "build f from a seed solution t");
    auto* iterate_cmd = app.add_subcommand("iterate", "apply the construction n times starting from t");
    auto* trace_cmd = app.add_subcommand("trace", "print the intermediate functions u, g, h");
    auto* verify_cmd = app.add_subcommand("verify", "evaluate the residual of the constructed f on a grid");
    auto* bvp_cmd = app.add_subcommand("bvp", "Dirichlet or Cauchy-Neumann boundary construction");
    subs = {{Command::Construct, construct_cmd},
            {Command::Iterate, iterate_cmd},
            {Command::Trace, trace_cmd},
            {Command::Verify, verify_cmd},
            {Command::Bvp, bvp_cmd}};
    for (auto& s : subs) add_common(s.app, cfg, output, out_path, quad_tol);

    iterate_cmd->add_option("--n", cfg.n, "number of iterations")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--x-min", cfg.grid.x_min, "grid x range, lower end (default -1)");
    verify_cmd->add_option("--x-max", cfg.grid.x_max, "grid x range, upper end (default 1)");
    verify_cmd->add_option("--y-min", cfg.grid.y_min, "grid y range, lower end (default -1)");
    verify_cmd->add_option("--y-max", cfg.grid.y_max, "grid y range, upper end (default 1)");
    verify_cmd->add_option("--nx", cfg.grid.nx, "grid points along x (default 21)");
    verify_cmd->add_option("--ny", cfg.grid.ny, "grid points along y (default 21)");
    verify_cmd->add_option("--fd-step", cfg.fd_step, "finite-difference step for the hybrid path (default 1e-3)")->check(CLI::PositiveNumber);
    bvp_cmd->add_option("--kind", bvp_kind, "dirichlet or neumann")->check(CLI::IsMember({"dirichlet", "neumann"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    for (const auto& s : subs) {
        if (s.app->parsed()) cfg.command = s.command;
    }
    cfg.output = output == "json" ? OutputFormat::Json : (output == "csv" ? OutputFormat::Csv : OutputFormat::Text);
    cfg.bvp_kind = bvp_kind == "neumann" ? BvpKind::Neumann : BvpKind::Dirichlet;
    if (!out_path.empty()) cfg.out_path = out_path;

    std::string tol_text = quad_tol;
    if (tol_text.empty()) {
        if (const char* env = std::getenv(kQuadTolEnv); env != nullptr && *env != '\0') tol_text = env;
    }
    if (!tol_text.empty()) {
        try {
            std::size_t used = 0;
            cfg.quad_tol = std::stod(tol_text, &used);
            if (used != tol_text.size()) throw std::invalid_argument(tol_text);
        } catch (const std::exception&) {
            err << "error: invalid quadrature tolerance '" << tol_text << "'\n";
            return kInputError;
        }
    }
    return run(cfg, out, err);
}

}  // namespace tricomi::cli
