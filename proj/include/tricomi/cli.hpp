#pragma once

#include "tricomi/numeric.hpp"
#include "tricomi/tricomi.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tricomi::cli {

enum class Command { Construct, Iterate, Trace, Verify, Bvp };
enum class OutputFormat { Text, Json, Csv };
enum class BvpKind { Dirichlet, Neumann };

struct RunConfig {
    Command command = Command::Construct;
    std::string coeff_a;
    std::string seed_t;
    std::string base_x = "0";
    std::string base_y = "0";
    int n = 1;
    numeric::Grid grid;
    double fd_step = numeric::kDefaultFdStep;
    double quad_tol = numeric::kDefaultQuadTol;
    OutputFormat output = OutputFormat::Text;
    bool unchecked = false;
    BvpKind bvp_kind = BvpKind::Dirichlet;
    std::optional<std::string> out_path;
};

/// Process exit statuses.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInputError = 2,
    kPreconditionFailed = 3,
    kNonConvergence = 4,
};

/// Environment variable that overrides the default quadrature tolerance.
inline constexpr const char* kQuadTolEnv = "TRICOMI_FORGE_QUAD_TOL";

/// Parses argv (program name first) and runs the command. The payload goes to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already-parsed configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// JSON payloads. Expressions are grammar strings, rationals "p/q" strings.
nlohmann::ordered_json to_json(const TricomiProblem& problem);
nlohmann::ordered_json to_json(const SolutionRecord& record);
nlohmann::ordered_json to_json(const TricomiProblem& problem, const DerivationTrace& trace);
nlohmann::ordered_json to_json(const numeric::VerificationReport& report);

/// %.17g, enough for a lossless double round trip.
std::string format_double(double v);

}  // namespace tricomi::cli
