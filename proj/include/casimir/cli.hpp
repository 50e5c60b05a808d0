#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/controls.hpp"
#include "casimir/core.hpp"

namespace casimir::cli {

inline constexpr std::string_view kCsvHeader =
    "d,m,a,ma,energy_per_dof,force_per_dof,force_total,method,error_estimate";

enum class ExitCode : int { Ok = 0, Usage = 1, Numerical = 2 };

/// Bad flag combination or value detected after parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class MethodChoice { Exact, Asymptotic, Auto };

enum class SweepParameter { Separation, Mass, MaProduct, Dimension };
enum class SweepScale { Linear, Log };

struct SweepSpec {
    SweepParameter parameter = SweepParameter::Separation;
    double from = 0.0;
    double to = 1.0;
    int points = 2;
    SweepScale scale = SweepScale::Linear;
    // Values held fixed; the swept one is overwritten per point.
    Geometry geometry;
    FieldSpec field;
    MethodChoice method = MethodChoice::Auto;

    void validate() const;
};

/// One row of evaluation output. Numeric result fields are empty when the
/// evaluation failed (method == "failed").
struct OutputRecord {
    double d = 0.0;
    double m = 0.0;
    double a = 0.0;
    double ma = 0.0;
    std::optional<double> energy_per_dof;
    std::optional<double> force_per_dof;
    std::optional<double> force_total;
    std::string method;
    std::optional<double> error_estimate;       // of the force
    std::optional<double> energy_error_estimate;  // not part of the CSV schema
    std::string failure;  // message when method == "failed"
};

/// Grid of the swept parameter, endpoints exact.
std::vector<double> sweep_grid(const SweepSpec& spec);

/// Resolves `choice` for a field; throws UsageError for unsupported
/// combinations (exact massive boson, asymptotic massless).
Method resolve_method(const FieldSpec& field, MethodChoice choice);

/// Evaluates energy and force at one point. Throws ConvergenceError on
/// numerical failure.
OutputRecord evaluate(const Geometry& geometry, const FieldSpec& field, MethodChoice choice,
                      const NumericsControl& ctl);

/// Evaluates every grid point on `threads` workers (0 = hardware
/// concurrency); rows come back in grid order. Convergence failures become
/// rows with method "failed".
std::vector<OutputRecord> run_sweep(const SweepSpec& spec, const NumericsControl& ctl,
                                    unsigned threads = 0);

std::string csv_row(const OutputRecord& r);

/// Shortest round-trip representation, scientific notation.
std::string format_scientific(double v);

/// Parses flat `key = value` config text into `--key=value` arguments.
/// Blank lines and `#` comments are skipped; throws UsageError on malformed lines.
std::vector<std::string> config_arguments(std::string_view text);

/// Runs the command line (args excludes the program name). Returns the
/// process exit code: 0 success, 1 usage error, 2 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
