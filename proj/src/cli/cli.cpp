#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/cli.hpp"
#include "casimir/errors.hpp"
#include "casimir/oracle.hpp"
#include "casimir/version.hpp"

namespace casimir::cli {

namespace {

using nlohmann::json;

enum class Format { Text, Json, Csv };

const std::map<std::string, Statistics> kStatistics = {{"fermionic", Statistics::Fermionic},
                                                       {"bosonic", Statistics::Bosonic}};
const std::map<std::string, MethodChoice> kMethods = {
    {"exact", MethodChoice::Exact}, {"asymptotic", MethodChoice::Asymptotic}, {"auto", MethodChoice::Auto}};
const std::map<std::string, SweepParameter> kParameters = {
    {"separation", SweepParameter::Separation}, {"mass", SweepParameter::Mass},
    {"ma_product", SweepParameter::MaProduct}, {"dimension", SweepParameter::Dimension}};
const std::map<std::string, SweepScale> kScales = {{"linear", SweepScale::Linear},
                                                   {"log", SweepScale::Log}};

std::string_view parameter_name(SweepParameter p) {
    for (const auto& [name, value] : kParameters) {
        if (value == p) return name;
    }
    return "";
}

std::string format_general(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json record_json(const OutputRecord& r) {
    return {{"d", r.d},
            {"m", r.m},
            {"a", r.a},
            {"ma", r.ma},
            {"energy_per_dof", optional_json(r.energy_per_dof)},
            {"force_per_dof", optional_json(r.force_per_dof)},
            {"force_total", optional_json(r.force_total)},
            {"method", r.method},
            {"error_estimate", optional_json(r.error_estimate)}};
}

// Options shared by the evaluating subcommands.
struct PointOptions {
    std::string statistics = "fermionic";
    double mass = 0.0;
    double separation = 1.0;
    int dimension = 3;
    std::string method = "auto";
    std::optional<int> dof;
    bool per_dof = true;
    std::string format = "text";

    FieldSpec field() const {
        const Statistics s = kStatistics.at(statistics);
        return {s, mass, dof.value_or(s == Statistics::Fermionic ? kFermionDof : kBosonDof)};
    }
    Geometry geometry() const { return {separation, static_cast<double>(dimension)}; }
};

void add_numerics(CLI::App* cmd, NumericsControl& ctl) {
    cmd->add_option("--series-rel-tol", ctl.series.rel_tol, "Series relative tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--series-max-terms", ctl.series.max_terms, "Series term cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--quad-rel-tol", ctl.quadrature.rel_tol, "Quadrature relative tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--quad-abs-tol", ctl.quadrature.abs_tol, "Quadrature absolute floor")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--quad-max-levels", ctl.quadrature.max_levels, "Quadrature bisection cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_field_options(CLI::App* cmd, PointOptions& o) {
    cmd->add_option("--statistics", o.statistics, "fermionic or bosonic")
        ->check(CLI::IsMember({"fermionic", "bosonic"}))
        ->capture_default_str();
    cmd->add_option("--mass", o.mass, "Field mass m >= 0 (natural units)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--separation", o.separation, "Plate separation a > 0")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--dimension", o.dimension, "Spatial dimension d >= 1")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--method", o.method, "exact, asymptotic or auto")
        ->check(CLI::IsMember({"exact", "asymptotic", "auto"}))
        ->capture_default_str();
    cmd->add_option("--dof", o.dof, "Degree-of-freedom count (default 4 fermionic, 1 bosonic)")
        ->check(CLI::PositiveNumber);
}

json tolerances_json(const NumericsControl& ctl) {
    return {{"series_rel_tol", ctl.series.rel_tol},
            {"series_max_terms", ctl.series.max_terms},
            {"quad_rel_tol", ctl.quadrature.rel_tol},
            {"quad_abs_tol", ctl.quadrature.abs_tol},
            {"quad_max_levels", ctl.quadrature.max_levels}};
}

json point_meta(std::string_view command, const PointOptions& o, const NumericsControl& ctl) {
    const FieldSpec f = o.field();
    return {{"command", command},
            {"statistics", o.statistics},
            {"dimension", o.dimension},
            {"separation", o.separation},
            {"mass", o.mass},
            {"dof", f.dof},
            {"method", o.method},
            {"per_dof", o.per_dof},
            {"tolerances", tolerances_json(ctl)},
            {"version", kVersion}};
}

void massive_boson_caveat(const FieldSpec& f, std::ostream& err) {
    if (f.statistics == Statistics::Bosonic && f.mass > 0.0) {
        err << "note: massive bosonic results use the ma >> 1 asymptotic form only\n";
    }
}

int emit_point(std::string_view command, const PointOptions& o, const NumericsControl& ctl,
               std::ostream& out, std::ostream& err) {
    const FieldSpec field = o.field();
    const OutputRecord r = evaluate(o.geometry(), field, kMethods.at(o.method), ctl);
    massive_boson_caveat(field, err);
    const Format format = o.format == "json" ? Format::Json : o.format == "csv" ? Format::Csv
                                                                                 : Format::Text;
    if (format == Format::Json) {
        out << json{{"meta", point_meta(command, o, ctl)}, {"rows", json::array({record_json(r)})}}
                   .dump(2)
            << '\n';
    } else if (format == Format::Csv) {
        out << kCsvHeader << '\n' << csv_row(r) << '\n';
    } else {
        const bool force = command == "force";
        const double per_dof = force ? *r.force_per_dof : *r.energy_per_dof;
        const double value = o.per_dof ? per_dof : per_dof * field.dof;
        const double error = (force ? *r.error_estimate : *r.energy_error_estimate) *
                             (o.per_dof ? 1.0 : field.dof);
        out << "statistics = " << o.statistics << '\n'
            << "d = " << o.dimension << '\n'
            << "m = " << format_general(o.mass) << '\n'
            << "a = " << format_general(o.separation) << '\n'
            << command << (o.per_dof ? "_per_dof" : "_total") << " = " << format_general(value)
            << '\n'
            << "method = " << r.method << '\n'
            << "error_estimate = " << format_general(error) << '\n';
    }
    return 0;
}

unsigned sweep_threads() {
    const char* env = std::getenv("CASIMIR_THREADS");
    if (env == nullptr || *env == '\0') return 0;
    unsigned n = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
    if (ec != std::errc{} || *ptr != '\0') {
        throw UsageError("CASIMIR_THREADS must be a non-negative integer");
    }
    return n;
}

int emit_sweep(const SweepSpec& spec, const PointOptions& o, const NumericsControl& ctl,
               std::ostream& out, std::ostream& err) {
    const std::vector<OutputRecord> rows = run_sweep(spec, ctl, sweep_threads());
    massive_boson_caveat(spec.field, err);
    bool failed = false;
    if (o.format == "json") {
        json meta = point_meta("sweep", o, ctl);
        meta["sweep"] = {{"parameter", parameter_name(spec.parameter)},
                         {"from", spec.from},
                         {"to", spec.to},
                         {"points", spec.points},
                         {"scale", spec.scale == SweepScale::Log ? "log" : "linear"}};
        json jrows = json::array();
        for (const OutputRecord& r : rows) {
            jrows.push_back(record_json(r));
            failed |= r.method == "failed";
        }
        out << json{{"meta", meta}, {"rows", jrows}}.dump(2) << '\n';
    } else {
        out << kCsvHeader << '\n';
        for (const OutputRecord& r : rows) {
            out << csv_row(r) << '\n';
            failed |= r.method == "failed";
        }
    }
    for (const OutputRecord& r : rows) {
        if (r.method == "failed") err << "error: " << r.failure << '\n';
    }
    return failed ? static_cast<int>(ExitCode::Numerical) : 0;
}

int emit_verify(const std::vector<std::string>& filters, double tolerance_scale,
                const std::string& format, const NumericsControl& ctl, std::ostream& out) {
    std::vector<oracle::Check> selection;
    if (filters.empty()) {
        selection = oracle::all_checks();
    } else {
        for (const std::string& f : filters) {
            try {
                selection.push_back(oracle::parse_check(f));
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
        }
    }
    const std::vector<oracle::OracleReport> reports =
        oracle::run_all(selection, {ctl, tolerance_scale});
    std::size_t passed = 0;
    for (const auto& r : reports) passed += r.passed ? 1 : 0;

    if (format == "json") {
        json jr = json::array();
        for (const auto& r : reports) {
            jr.push_back({{"name", r.name},
                          {"reference_value", r.reference_value},
                          {"oracle_value", r.oracle_value},
                          {"relative_residual", r.relative_residual},
                          {"tolerance", r.tolerance},
                          {"passed", r.passed},
                          {"note", r.note}});
        }
        out << json{{"meta", {{"command", "verify"},
                              {"tolerance_scale", tolerance_scale},
                              {"tolerances", tolerances_json(ctl)},
                              {"version", kVersion}}},
                    {"reports", jr}}
                   .dump(2)
            << '\n';
    } else {
        for (const auto& r : reports) {
            out << (r.passed ? "PASS " : "FAIL ") << r.name
                << " residual=" << format_scientific(r.relative_residual)
                << " tolerance=" << format_scientific(r.tolerance);
            if (!r.note.empty()) out << " note=\"" << r.note << '"';
            out << '\n';
        }
        out << "summary: " << passed << "/" << reports.size() << " checks passed\n";
    }
    return passed == reports.size() ? 0 : static_cast<int>(ExitCode::Numerical);
}

// Splices `key = value` lines from --config right after the subcommand so
// that flags given on the command line (parsed later, last wins) override them.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config requires a path");
            path = args[++i];
        } else if (args[i].starts_with("--config=")) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (!path) return rest;
    std::ifstream in(*path);
    if (!in) throw UsageError("cannot read config file '" + *path + "'");
    std::stringstream text;
    text << in.rdbuf();
    const std::vector<std::string> extra = config_arguments(text.str());
    auto insert_at = rest.begin();
    while (insert_at != rest.end() && insert_at->starts_with("-")) ++insert_at;
    if (insert_at != rest.end()) ++insert_at;
    rest.insert(insert_at, extra.begin(), extra.end());
    return rest;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    try {
        args = expand_config(raw_args);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Usage);
    }

    CLI::App app{"Casimir energies and forces between parallel plates (natural units, hbar = c = 1)",
                 "casimir"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_version_flag("--version", std::string("casimir ") + kVersion);
    app.require_subcommand(1);
    app.add_option("--config", "Flat key = value file whose keys are long flag names");

    NumericsControl ctl;
    PointOptions point;

    auto* force = app.add_subcommand("force", "Casimir force per unit plate hyperarea");
    auto* energy = app.add_subcommand("energy", "Renormalized vacuum energy per unit hyperarea");
    for (auto* cmd : {force, energy}) {
        add_field_options(cmd, point);
        cmd->add_flag("--per-dof,!--total", point.per_dof,
                      "Report per degree of freedom (default) or the total");
        cmd->add_option("--format", point.format, "text, json or csv")
            ->check(CLI::IsMember({"text", "json", "csv"}))
            ->capture_default_str();
        add_numerics(cmd, ctl);
    }

    int ratio_dimension = 3;
    std::string ratio_format = "text";
    auto* ratio = app.add_subcommand("ratio", "Massless fermion/boson force ratio 1 - 2^-d");
    ratio->add_option("--dimension", ratio_dimension, "Spatial dimension d >= 1")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ratio->add_option("--format", ratio_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    SweepSpec spec;
    std::string parameter;
    std::string scale = "linear";
    PointOptions sweep_point;
    sweep_point.format = "csv";
    auto* sweep = app.add_subcommand("sweep", "Evaluate energy and force over a parameter grid");
    sweep->add_option("--parameter", parameter, "separation, mass, ma_product or dimension")
        ->check(CLI::IsMember({"separation", "mass", "ma_product", "dimension"}))
        ->required();
    sweep->add_option("--from", spec.from, "First grid value")->required();
    sweep->add_option("--to", spec.to, "Last grid value")->required();
    sweep->add_option("--points", spec.points, "Number of grid points (>= 2)")
        ->capture_default_str();
    sweep->add_option("--scale", scale, "linear or log")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
    add_field_options(sweep, sweep_point);
    sweep->add_option("--format", sweep_point.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    add_numerics(sweep, ctl);

    std::vector<std::string> filters;
    double tolerance_scale = 1.0;
    std::string verify_format = "text";
    auto* verify = app.add_subcommand("verify", "Run the brute-force oracle suite");
    verify->add_option("--filter", filters, "theta, eta_zeta, bessel, energy, force_fd")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->delimiter(',');
    verify->add_option("--tolerance-scale", tolerance_scale, "Multiply every check tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--format", verify_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    add_numerics(verify, ctl);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::Usage);
    }

    try {
        if (force->parsed()) return emit_point("force", point, ctl, out, err);
        if (energy->parsed()) return emit_point("energy", point, ctl, out, err);
        if (ratio->parsed()) {
            const double r = massless_ratio(ratio_dimension);
            if (ratio_format == "json") {
                out << json{{"dimension", ratio_dimension}, {"ratio", r}}.dump() << '\n';
            } else {
                out << format_general(r) << '\n';
            }
            return 0;
        }
        if (sweep->parsed()) {
            spec.parameter = kParameters.at(parameter);
            spec.scale = kScales.at(scale);
            spec.geometry = sweep_point.geometry();
            spec.field = sweep_point.field();
            spec.method = kMethods.at(sweep_point.method);
            return emit_sweep(spec, sweep_point, ctl, out, err);
        }
        if (verify->parsed()) return emit_verify(filters, tolerance_scale, verify_format, ctl, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Usage);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Usage);
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Numerical);
    }
    return static_cast<int>(ExitCode::Usage);
}

}  // namespace casimir::cli
