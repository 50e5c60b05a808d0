#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "casimir/cli.hpp"
#include "casimir/errors.hpp"

namespace casimir::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

void apply_parameter(SweepParameter p, double value, Geometry& g, FieldSpec& f) {
    switch (p) {
        case SweepParameter::Separation: g.separation = value; break;
        case SweepParameter::Mass: f.mass = value; break;
        case SweepParameter::MaProduct: f.mass = value / g.separation; break;
        case SweepParameter::Dimension: g.dimension = value; break;
    }
}

}  // namespace

void SweepSpec::validate() const {
    if (!(from < to)) throw UsageError("sweep: --from must be smaller than --to");
    if (points < 2) throw UsageError("sweep: --points must be >= 2");
    if (scale == SweepScale::Log && !(from > 0.0)) {
        throw UsageError("sweep: log scale requires --from > 0");
    }
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
    spec.validate();
    std::vector<double> grid(spec.points);
    const double last = spec.points - 1;
    for (int i = 0; i < spec.points; ++i) {
        const double t = i / last;
        grid[i] = spec.scale == SweepScale::Linear
                      ? spec.from + t * (spec.to - spec.from)
                      : std::exp(std::log(spec.from) + t * (std::log(spec.to) - std::log(spec.from)));
    }
    grid.front() = spec.from;
    grid.back() = spec.to;
    return grid;
}

Method resolve_method(const FieldSpec& field, MethodChoice choice) {
    if (field.mass == 0.0) {
        if (choice == MethodChoice::Asymptotic) {
            throw UsageError("the ma >> 1 asymptotic form needs mass > 0; use --method exact or auto");
        }
        return Method::MasslessClosedForm;
    }
    if (field.statistics == Statistics::Bosonic) {
        if (choice == MethodChoice::Exact) {
            throw UsageError("exact massive bosonic series is out of scope; only the ma >> 1 "
                             "asymptotic force is available (use --method asymptotic or auto)");
        }
        return Method::Asymptotic;
    }
    return choice == MethodChoice::Asymptotic ? Method::Asymptotic : Method::ExactSeries;
}

OutputRecord evaluate(const Geometry& geometry, const FieldSpec& field, MethodChoice choice,
                      const NumericsControl& ctl) {
    geometry.validate();
    field.validate();
    const Method method = resolve_method(field, choice);
    const bool fermion = field.statistics == Statistics::Fermionic;

    EnergyResult energy;
    ForceResult force;
    switch (method) {
        case Method::MasslessClosedForm:
            energy = fermion ? fermionic_massless_energy(geometry, true)
                             : bosonic_massless_energy(geometry, true);
            force = fermion ? fermionic_massless_force(geometry, true)
                            : bosonic_massless_force(geometry, true);
            break;
        case Method::Asymptotic:
            energy = massive_energy_asymptotic(geometry, field, true);
            force = fermion ? fermionic_massive_force_asymptotic(geometry, field, true)
                            : bosonic_massive_force_asymptotic(geometry, field, true);
            break;
        case Method::ExactSeries:
            energy = fermionic_massive_energy(geometry, field, true, ctl);
            force = fermionic_massive_force(geometry, field, true, ctl);
            break;
    }

    OutputRecord r;
    r.d = geometry.dimension;
    r.m = field.mass;
    r.a = geometry.separation;
    r.ma = field.mass * geometry.separation;
    r.energy_per_dof = energy.value;
    r.force_per_dof = force.value;
    r.force_total = force.value * field.dof;
    r.method = std::string(to_string(method));
    r.error_estimate = force.error_estimate;
    r.energy_error_estimate = energy.error_estimate;
    return r;
}

std::vector<OutputRecord> run_sweep(const SweepSpec& spec, const NumericsControl& ctl,
                                    unsigned threads) {
    const std::vector<double> grid = sweep_grid(spec);
    std::vector<Geometry> geometries(grid.size(), spec.geometry);
    std::vector<FieldSpec> fields(grid.size(), spec.field);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        apply_parameter(spec.parameter, grid[i], geometries[i], fields[i]);
        if (spec.parameter == SweepParameter::Dimension &&
            geometries[i].dimension != std::round(geometries[i].dimension)) {
            throw UsageError("sweep: dimension grid points must be integers");
        }
        try {
            geometries[i].validate();
            fields[i].validate();
        } catch (const DomainError& e) {
            throw UsageError(std::string("sweep: ") + e.what());
        }
        resolve_method(fields[i], spec.method);
    }

    std::vector<OutputRecord> rows(grid.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
            try {
                rows[i] = evaluate(geometries[i], fields[i], spec.method, ctl);
            } catch (const ConvergenceError& e) {
                OutputRecord failed;
                failed.d = geometries[i].dimension;
                failed.m = fields[i].mass;
                failed.a = geometries[i].separation;
                failed.ma = failed.m * failed.a;
                failed.method = "failed";
                failed.failure = e.what();
                rows[i] = std::move(failed);
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    return rows;
}

std::string format_scientific(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
    return std::string(buf, res.ptr);
}

std::string csv_row(const OutputRecord& r) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? format_scientific(*v) : std::string();
    };
    std::string row;
    row += format_scientific(r.d) + ',' + format_scientific(r.m) + ',' + format_scientific(r.a) +
           ',' + format_scientific(r.ma) + ',';
    row += opt(r.energy_per_dof) + ',' + opt(r.force_per_dof) + ',' + opt(r.force_total) + ',';
    row += r.method + ',' + opt(r.error_estimate);
    return row;
}

std::vector<std::string> config_arguments(std::string_view text) {
    std::vector<std::string> args;
    int line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty() || key.starts_with("-")) {
            throw UsageError("config line " + std::to_string(line_no) + ": invalid key");
        }
        args.push_back("--" + std::string(key) + "=" + std::string(value));
    }
    return args;
}

}  // namespace casimir::cli
