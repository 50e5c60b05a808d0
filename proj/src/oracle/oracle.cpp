#include "casimir/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/specfun.hpp"

namespace casimir::oracle {

namespace {

using std::numbers::pi;

constexpr double kTailLog = -60.0;
constexpr SeriesControl kExactZeta{1e-15, 10000};

double relative_residual(double reference, double value) {
    if (reference == value) return 0.0;
    const double scale = std::max(std::abs(reference), std::numeric_limits<double>::min());
    return std::abs(value - reference) / scale;
}

// Moves x away from `from` until h(x) has dropped kTailLog below h(from), then bisects.
template <class LogF>
double tail_point(const LogF& log_f, double from, double peak_log, double direction) {
    double inner = from;
    double step = 1.0;
    double outer = from + direction * step;
    while (log_f(outer) - peak_log > kTailLog) {
        inner = outer;
        step *= 2.0;
        outer = from + direction * step;
    }
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (inner + outer);
        (log_f(mid) - peak_log > kTailLog ? inner : outer) = mid;
    }
    return outer;
}

// log of I_n = int_0^inf t^{-(nu+1)} exp(-t - c^2/t) dt, with t = e^u.
double log_heat_kernel_integral(double nu, double c, const QuadratureControl& qctl) {
    const auto log_f = [nu, c](double u) { return -std::exp(u) - c * c * std::exp(-u) - nu * u; };
    // h'(u) = 0  <=>  w^2 + nu w - c^2 = 0 with w = e^u
    const double w = 2.0 * c * c / (nu + std::sqrt(nu * nu + 4.0 * c * c));
    const double peak = std::log(w);
    const double peak_log = log_f(peak);
    const double lo = tail_point(log_f, peak, peak_log, -1.0);
    const double hi = tail_point(log_f, peak, peak_log, +1.0);
    const auto scaled = [&](double u) { return std::exp(log_f(u) - peak_log); };
    const QuadratureResult r = integrate(scaled, lo, hi, qctl, "energy_via_quadrature");
    return peak_log + std::log(r.value);
}

long double theta2_brute(long double x, int max_terms) {
    long double sum = 0.0L;
    for (int n = 1; n <= max_terms; ++n) {
        const long double h = n - 0.5L;
        const long double term = 2.0L * std::exp(-std::numbers::pi_v<long double> * h * h * x);
        sum += term;
        if (term < 1e-21L * sum) return sum;
    }
    throw ConvergenceError("theta_identity_check: theta2 direct sum exceeded max_terms");
}

long double theta4_brute(long double x, int max_terms) {
    long double sum = 1.0L;
    for (int n = 1; n <= max_terms; ++n) {
        const long double term = 2.0L * std::exp(-std::numbers::pi_v<long double> * n * n * x);
        sum += (n % 2 == 0) ? term : -term;
        if (term < 1e-21L * std::abs(sum)) return sum;
    }
    throw ConvergenceError("theta_identity_check: theta4 direct sum exceeded max_terms");
}

double energy_any(const Geometry& g, const FieldSpec& f, bool per_dof, const NumericsControl& ctl) {
    if (f.mass > 0.0) {
        if (f.statistics == Statistics::Fermionic) {
            return fermionic_massive_energy(g, f, per_dof, ctl).value;
        }
        return massive_energy_asymptotic(g, f, per_dof).value;
    }
    if (f.statistics == Statistics::Fermionic) return fermionic_massless_energy(g, per_dof, f.dof).value;
    return bosonic_massless_energy(g, per_dof, f.dof).value;
}

double analytic_force(const Geometry& g, const FieldSpec& f, const NumericsControl& ctl) {
    if (f.mass > 0.0) return fermionic_massive_force(g, f, true, ctl).value;
    if (f.statistics == Statistics::Fermionic) return fermionic_massless_force(g, true).value;
    return bosonic_massless_force(g, true).value;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

using Reports = std::vector<OracleReport>;

template <class Body>
OracleReport guarded(const std::string& name, double tolerance, Body&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        OracleReport r = make_report(name, 0.0, std::numeric_limits<double>::quiet_NaN(), tolerance);
        r.note = e.what();
        return r;
    }
}

Reports theta_reports(const OracleControls& oc) {
    const double tol = 1e-10 * oc.tolerance_scale;
    std::vector<std::pair<double, double>> points = {{1.0, 1.0}, {2.0, 0.3}, {0.5, 5.0}};
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> a_dist(0.5, 3.0);
    std::uniform_real_distribution<double> y_dist(0.2, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double a = a_dist(rng);
        points.emplace_back(a, y_dist(rng));
    }
    Reports out;
    for (const auto& [a, y] : points) {
        const std::string name = "theta[a=" + fmt(a) + ",y=" + fmt(y) + "]";
        out.push_back(guarded(name, tol, [&] {
            OracleReport r = theta_identity_check(a, y, oc.numerics.series);
            r.tolerance = tol;
            r.passed = r.relative_residual <= tol;
            return r;
        }));
    }
    return out;
}

Reports eta_zeta_reports(const OracleControls& oc) {
    const double tol = 1e-10 * oc.tolerance_scale;
    Reports out;
    for (int d = 1; d <= 12; ++d) {
        const std::string name = "eta_zeta[d=" + std::to_string(d) + "]";
        out.push_back(guarded(name, tol, [&] {
            OracleReport r = eta_zeta_check(d, oc.numerics.series);
            r.tolerance = tol;
            r.passed = r.relative_residual <= tol;
            return r;
        }));
    }
    return out;
}

Reports bessel_reports(const OracleControls& oc) {
    const double tol = oc.numerics.quadrature.rel_tol * oc.tolerance_scale;
    Reports out;
    for (int n = 0; n <= 5; ++n) {
        for (double z : {0.1, 1.0, 5.0, 20.0}) {
            const std::string name =
                "bessel[nu=" + std::to_string(n) + ".5,z=" + fmt(z) + "]";
            out.push_back(guarded(name, tol, [&] {
                return make_report(name, specfun::bessel_k_half_integer(n, z),
                                   specfun::bessel_k(n + 0.5, z, oc.numerics.quadrature), tol);
            }));
        }
    }
    return out;
}

Reports energy_reports(const OracleControls& oc) {
    const double tol = std::max(1e-8, oc.numerics.series.rel_tol) * oc.tolerance_scale;
    Reports out;
    for (int d = 1; d <= 4; ++d) {
        for (double am : {0.5, 1.0, 2.0, 5.0}) {
            const std::string name = "energy[d=" + std::to_string(d) + ",am=" + fmt(am) + "]";
            out.push_back(guarded(name, tol, [&] {
                const Geometry g{1.0, static_cast<double>(d)};
                const FieldSpec f = FieldSpec::fermion(am);
                return make_report(name, fermionic_massive_energy(g, f, true, oc.numerics).value,
                                   energy_via_quadrature(g, f, 40, oc.numerics.quadrature), tol);
            }));
        }
    }
    return out;
}

Reports finite_difference_reports(const OracleControls& oc) {
    NumericsControl tight = oc.numerics;
    tight.series.rel_tol = std::min(tight.series.rel_tol, 1e-13);
    tight.quadrature.rel_tol = std::min(tight.quadrature.rel_tol, 1e-12);

    struct Point {
        double d, m, a;
        Statistics stats;
        double tol;
    };
    const Point points[] = {
        {3.0, 2.0, 1.0, Statistics::Fermionic, 1e-6}, {2.0, 1.0, 1.5, Statistics::Fermionic, 1e-6},
        {1.0, 0.5, 2.0, Statistics::Fermionic, 1e-6}, {4.0, 3.0, 0.5, Statistics::Fermionic, 1e-6},
        {3.0, 0.0, 1.0, Statistics::Fermionic, 1e-8}, {3.0, 0.0, 1.0, Statistics::Bosonic, 1e-8},
        {2.0, 0.0, 0.7, Statistics::Bosonic, 1e-8},
    };
    Reports out;
    for (const Point& p : points) {
        const double tol = p.tol * oc.tolerance_scale;
        const std::string name = "force_fd[" + std::string(to_string(p.stats)) + ",d=" + fmt(p.d) +
                                 ",m=" + fmt(p.m) + ",a=" + fmt(p.a) + "]";
        out.push_back(guarded(name, tol, [&] {
            const Geometry g{p.a, p.d};
            const FieldSpec f{p.stats, p.m, p.stats == Statistics::Fermionic ? kFermionDof : kBosonDof};
            // Pure powers of a need a finer step than the exponentially decaying series.
            const double step = p.m > 0.0 ? 0.02 * std::min(p.a, 1.0 / p.m) : 1e-3 * p.a;
            return make_report(name, analytic_force(g, f, tight),
                               finite_difference_force(g, f, true, step, tight), tol);
        }));
    }
    return out;
}

}  // namespace

OracleReport make_report(std::string name, double reference, double oracle, double tolerance) {
    OracleReport r;
    r.name = std::move(name);
    r.reference_value = reference;
    r.oracle_value = oracle;
    r.relative_residual = std::isnan(oracle) || std::isnan(reference)
                              ? std::numeric_limits<double>::infinity()
                              : relative_residual(reference, oracle);
    r.tolerance = tolerance;
    r.passed = r.relative_residual <= tolerance;
    return r;
}

double energy_via_quadrature(const Geometry& geometry, const FieldSpec& field, int n_max,
                             const QuadratureControl& qctl) {
    geometry.validate();
    field.validate();
    qctl.validate();
    if (!(field.mass > 0.0)) throw DomainError("energy_via_quadrature: requires mass > 0");
    if (n_max < 1) throw DomainError("energy_via_quadrature: n_max must be >= 1");

    const double a = geometry.separation;
    const double d = geometry.dimension;
    const double m = field.mass;
    const double nu = 0.5 * (d + 1.0);
    const double log_prefactor = nu * std::log(m * m / pi);

    double sum = 0.0;
    double last = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double c = a * n * m;
        last = std::exp(log_prefactor + log_heat_kernel_integral(nu, c, qctl));
        sum += (n % 2 == 0) ? last : -last;
    }
    if (last > qctl.rel_tol * std::abs(sum)) {
        throw ConvergenceError("energy_via_quadrature: n_max=" + std::to_string(n_max) +
                               " leaves a last term above rel_tol; raise n_max");
    }
    // The n = 0 bracket term is a-independent and dropped; +-n pairs give the 1/2 * 2.
    return std::exp2(-d) * a * 0.5 * sum;
}

OracleReport theta_identity_check(double a, double y, const SeriesControl& ctl) {
    if (!(a > 0.0) || !(y > 0.0)) throw DomainError("theta_identity_check: requires a, y > 0");
    ctl.validate();
    const long double x = static_cast<long double>(a) * a * y;
    const long double lhs = theta2_brute(1.0L / x, ctl.max_terms);
    const long double rhs = a * std::sqrt(static_cast<long double>(y)) * theta4_brute(x, ctl.max_terms);
    return make_report("theta[a=" + fmt(a) + ",y=" + fmt(y) + "]", static_cast<double>(rhs),
                       static_cast<double>(lhs), 1e-10);
}

OracleReport eta_zeta_check(int d, const SeriesControl& ctl) {
    if (d < 1) throw DomainError("eta_zeta_check: requires d >= 1");
    ctl.validate();
    const double s = d + 1.0;
    const double zeta = specfun::zeta(s, kExactZeta);
    const long n_terms = std::max<long>(ctl.max_terms, 1000);

    // Odd reciprocals, summed smallest-first, plus the midpoint-rule tail
    // sum_{k>K} (2k-1)^{-s} ~ int_{K+1/2}^inf (2k-1)^{-s} dk.
    long double odd = 0.0L;
    for (long k = n_terms; k >= 1; --k) odd += std::pow(static_cast<long double>(2 * k - 1), -s);
    odd += std::pow(2.0L * n_terms, 1.0L - s) / (2.0L * (s - 1.0L));

    // Alternating sum with the averaged tail (-1)^{N+1} f(N+1) / 2.
    const long n_alt = 2 * n_terms;
    long double alt = 0.0L;
    for (long n = n_alt; n >= 1; --n) {
        const long double t = std::pow(static_cast<long double>(n), -s);
        alt += (n % 2 == 0) ? t : -t;
    }
    alt += -0.5L * std::pow(static_cast<long double>(n_alt + 1), -s);

    const std::string name = "eta_zeta[d=" + std::to_string(d) + "]";
    OracleReport odd_report =
        make_report(name, (1.0 - std::exp2(-s)) * zeta, static_cast<double>(odd), 1e-10);
    OracleReport alt_report =
        make_report(name, -(1.0 - std::exp2(-static_cast<double>(d))) * zeta,
                    static_cast<double>(alt), 1e-10);
    return odd_report.relative_residual >= alt_report.relative_residual ? odd_report : alt_report;
}

double finite_difference_force(const Geometry& geometry, const FieldSpec& field, bool per_dof,
                               double step, const NumericsControl& ctl) {
    geometry.validate();
    field.validate();
    if (!(step > 0.0) || !(step < geometry.separation / 4.0)) {
        throw DomainError("finite_difference_force: requires 0 < step < separation / 4");
    }
    const auto central = [&](double h) {
        Geometry plus = geometry;
        Geometry minus = geometry;
        plus.separation += h;
        minus.separation -= h;
        return -(energy_any(plus, field, per_dof, ctl) - energy_any(minus, field, per_dof, ctl)) /
               (2.0 * h);
    };
    const double coarse = central(step);
    const double fine = central(0.5 * step);
    return (4.0 * fine - coarse) / 3.0;
}

std::vector<Check> all_checks() {
    return {Check::Theta, Check::EtaZeta, Check::Bessel, Check::Energy, Check::FiniteDifference};
}

std::string_view to_string(Check c) {
    switch (c) {
        case Check::Theta: return "theta";
        case Check::EtaZeta: return "eta_zeta";
        case Check::Bessel: return "bessel";
        case Check::Energy: return "energy";
        case Check::FiniteDifference: return "force_fd";
    }
    return "unknown";
}

Check parse_check(std::string_view name) {
    for (Check c : all_checks()) {
        if (to_string(c) == name) return c;
    }
    throw DomainError("unknown oracle check '" + std::string(name) +
                      "' (expected theta, eta_zeta, bessel, energy or force_fd)");
}

std::vector<OracleReport> run_all(const std::vector<Check>& selection,
                                  const OracleControls& controls) {
    controls.numerics.validate();
    std::vector<std::future<Reports>> pending;
    pending.reserve(selection.size());
    for (Check c : selection) {
        pending.push_back(std::async(std::launch::async, [c, &controls] {
            switch (c) {
                case Check::Theta: return theta_reports(controls);
                case Check::EtaZeta: return eta_zeta_reports(controls);
                case Check::Bessel: return bessel_reports(controls);
                case Check::Energy: return energy_reports(controls);
                case Check::FiniteDifference: return finite_difference_reports(controls);
            }
            return Reports{};
        }));
    }
    std::vector<OracleReport> out;
    for (auto& f : pending) {
        Reports part = f.get();
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

}  // namespace casimir::oracle
