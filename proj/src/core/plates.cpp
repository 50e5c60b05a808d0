#include <cmath>
#include <numbers>
#include <string>

#include "casimir/core.hpp"
#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

namespace {

using std::numbers::pi;

// The zeta values in the closed forms are summed to full double precision.
constexpr SeriesControl kClosedFormSeries{1e-15, 10000};

struct SeriesSum {
    double value = 0.0;
    double first_omitted = 0.0;
    int terms = 0;
};

// Sums term(1) + term(2) + ... of an alternating series with decreasing
// magnitudes, stopping before the first term below rel_tol of the partial sum.
template <class Term>
SeriesSum sum_alternating(Term&& term, const SeriesControl& ctl, const char* what) {
    SeriesSum s;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        const double t = term(n);
        if (n > 1 && std::abs(t) <= ctl.rel_tol * std::abs(s.value)) {
            s.first_omitted = std::abs(t);
            return s;
        }
        s.value += t;
        s.terms = n;
    }
    throw ConvergenceError(std::string(what) + ": Bessel series did not reach rel_tol within "
                           "max_terms=" + std::to_string(ctl.max_terms) +
                           " (terms decay like exp(-2 a n m)); raise max_terms");
}

void require_massive(const Geometry& geometry, const FieldSpec& field, const char* what) {
    geometry.validate();
    field.validate();
    if (field.mass == 0.0) {
        throw DomainError(std::string(what) + ": mass must be > 0; use the massless closed form "
                          "for m = 0");
    }
}

void require_statistics(const FieldSpec& field, Statistics expected, const char* what) {
    if (field.statistics != expected) {
        throw DomainError(std::string(what) + ": expects a " + std::string(to_string(expected)) +
                          " field");
    }
}

double multiplicity(bool per_dof, int dof) { return per_dof ? 1.0 : static_cast<double>(dof); }

// Leading ma >> 1 force per dof, shared verbatim by both statistics.
double asymptotic_force_per_dof(double a, double m, double d) {
    return -std::pow(m, 0.5 * d + 1.0) * std::exp(-2.0 * m * a) / std::pow(4.0 * pi * a, 0.5 * d);
}

// Relative size of the first correction to the leading asymptotics: the
// K_nu correction (4 nu^2 - 1) / (8z) plus, for the force, d / (4ma) from
// differentiating a^{-d/2}.
double asymptotic_correction(double a, double m, double d, bool force) {
    const double bessel = d * (d + 2.0) / (16.0 * m * a);
    return force ? bessel + d / (4.0 * m * a) : bessel;
}

// Gamma((d+1)/2) zeta(d+1) / pi^{(d+1)/2}, common to all massless forms.
double massless_base(double d) {
    const double nu = 0.5 * (d + 1.0);
    return specfun::gamma(nu) * specfun::zeta(d + 1.0, kClosedFormSeries) / std::pow(pi, nu);
}

}  // namespace

std::string_view to_string(Statistics s) {
    return s == Statistics::Fermionic ? "fermionic" : "bosonic";
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::ExactSeries: return "exact_series";
        case Method::Asymptotic: return "asymptotic";
        case Method::MasslessClosedForm: return "massless_closed_form";
    }
    return "unknown";
}

void Geometry::validate() const {
    if (!(separation > 0.0) || !std::isfinite(separation)) {
        throw DomainError("separation must be finite and > 0");
    }
    if (!(dimension >= 1.0) || !std::isfinite(dimension)) {
        throw DomainError("dimension must be finite and >= 1");
    }
}

void FieldSpec::validate() const {
    if (!(mass >= 0.0) || !std::isfinite(mass)) throw DomainError("mass must be finite and >= 0");
    if (dof < 1) throw DomainError("dof must be >= 1");
}

double mode_wavenumber(int n, const Geometry& geometry) {
    geometry.validate();
    if (n < 1) throw DomainError("mode_wavenumber: n must be >= 1");
    return (2.0 * n - 1.0) * pi / (2.0 * geometry.separation);
}

EnergyResult fermionic_massive_energy(const Geometry& geometry, const FieldSpec& field,
                                      bool per_dof, const NumericsControl& ctl) {
    require_massive(geometry, field, "fermionic_massive_energy");
    require_statistics(field, Statistics::Fermionic, "fermionic_massive_energy");
    ctl.validate();
    const double a = geometry.separation;
    const double d = geometry.dimension;
    const double m = field.mass;
    const double nu = 0.5 * (d + 1.0);

    // (m^2/pi)^nu / (anm)^nu = (m / (pi a n))^nu
    const auto term = [&](int n) {
        const double z = 2.0 * a * n * m;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        return sign * std::pow(m / (pi * a * n), nu) * specfun::bessel_k_auto(nu, z, ctl.quadrature);
    };
    const SeriesSum s = sum_alternating(term, ctl.series, "fermionic_massive_energy");
    const double scale = a / std::exp2(d) * multiplicity(per_dof, field.dof);
    return {s.value * scale, per_dof, Method::ExactSeries, s.first_omitted * scale, s.terms};
}

ForceResult fermionic_massive_force(const Geometry& geometry, const FieldSpec& field,
                                    bool per_dof, const NumericsControl& ctl) {
    require_massive(geometry, field, "fermionic_massive_force");
    require_statistics(field, Statistics::Fermionic, "fermionic_massive_force");
    ctl.validate();
    const double a = geometry.separation;
    const double d = geometry.dimension;
    const double m = field.mass;
    const double nu = 0.5 * (d + 1.0);

    // d/da [a (anm)^{-nu} K_nu(2anm)] = (anm)^{-nu} [(1 - nu) K_nu - (z/2)(K_{nu-1} + K_{nu+1})],
    // and with K_{nu+1} = K_{nu-1} + (2 nu / z) K_nu the bracket is -(d K_nu + z K_{nu-1}).
    const auto term = [&](int n) {
        const double z = 2.0 * a * n * m;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const double k_nu = specfun::bessel_k_auto(nu, z, ctl.quadrature);
        const double k_lower = specfun::bessel_k_auto(nu - 1.0, z, ctl.quadrature);
        return sign * std::pow(m / (pi * a * n), nu) * (d * k_nu + z * k_lower);
    };
    const SeriesSum s = sum_alternating(term, ctl.series, "fermionic_massive_force");
    const double scale = multiplicity(per_dof, field.dof) / std::exp2(d);
    return {s.value * scale, per_dof, Method::ExactSeries, s.first_omitted * scale, s.terms};
}

ForceResult fermionic_massive_force_asymptotic(const Geometry& geometry, const FieldSpec& field,
                                               bool per_dof) {
    require_massive(geometry, field, "fermionic_massive_force_asymptotic");
    require_statistics(field, Statistics::Fermionic, "fermionic_massive_force_asymptotic");
    const double a = geometry.separation;
    const double d = geometry.dimension;
    const double f = asymptotic_force_per_dof(a, field.mass, d) * multiplicity(per_dof, field.dof);
    return {f, per_dof, Method::Asymptotic,
            std::abs(f) * asymptotic_correction(a, field.mass, d, true), 1};
}

ForceResult bosonic_massive_force_asymptotic(const Geometry& geometry, const FieldSpec& field,
                                             bool per_dof) {
    require_massive(geometry, field, "bosonic_massive_force_asymptotic");
    require_statistics(field, Statistics::Bosonic, "bosonic_massive_force_asymptotic");
    const double a = geometry.separation;
    const double d = geometry.dimension;
    const double f = asymptotic_force_per_dof(a, field.mass, d) * multiplicity(per_dof, field.dof);
    return {f, per_dof, Method::Asymptotic,
            std::abs(f) * asymptotic_correction(a, field.mass, d, true), 1};
}

EnergyResult massive_energy_asymptotic(const Geometry& geometry, const FieldSpec& field,
                                       bool per_dof) {
    require_massive(geometry, field, "massive_energy_asymptotic");
    const double a = geometry.separation;
    const double d = geometry.dimension;
    const double m = field.mass;
    const double e = -std::pow(m, 0.5 * d) * std::exp(-2.0 * m * a) /
                     (2.0 * std::pow(4.0 * pi * a, 0.5 * d)) * multiplicity(per_dof, field.dof);
    return {e, per_dof, Method::Asymptotic, std::abs(e) * asymptotic_correction(a, m, d, false), 1};
}

EnergyResult fermionic_massless_energy(const Geometry& geometry, bool per_dof, int dof) {
    geometry.validate();
    if (dof < 1) throw DomainError("dof must be >= 1");
    const double a = geometry.separation;
    const double d = geometry.dimension;
    const double e = -massless_base(d) * massless_ratio(d) / (std::exp2(d + 1.0) * std::pow(a, d));
    return {e * multiplicity(per_dof, dof), per_dof, Method::MasslessClosedForm, 0.0, 0};
}

ForceResult fermionic_massless_force(const Geometry& geometry, bool per_dof, int dof) {
    geometry.validate();
    if (dof < 1) throw DomainError("dof must be >= 1");
    const double a = geometry.separation;
    const double d = geometry.dimension;
    const double f = -d * massless_base(d) * massless_ratio(d) /
                     (std::exp2(d + 1.0) * std::pow(a, d + 1.0));
    return {f * multiplicity(per_dof, dof), per_dof, Method::MasslessClosedForm, 0.0, 0};
}

EnergyResult bosonic_massless_energy(const Geometry& geometry, bool per_dof, int dof) {
    geometry.validate();
    if (dof < 1) throw DomainError("dof must be >= 1");
    const double a = geometry.separation;
    const double d = geometry.dimension;
    const double e = -massless_base(d) / (std::exp2(d + 1.0) * std::pow(a, d));
    return {e * multiplicity(per_dof, dof), per_dof, Method::MasslessClosedForm, 0.0, 0};
}

ForceResult bosonic_massless_force(const Geometry& geometry, bool per_dof, int dof) {
    geometry.validate();
    if (dof < 1) throw DomainError("dof must be >= 1");
    const double a = geometry.separation;
    const double d = geometry.dimension;
    const double f = -d * massless_base(d) / (std::exp2(d + 1.0) * std::pow(a, d + 1.0));
    return {f * multiplicity(per_dof, dof), per_dof, Method::MasslessClosedForm, 0.0, 0};
}

double massless_ratio(double dimension) {
    if (!(dimension >= 1.0) || !std::isfinite(dimension)) {
        throw DomainError("massless_ratio: dimension must be finite and >= 1");
    }
    return 1.0 - std::exp2(-dimension);
}

}  // namespace casimir
