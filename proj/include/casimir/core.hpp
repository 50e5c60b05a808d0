#pragma once

#include <string_view>

#include "casimir/controls.hpp"

// Casimir energies and forces between two parallel plates in d spatial
// dimensions. Natural units (hbar = c = 1): separation is a length (1/mass),
// energies are per unit (d-1)-dimensional plate hyperarea (mass^d) and
// forces are per unit hyperarea (mass^{d+1}). Negative force is attraction.
namespace casimir {

inline constexpr int kFermionDof = 4;
inline constexpr int kBosonDof = 1;

enum class Statistics { Fermionic, Bosonic };

enum class Method { ExactSeries, Asymptotic, MasslessClosedForm };

std::string_view to_string(Statistics s);
std::string_view to_string(Method m);

struct Geometry {
    double separation = 1.0;  // plate distance a > 0
    double dimension = 3.0;   // spatial dimension d >= 1; real values allowed

    void validate() const;
};

struct FieldSpec {
    Statistics statistics = Statistics::Fermionic;
    double mass = 0.0;
    int dof = kFermionDof;

    static FieldSpec fermion(double mass) { return {Statistics::Fermionic, mass, kFermionDof}; }
    static FieldSpec boson(double mass) { return {Statistics::Bosonic, mass, kBosonDof}; }

    void validate() const;
};

struct EnergyResult {
    double value = 0.0;
    bool per_dof = true;
    Method method = Method::ExactSeries;
    double error_estimate = 0.0;
    int terms_used = 0;
};

struct ForceResult {
    double value = 0.0;
    bool per_dof = true;
    Method method = Method::ExactSeries;
    double error_estimate = 0.0;
    int terms_used = 0;
};

/// k_n = (2n - 1) pi / (2a), n = 1, 2, ...: the MIT-bag normal wavenumbers.
double mode_wavenumber(int n, const Geometry& geometry);

/// Renormalized massive fermionic vacuum energy, summed as the Bessel series
///
///   E = (a / 2^d) (m^2/pi)^nu sum_{n>=1} (-1)^n K_nu(2anm) / (anm)^nu,  nu = (d+1)/2,
///
/// per degree of freedom (times field.dof when !per_dof). The series stops
/// once the next term is below ctl.series.rel_tol of the partial sum; the
/// first omitted term is the error estimate. Throws DomainError for m = 0
/// (use fermionic_massless_energy) and ConvergenceError when max_terms runs out.
EnergyResult fermionic_massive_energy(const Geometry& geometry, const FieldSpec& field,
                                      bool per_dof, const NumericsControl& ctl = {});

/// F = -dE/da of fermionic_massive_energy, differentiated term by term.
ForceResult fermionic_massive_force(const Geometry& geometry, const FieldSpec& field,
                                    bool per_dof, const NumericsControl& ctl = {});

/// Leading ma >> 1 force, -m^{d/2+1} e^{-2ma} / (4 pi a)^{d/2} per dof.
ForceResult fermionic_massive_force_asymptotic(const Geometry& geometry, const FieldSpec& field,
                                               bool per_dof);

/// Same expression for a massive bosonic field; per dof the two are identical.
ForceResult bosonic_massive_force_asymptotic(const Geometry& geometry, const FieldSpec& field,
                                             bool per_dof);

/// Leading ma >> 1 energy, -m^{d/2} e^{-2ma} / (2 (4 pi a)^{d/2}) per dof (either statistics).
EnergyResult massive_energy_asymptotic(const Geometry& geometry, const FieldSpec& field,
                                       bool per_dof);

/// -Gamma(nu) (1 - 2^{-d}) zeta(d+1) / (2^{d+1} pi^nu a^d) per dof.
EnergyResult fermionic_massless_energy(const Geometry& geometry, bool per_dof,
                                       int dof = kFermionDof);

/// -d Gamma(nu) (1 - 2^{-d}) zeta(d+1) / (4 pi a^2)^nu per dof.
ForceResult fermionic_massless_force(const Geometry& geometry, bool per_dof,
                                     int dof = kFermionDof);

/// -Gamma(nu) zeta(d+1) / (2^{d+1} pi^nu a^d) per dof, so that F = d E / a.
EnergyResult bosonic_massless_energy(const Geometry& geometry, bool per_dof,
                                     int dof = kBosonDof);

/// -d Gamma(nu) zeta(d+1) / (4 pi a^2)^nu per dof.
ForceResult bosonic_massless_force(const Geometry& geometry, bool per_dof,
                                   int dof = kBosonDof);

/// Massless fermion/boson force ratio per degree of freedom, 1 - 2^{-d}.
double massless_ratio(double dimension);

}  // namespace casimir
