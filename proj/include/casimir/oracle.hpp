#pragma once

#include <string>
#include <vector>

#include "casimir/controls.hpp"
#include "casimir/core.hpp"

// Brute-force cross-checks of every analytic step in the library. Each
// check computes the same quantity by a route that shares no closed form
// with the code it verifies.
namespace casimir::oracle {

struct OracleReport {
    std::string name;
    double reference_value = 0.0;
    double oracle_value = 0.0;
    double relative_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string note;  // set when the evaluation itself failed
};

/// Builds a report; passed is derived from residual and tolerance.
OracleReport make_report(std::string name, double reference, double oracle, double tolerance);

/// Per-dof renormalized massive fermionic energy without Bessel functions:
///
///   E = 2^{-d} a (m^2/pi)^nu * 1/2 sum_{n=1}^{n_max} (-1)^n I_n,
///   I_n = int_0^inf t^{-(d+3)/2} exp(-t - a^2 n^2 m^2 / t) dt,
///
/// each I_n by adaptive quadrature in u = ln t. Throws ConvergenceError when
/// the last included term still exceeds qctl.rel_tol of the sum.
double energy_via_quadrature(const Geometry& geometry, const FieldSpec& field, int n_max,
                             const QuadratureControl& qctl = {});

/// theta2(1/(a^2 y)) against a sqrt(y) theta4(a^2 y), both by direct summation.
OracleReport theta_identity_check(double a, double y, const SeriesControl& ctl = {});

/// Odd-n zeta sum and alternating sum by brute partial summation against
/// (1 - 2^{-(d+1)}) zeta(d+1) and -(1 - 2^{-d}) zeta(d+1); worst residual.
OracleReport eta_zeta_check(int d, const SeriesControl& ctl = {});

/// -dE/da by central differences with one Richardson level (h, h/2).
/// Massive fields use the exact series, m = 0 the closed forms.
double finite_difference_force(const Geometry& geometry, const FieldSpec& field, bool per_dof,
                               double step, const NumericsControl& ctl = {});

enum class Check { Theta, EtaZeta, Bessel, Energy, FiniteDifference };

/// All checks in their canonical order.
std::vector<Check> all_checks();
std::string_view to_string(Check c);
/// Parses "theta", "eta_zeta", "bessel", "energy", "force_fd"; throws DomainError otherwise.
Check parse_check(std::string_view name);

struct OracleControls {
    NumericsControl numerics;
    double tolerance_scale = 1.0;  // multiplies every check tolerance
};

/// Runs the selected checks on their fixed grids. Reports come back grouped
/// in selection order and in grid order within a group. Failed checks are
/// data (passed = false); convergence failures become failed reports.
std::vector<OracleReport> run_all(const std::vector<Check>& selection,
                                  const OracleControls& controls = {});

}  // namespace casimir::oracle
