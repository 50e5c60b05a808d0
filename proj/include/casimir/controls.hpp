#pragma once

namespace casimir {

/// Truncation control for the convergent series (theta, eta, Bessel sums).
struct SeriesControl {
    double rel_tol = 1e-10;
    int max_terms = 10000;

    void validate() const;
};

/// Refinement control for the adaptive Gauss-Kronrod integrator.
struct QuadratureControl {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_levels = 20;

    void validate() const;
};

/// Everything a series-of-integrals evaluation needs.
struct NumericsControl {
    SeriesControl series;
    QuadratureControl quadrature;

    void validate() const {
        series.validate();
        quadrature.validate();
    }
};

}  // namespace casimir
