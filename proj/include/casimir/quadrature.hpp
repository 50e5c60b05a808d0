#pragma once

#include <functional>

#include "casimir/controls.hpp"

namespace casimir {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

/// Adaptive 7/15-point Gauss-Kronrod integration of f over [lo, hi].
///
/// The interval is bisected recursively; a panel is accepted once its
/// Kronrod/Gauss discrepancy falls below its width-proportional share of
/// max(rel_tol * |I|, abs_tol). Throws ConvergenceError (prefixed by
/// `what`) when a panel is still unresolved after ctl.max_levels bisections.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureControl& ctl, const char* what = "quadrature");

}  // namespace casimir
