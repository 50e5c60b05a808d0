#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

namespace casimir::specfun {

namespace {

// Below this argument both thetas are evaluated through the modular map
// nu_2(x) = x^{-1/2} nu_4(1/x), where the image series converges in a term or two.
constexpr double kModularThreshold = 0.05;

void check_argument(const char* name, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(name) + ": requires finite x > 0, got x = " +
                          std::to_string(x));
    }
}

[[noreturn]] void not_converged(const char* name, double x, const SeriesControl& ctl) {
    throw ConvergenceError(std::string(name) + ": series did not converge within max_terms=" +
                           std::to_string(ctl.max_terms) + " at x = " + std::to_string(x));
}

double theta2_direct(double x, const SeriesControl& ctl) {
    double sum = 0.0;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        const double h = n - 0.5;
        const double term = 2.0 * std::exp(-std::numbers::pi * h * h * x);
        sum += term;
        if (term <= ctl.rel_tol * sum) return sum;
    }
    not_converged("theta2", x, ctl);
}

double theta4_direct(double x, const SeriesControl& ctl) {
    double sum = 1.0;
    for (int n = 1; n <= ctl.max_terms; ++n) {
        const double term = 2.0 * std::exp(-std::numbers::pi * n * n * x);
        sum += (n % 2 == 0) ? term : -term;
        if (term <= ctl.rel_tol * std::abs(sum)) return sum;
    }
    not_converged("theta4", x, ctl);
}

}  // namespace

double theta2(double x, const SeriesControl& ctl) {
    check_argument("theta2", x);
    ctl.validate();
    if (x < kModularThreshold) return theta4_direct(1.0 / x, ctl) / std::sqrt(x);
    return theta2_direct(x, ctl);
}

double theta4(double x, const SeriesControl& ctl) {
    check_argument("theta4", x);
    ctl.validate();
    if (x < kModularThreshold) return theta2_direct(1.0 / x, ctl) / std::sqrt(x);
    return theta4_direct(x, ctl);
}

}  // namespace casimir::specfun
