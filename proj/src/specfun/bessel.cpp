#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/specfun.hpp"

namespace casimir::specfun {

namespace {

// Integrand of K_nu(z) e^{z} = int_0^inf exp(-z (cosh u - 1)) cosh(nu u) du, in logs.
double log_integrand(double nu, double z, double u) {
    const double s = std::sinh(0.5 * u);
    return -2.0 * z * s * s + nu * u + std::log1p(std::exp(-2.0 * nu * u)) - std::numbers::ln2;
}

// Relative size below which the integrand tail is ignored.
constexpr double kTailLog = -60.0;

}  // namespace

double bessel_k(double nu, double z, const QuadratureControl& ctl) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("bessel_k: requires finite z > 0, got z = " + std::to_string(z));
    }
    if (!(nu >= 0.0) || !std::isfinite(nu)) {
        throw DomainError("bessel_k: requires nu >= 0, got nu = " + std::to_string(nu));
    }
    ctl.validate();

    const double peak = std::asinh(nu / z);
    const double peak_log = log_integrand(nu, z, peak);

    // Bracket the point past the peak where the integrand has dropped by e^{kTailLog}.
    double inner = peak;
    double outer = peak + 1.0;
    while (log_integrand(nu, z, outer) - peak_log > kTailLog) {
        inner = outer;
        outer = peak + 2.0 * (outer - peak);
    }
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (inner + outer);
        (log_integrand(nu, z, mid) - peak_log > kTailLog ? inner : outer) = mid;
    }

    const auto scaled = [nu, z, peak_log](double u) {
        return std::exp(log_integrand(nu, z, u) - peak_log);
    };
    const QuadratureResult r = integrate(scaled, 0.0, outer, ctl, "bessel_k");
    return std::exp(peak_log - z) * r.value;
}

double bessel_k_half_integer(int half_order, double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("bessel_k_half_integer: requires finite z > 0, got z = " +
                          std::to_string(z));
    }
    if (half_order < 0) {
        throw DomainError("bessel_k_half_integer: half_order must be >= 0");
    }
    const int n = half_order;
    double coeff = 1.0;
    double sum = 1.0;
    for (int j = 0; j < n; ++j) {
        coeff *= static_cast<double>(n + j + 1) * (n - j) / ((j + 1) * 2.0 * z);
        sum += coeff;
    }
    return std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z) * sum;
}

double bessel_k_auto(double nu, double z, const QuadratureControl& ctl) {
    const double twice = 2.0 * nu;
    const double rounded = std::round(twice);
    if (twice == rounded && rounded >= 1.0 && static_cast<long long>(rounded) % 2 == 1) {
        return bessel_k_half_integer(static_cast<int>((rounded - 1.0) / 2.0), z);
    }
    return bessel_k(nu, z, ctl);
}

}  // namespace casimir::specfun
