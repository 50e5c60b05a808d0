#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

namespace casimir::specfun {

double gamma(double x) {
    if (std::isnan(x)) return x;
    if (x <= 0.0 && x == std::floor(x)) {
        throw DomainError("gamma: pole at non-positive integer x = " + std::to_string(x));
    }
    if (x < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * std::tgamma(1.0 - x));
    }
    return std::tgamma(x);
}

}  // namespace casimir::specfun
