#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

namespace casimir::specfun {

double dirichlet_eta(double s, const SeriesControl& ctl) {
    ctl.validate();
    if (!(s > 0.0)) {
        throw DomainError("dirichlet_eta: requires s > 0, got s = " + std::to_string(s));
    }
    // Euler transform: eta(s) = sum_k 2^{-(k+1)} sum_{j<=k} (-1)^j C(k,j) (j+1)^{-s}.
    // weights[j] holds C(k,j) / 2^{k+1} for the current k.
    std::vector<double> weights{0.5};
    std::vector<double> terms{1.0};
    double sum = 0.0;
    int small_in_a_row = 0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        if (k > 0) {
            terms.push_back(std::pow(static_cast<double>(k + 1), -s));
            weights.push_back(0.0);
            for (int j = k; j > 0; --j) weights[j] = 0.5 * (weights[j] + weights[j - 1]);
            weights[0] *= 0.5;
        }
        double t = 0.0;
        for (int j = 0; j <= k; ++j) t += (j % 2 == 0 ? weights[j] : -weights[j]) * terms[j];
        sum += t;
        // Two consecutive small corrections guard against an accidental near-zero difference.
        small_in_a_row = std::abs(t) <= ctl.rel_tol * std::abs(sum) ? small_in_a_row + 1 : 0;
        if (small_in_a_row == 2) return sum;
    }
    throw ConvergenceError("dirichlet_eta: Euler-transformed series did not converge within "
                           "max_terms=" + std::to_string(ctl.max_terms) + " at s = " +
                           std::to_string(s) + "; raise max_terms");
}

double zeta(double s, const SeriesControl& ctl) {
    if (!(s > 1.0)) {
        throw DomainError("zeta: requires s > 1, got s = " + std::to_string(s));
    }
    // 1 - 2^{1-s}, without cancellation near s = 1
    const double factor = -std::expm1((1.0 - s) * std::numbers::ln2);
    return dirichlet_eta(s, ctl) / factor;
}

}  // namespace casimir::specfun
