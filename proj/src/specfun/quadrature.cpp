#include "casimir/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

// 15-point Kronrod abscissae (positive half) with the embedded 7-point Gauss
// rule on the odd positions. Values from QUADPACK's qk15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467768423647,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double kronrod;
    double gauss;
};

Panel gauss_kronrod(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    return {kronrod * half, gauss * half};
}

struct Refiner {
    const std::function<double(double)>& f;
    double tol_density;  // allowed error per unit length
    int max_levels;
    const char* what;
    int intervals = 0;
    double error = 0.0;

    double refine(double lo, double hi, const Panel& p, int level) {
        const double err = std::abs(p.kronrod - p.gauss);
        if (err <= tol_density * (hi - lo) || !std::isfinite(err)) {
            if (!std::isfinite(p.kronrod)) {
                throw ConvergenceError(std::string(what) + ": non-finite integrand");
            }
            ++intervals;
            error += err;
            return p.kronrod;
        }
        if (level >= max_levels) {
            throw ConvergenceError(std::string(what) + ": adaptive quadrature did not reach "
                                   "tolerance within max_levels=" + std::to_string(max_levels) +
                                   "; raise the quadrature refinement cap or loosen rel_tol");
        }
        const double mid = 0.5 * (lo + hi);
        const Panel left = gauss_kronrod(f, lo, mid);
        const Panel right = gauss_kronrod(f, mid, hi);
        return refine(lo, mid, left, level + 1) + refine(mid, hi, right, level + 1);
    }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureControl& ctl, const char* what) {
    ctl.validate();
    if (!(hi > lo)) {
        throw DomainError(std::string(what) + ": empty integration interval");
    }
    constexpr int kInitialPanels = 8;
    const double width = (hi - lo) / kInitialPanels;
    std::array<Panel, kInitialPanels> panels{};
    double estimate = 0.0;
    for (int i = 0; i < kInitialPanels; ++i) {
        const double a = lo + i * width;
        const double b = (i + 1 == kInitialPanels) ? hi : a + width;
        panels[i] = gauss_kronrod(f, a, b);
        estimate += panels[i].kronrod;
    }

    const double tol = std::max(ctl.rel_tol * std::abs(estimate), ctl.abs_tol);
    Refiner refiner{f, tol / (hi - lo), ctl.max_levels, what};
    double value = 0.0;
    for (int i = 0; i < kInitialPanels; ++i) {
        const double a = lo + i * width;
        const double b = (i + 1 == kInitialPanels) ? hi : a + width;
        value += refiner.refine(a, b, panels[i], 0);
    }
    return {value, refiner.error, refiner.intervals};
}

}  // namespace casimir
