#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "casimir/core.hpp"
#include "casimir/errors.hpp"
#include "casimir/oracle.hpp"

using namespace casimir;
using std::numbers::pi;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

struct Frozen {
    double a, m, d, energy, force;
};

// Per-dof energy and force from a 30-digit evaluation of the Bessel series
// (mpmath besselk; force from the term-wise derivative, cross-checked with
// mpmath numerical differentiation of the energy).
constexpr Frozen kFrozen[] = {
    {1.0, 2.0, 3.0, -0.00087923391282068795, -0.0051517982434801101},
    {1.0, 10.0, 3.0, -8.0164606311236429e-10, -1.7306898101375536e-8},
    {1.0, 1.0, 1.0, -0.021332595093098029, -0.054388295203658874},
    {1.0, 0.5, 2.0, -0.013751243237077419, -0.033734629730384069},
    {1.0, 5.0, 4.0, -4.7796375232390366e-6, -5.864915371694981e-5},
    {1.5, 1.0, 2.0, -0.0017420734232977889, -0.0049004036226319948},
    {1.0, 0.05, 3.0, -0.0059842062649532078, -0.017978393651827723},
};

// Independent massless closed forms via libstdc++ special functions.
double massless_force_reference(double a, double d, bool fermion) {
    const double nu = 0.5 * (d + 1.0);
    const double f = -d * std::tgamma(nu) * std::riemann_zeta(d + 1.0) / std::pow(4.0 * pi * a * a, nu);
    return fermion ? f * (1.0 - std::exp2(-d)) : f;
}

}  // namespace

TEST_CASE("mode_wavenumber") {
    CHECK(rel(mode_wavenumber(1, {1.0, 3.0}), pi / 2.0) < 1e-15);
    CHECK(rel(mode_wavenumber(2, {1.0, 3.0}), 3.0 * pi / 2.0) < 1e-15);
    CHECK(rel(mode_wavenumber(1, {2.0, 3.0}), pi / 4.0) < 1e-15);
    CHECK_THROWS_AS(mode_wavenumber(0, {1.0, 3.0}), DomainError);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(Geometry({0.0, 3.0}).validate(), DomainError);
    CHECK_THROWS_AS(Geometry({1.0, 0.5}).validate(), DomainError);
    CHECK_THROWS_AS(FieldSpec({Statistics::Fermionic, -1.0, 4}).validate(), DomainError);
    CHECK_THROWS_AS(FieldSpec({Statistics::Fermionic, 1.0, 0}).validate(), DomainError);
    CHECK_THROWS_AS(fermionic_massless_force({-1.0, 3.0}, true), DomainError);
}

TEST_CASE("fermionic massive energy and force match frozen high-precision values") {
    NumericsControl ctl;
    ctl.series.rel_tol = 1e-13;
    ctl.quadrature.rel_tol = 1e-12;
    for (const Frozen& f : kFrozen) {
        CAPTURE(f.a);
        CAPTURE(f.m);
        CAPTURE(f.d);
        const Geometry g{f.a, f.d};
        const EnergyResult e = fermionic_massive_energy(g, FieldSpec::fermion(f.m), true, ctl);
        const ForceResult F = fermionic_massive_force(g, FieldSpec::fermion(f.m), true, ctl);
        CHECK(rel(e.value, f.energy) < 1e-10);
        CHECK(rel(F.value, f.force) < 1e-10);
        CHECK(e.method == Method::ExactSeries);
        CHECK(e.terms_used >= 1);
        CHECK(e.error_estimate >= 0.0);
    }
}

TEST_CASE("fermionic massive energy: limits and scaling") {
    const Geometry g{1.0, 3.0};
    // ma = 10 against the leading large-ma energy, -m^{d/2} e^{-2ma} / (2 (4 pi a)^{d/2})
    const double e10 = fermionic_massive_energy(g, FieldSpec::fermion(10.0), true).value;
    const double leading = -std::pow(10.0, 1.5) * std::exp(-20.0) / (2.0 * std::pow(4.0 * pi, 1.5));
    CHECK(rel(leading, -7.32e-10) < 2e-3);
    CHECK(std::abs(e10 / leading - 1.0) < 0.25);

    // m -> 0 approaches the massless closed form
    NumericsControl ctl;
    const double massless = fermionic_massless_energy(g, true).value;
    const double small_m = fermionic_massive_energy(g, FieldSpec::fermion(0.05), true, ctl).value;
    CHECK(std::abs(small_m / massless - 1.0) < 0.01);

    // E(lambda a, m / lambda) = lambda^{-d} E(a, m)
    const double base = fermionic_massive_energy({1.0, 3.0}, FieldSpec::fermion(5.0), true).value;
    const double scaled = fermionic_massive_energy({2.0, 3.0}, FieldSpec::fermion(2.5), true).value;
    CHECK(rel(scaled, base / 8.0) < 1e-9);
}

TEST_CASE("fermionic massive energy: total multiplies by dof") {
    const Geometry g{1.0, 2.0};
    const FieldSpec f{Statistics::Fermionic, 1.0, 4};
    const EnergyResult per = fermionic_massive_energy(g, f, true);
    const EnergyResult total = fermionic_massive_energy(g, f, false);
    CHECK(total.value == doctest::Approx(4.0 * per.value).epsilon(1e-15));
    CHECK_FALSE(total.per_dof);
}

TEST_CASE("fermionic massive energy: errors") {
    CHECK_THROWS_AS(fermionic_massive_energy({1.0, 3.0}, FieldSpec::fermion(0.0), true), DomainError);
    CHECK_THROWS_AS(fermionic_massive_force({1.0, 3.0}, FieldSpec::fermion(0.0), true), DomainError);
    CHECK_THROWS_AS(fermionic_massive_energy({1.0, 3.0}, FieldSpec::boson(1.0), true), DomainError);
    NumericsControl capped;
    capped.series.max_terms = 5;
    CHECK_THROWS_AS(fermionic_massive_energy({1.0, 3.0}, FieldSpec::fermion(0.01), true, capped),
                    ConvergenceError);
}

TEST_CASE("alternating series truncation error is bounded by the first omitted term") {
    NumericsControl loose;
    loose.series.rel_tol = 1e-4;
    NumericsControl tight;
    tight.series.rel_tol = 1e-14;
    tight.quadrature.rel_tol = 1e-13;
    for (double m : {0.05, 0.3, 1.0}) {
        for (double d : {1.0, 2.0, 3.0}) {
            const Geometry g{1.0, d};
            const EnergyResult e = fermionic_massive_energy(g, FieldSpec::fermion(m), true, loose);
            const double exact = fermionic_massive_energy(g, FieldSpec::fermion(m), true, tight).value;
            CHECK(std::abs(e.value - exact) <= e.error_estimate * (1.0 + 1e-6) + 1e-14 * std::abs(exact));
            const ForceResult f = fermionic_massive_force(g, FieldSpec::fermion(m), true, loose);
            const double exact_f = fermionic_massive_force(g, FieldSpec::fermion(m), true, tight).value;
            CHECK(std::abs(f.value - exact_f) <= f.error_estimate * (1.0 + 1e-6) + 1e-14 * std::abs(exact_f));
        }
    }
}

TEST_CASE("fermionic massive force: asymptotic comparison and finite differences") {
    const Geometry g{1.0, 3.0};
    const double exact = fermionic_massive_force(g, FieldSpec::fermion(10.0), true).value;
    const double leading = -std::pow(10.0, 2.5) * std::exp(-20.0) / std::pow(4.0 * pi, 1.5);
    CHECK(rel(leading, -1.4632e-8) < 1e-4);
    CHECK(std::abs(exact / leading - 1.0) < 0.2);

    NumericsControl tight;
    tight.series.rel_tol = 1e-13;
    tight.quadrature.rel_tol = 1e-12;
    const FieldSpec f = FieldSpec::fermion(2.0);
    const double analytic = fermionic_massive_force(g, f, true, tight).value;
    const double numeric = oracle::finite_difference_force(g, f, true, 0.01, tight);
    CHECK(rel(numeric, analytic) < 1e-6);
}

TEST_CASE("massive asymptotic forces") {
    const double d3 = fermionic_massive_force_asymptotic({1.0, 3.0}, FieldSpec::fermion(10.0), true).value;
    CHECK(rel(d3, -1.4632e-8) < 1e-4);
    const double d2 = fermionic_massive_force_asymptotic({1.0, 2.0}, FieldSpec::fermion(10.0), true).value;
    CHECK(rel(d2, -100.0 * std::exp(-20.0) / (4.0 * pi)) < 1e-14);
    CHECK(rel(d2, -1.6402e-8) < 1e-4);

    const double b3 = bosonic_massive_force_asymptotic({1.0, 3.0}, FieldSpec::boson(10.0), true).value;
    CHECK(b3 == d3);
    const double b2 = bosonic_massive_force_asymptotic({1.0, 2.0}, FieldSpec::boson(10.0), true).value;
    CHECK(b2 == d2);

    const FieldSpec boson1 = FieldSpec::boson(3.0);
    CHECK(bosonic_massive_force_asymptotic({1.0, 3.0}, boson1, false).value ==
          bosonic_massive_force_asymptotic({1.0, 3.0}, boson1, true).value);
    CHECK(fermionic_massive_force_asymptotic({1.0, 3.0}, FieldSpec::fermion(3.0), false).value ==
          doctest::Approx(4.0 * fermionic_massive_force_asymptotic({1.0, 3.0}, FieldSpec::fermion(3.0), true).value)
              .epsilon(1e-15));

    CHECK_THROWS_AS(bosonic_massive_force_asymptotic({1.0, 3.0}, FieldSpec::fermion(1.0), true), DomainError);
    CHECK_THROWS_AS(bosonic_massive_force_asymptotic({1.0, 3.0}, FieldSpec::boson(0.0), true), DomainError);
    CHECK(fermionic_massive_force_asymptotic({1.0, 3.0}, FieldSpec::fermion(2.0), true).method ==
          Method::Asymptotic);
}

TEST_CASE("exact/asymptotic force ratio tends to one as ma grows") {
    for (double d : {2.0, 3.0}) {
        double previous = INFINITY;
        for (double ma : {2.0, 5.0, 10.0, 20.0}) {
            const Geometry g{1.0, d};
            const double exact = fermionic_massive_force(g, FieldSpec::fermion(ma), true).value;
            const ForceResult asym = fermionic_massive_force_asymptotic(g, FieldSpec::fermion(ma), true);
            const double gap = std::abs(exact / asym.value - 1.0);
            CHECK(gap < previous);
            // the reported estimate tracks the first correction, d (d + 6) / (16 ma)
            CHECK(std::abs(exact - asym.value) < 1.5 * asym.error_estimate);
            previous = gap;
        }
    }
}

TEST_CASE("massless closed forms") {
    const Geometry g3{1.0, 3.0};
    CHECK(rel(fermionic_massless_force(g3, true).value, -7.0 * pi * pi / 3840.0) < 1e-12);
    CHECK(rel(bosonic_massless_force(g3, true).value, -pi * pi / 480.0) < 1e-12);
    CHECK(rel(bosonic_massless_force(g3, true).value, -0.0205617) < 1e-5);

    const Geometry g2{1.0, 2.0};
    CHECK(rel(fermionic_massless_force(g2, true).value, massless_force_reference(1.0, 2.0, true)) < 1e-12);
    CHECK(rel(fermionic_massless_force(g2, true).value, -0.0358716) < 1e-5);
    CHECK(rel(bosonic_massless_force(g2, true).value, massless_force_reference(1.0, 2.0, false)) < 1e-12);
    CHECK(rel(bosonic_massless_force(g2, true).value, -0.0478288) < 1e-5);

    // E = -Gamma(nu) (1 - 2^{-d}) zeta(d+1) / (2^{d+1} pi^nu a^d)
    CHECK(rel(fermionic_massless_energy(g3, true).value, -0.875 * std::pow(pi, 4) / 90.0 / (16.0 * pi * pi)) < 1e-12);
    CHECK(rel(fermionic_massless_energy({1.0, 1.0}, true).value, -pi / 48.0) < 1e-12);
    CHECK(rel(bosonic_massless_energy({1.0, 1.0}, true).value, -pi / 24.0) < 1e-12);

    CHECK(rel(fermionic_massless_force({2.0, 3.0}, true).value,
              fermionic_massless_force(g3, true).value / 16.0) < 1e-12);
    CHECK(fermionic_massless_force(g3, false).value ==
          doctest::Approx(4.0 * fermionic_massless_force(g3, true).value).epsilon(1e-15));
    CHECK(fermionic_massless_force(g3, true).method == Method::MasslessClosedForm);
}

TEST_CASE("massless energy/force exponent relation and scaling") {
    for (double d : {1.0, 2.0, 3.0, 4.5, 7.0}) {
        for (double a : {0.1, 1.0, 10.0}) {
            const Geometry g{a, d};
            for (bool fermion : {true, false}) {
                const double E = fermion ? fermionic_massless_energy(g, true).value
                                         : bosonic_massless_energy(g, true).value;
                const double F = fermion ? fermionic_massless_force(g, true).value
                                         : bosonic_massless_force(g, true).value;
                CHECK(std::abs(F * a / (E * d) - 1.0) < 1e-12);
                const double F2 = fermion ? fermionic_massless_force({2.5 * a, d}, true).value
                                          : bosonic_massless_force({2.5 * a, d}, true).value;
                CHECK(rel(F2, F * std::pow(2.5, -(d + 1.0))) < 1e-12);
            }
        }
    }
}

TEST_CASE("massless ratio") {
    CHECK(massless_ratio(3.0) == 0.875);
    CHECK(massless_ratio(2.0) == 0.75);
    CHECK(massless_ratio(1.0) == 0.5);
    CHECK(massless_ratio(10.0) == 0.9990234375);
    CHECK_THROWS_AS(massless_ratio(0.5), DomainError);
    double previous = 0.0;
    for (int d = 1; d <= 40; ++d) {
        const double r = massless_ratio(d);
        CHECK(r > previous);
        CHECK(r < 1.0 + 1e-16);
        previous = r;
    }
    for (int d = 1; d <= 10; ++d) {
        for (double a : {0.1, 1.0, 10.0}) {
            const Geometry g{a, static_cast<double>(d)};
            const double ratio = fermionic_massless_force(g, true).value / bosonic_massless_force(g, true).value;
            CHECK(std::abs(ratio / massless_ratio(d) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("every force is attractive") {
    for (double d : {1.0, 2.0, 3.0, 4.0, 7.0}) {
        for (double a : {0.1, 1.0, 10.0}) {
            const Geometry g{a, d};
            CHECK(fermionic_massless_force(g, true).value < 0.0);
            CHECK(bosonic_massless_force(g, true).value < 0.0);
            for (double m : {0.5, 2.0, 20.0}) {
                CAPTURE(d);
                CAPTURE(a);
                CAPTURE(m);
                CHECK(fermionic_massive_force(g, FieldSpec::fermion(m), true).value < 0.0);
                CHECK(fermionic_massive_force_asymptotic(g, FieldSpec::fermion(m), true).value < 0.0);
                CHECK(bosonic_massive_force_asymptotic(g, FieldSpec::boson(m), true).value < 0.0);
                CHECK(fermionic_massive_energy(g, FieldSpec::fermion(m), true).value <= 0.0);
            }
        }
    }
}

TEST_CASE("real-valued dimension is accepted") {
    const Geometry g{1.0, 2.5};
    const double e = fermionic_massive_energy(g, FieldSpec::fermion(1.0), true).value;
    const double lo = fermionic_massive_energy({1.0, 2.0}, FieldSpec::fermion(1.0), true).value;
    const double hi = fermionic_massive_energy({1.0, 3.0}, FieldSpec::fermion(1.0), true).value;
    CHECK(e < 0.0);
    CHECK(((e - lo) * (e - hi) <= 0.0));
}
