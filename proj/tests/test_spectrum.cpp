#include "doctest.h"

#include "efimov/errors.hpp"
#include "efimov/specfun.hpp"
#include "efimov/spectrum.hpp"

#include <cmath>
#include <numbers>

using namespace efimov;
using namespace efimov::spectrum;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double s_bosons = 1.00624;

}  // namespace

TEST_CASE("problem validation") {
    CHECK_THROWS_AS(InverseSquareProblem(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(InverseSquareProblem(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(InverseSquareProblem(1.0, 2.0, 1.0), DomainError);
    CHECK(InverseSquareProblem::from_coupling(-(1.0 + 0.25), 1.0).s0 == doctest::Approx(1.0));
    CHECK(InverseSquareProblem::from_coupling(-0.1, 1.0).s0 == 0.0);
}

TEST_CASE("spectrum_bessel") {
    const InverseSquareProblem prob(s_bosons, 1.0);
    const auto r = spectrum_bessel(prob, 3);
    REQUIRE(r.n_found == 3);
    CHECK(r.method == SpectrumMethod::bessel_zeros);
    CHECK(r.energies[0] / r.energies[1] == doctest::Approx(515.0).epsilon(0.01));
    CHECK(r.kappas[0] / r.kappas[1] == doctest::Approx(22.694).epsilon(0.005));
    CHECK(r.kappas[0] == doctest::Approx(0.065375995120572958).epsilon(1e-11));
    for (double E : r.energies) CHECK(E < 0.0);

    SUBCASE("doubling r_c halves every kappa") {
        const auto r2 = spectrum_bessel(InverseSquareProblem(s_bosons, 2.0), 3);
        for (int n = 0; n < 3; ++n) {
            CHECK(r2.kappas[n] == doctest::Approx(r.kappas[n] / 2.0).epsilon(1e-14));
            CHECK(r2.energies[n] == doctest::Approx(r.energies[n] / 4.0).epsilon(1e-14));
        }
    }
    SUBCASE("compared with the leading-order formula") {
        // The leading form misses the constant phase correction arg Gamma(1+is) + gamma s,
        // a factor exp((arg Gamma(1+is) + gamma s)/s) = 1.3213 at s ~ 1.
        const auto a = spectrum_asymptotic(prob, 3);
        const double factor =
            std::exp((specfun::arg_gamma_one_plus_is(s_bosons) + specfun::euler_gamma * s_bosons) / s_bosons);
        CHECK(factor == doctest::Approx(1.3213).epsilon(1e-3));
        for (int n = 1; n < 3; ++n) CHECK(r.kappas[n] / a.kappas[n] == doctest::Approx(factor).epsilon(1e-6));
    }
    SUBCASE("ratio converges geometrically with n") {
        const auto r5 = spectrum_bessel(prob, 5);
        const double target = std::exp(pi / s_bosons);
        double prev = INFINITY;
        for (int n = 0; n + 1 < 5; ++n) {
            const double dev = std::abs(r5.kappas[n] / r5.kappas[n + 1] - target) / target;
            CHECK(dev < prev);
            prev = dev;
        }
    }
    SUBCASE("truncation flagged") {
        const auto deep = spectrum_bessel(InverseSquareProblem(0.1, 1.0), 60);
        CHECK(deep.truncated);
        CHECK(deep.n_found < 60);
    }
}

TEST_CASE("spectrum_shooting agrees with the Bessel zeros") {
    for (double s0 : {0.5, s_bosons, 1.7455}) {
        const InverseSquareProblem prob(s0, 1.0);
        const auto shoot = spectrum_shooting(prob, 3);
        const auto exact = spectrum_bessel(prob, 3);
        REQUIRE(shoot.n_found == 3);
        CHECK(shoot.method == SpectrumMethod::shooting);
        for (int n = 0; n < 3; ++n) {
            CAPTURE(s0);
            CAPTURE(n);
            CHECK(std::abs(shoot.kappas[n] / exact.kappas[n] - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("spectrum_shooting properties") {
    SUBCASE("no bound states for coupling above -1/4") {
        for (double lambda : {-0.25, -0.2, 0.0, 3.0}) {
            const auto r = spectrum_shooting(InverseSquareProblem::from_coupling(lambda, 1.0), 2);
            CHECK(r.n_found == 0);
            CHECK(r.kappas.empty());
        }
    }
    SUBCASE("n-th state has n-1 interior nodes") {
        const InverseSquareProblem prob(s_bosons, 1.0);
        const auto r = spectrum_shooting(prob, 3);
        for (int n = 0; n < 3; ++n) {
            // Just shallower than the eigenvalue the wall phase is below (n+1) pi.
            const double theta = shooting_phase(prob, r.kappas[n] * (1.0 + 1e-6));
            CHECK(static_cast<int>(std::floor(theta / pi)) == n);
            const double deeper = shooting_phase(prob, r.kappas[n] * (1.0 - 1e-6));
            CHECK(static_cast<int>(std::floor(deeper / pi)) == n + 1);
        }
    }
    SUBCASE("scale covariance") {
        const auto r1 = spectrum_shooting(InverseSquareProblem(1.7455, 1.0), 3);
        const auto r3 = spectrum_shooting(InverseSquareProblem(1.7455, 3.0), 3);
        for (int n = 0; n < 3; ++n) CHECK(r3.kappas[n] * 3.0 == doctest::Approx(r1.kappas[n]).epsilon(1e-10));
    }
    SUBCASE("strictly decreasing kappas") {
        const auto r = spectrum_shooting(InverseSquareProblem(2.5, 1.0), 5);
        REQUIRE(r.n_found == 5);
        for (int n = 0; n + 1 < 5; ++n) CHECK(r.kappas[n] > r.kappas[n + 1]);
    }
    CHECK_THROWS_AS(spectrum_shooting(InverseSquareProblem(1.0, 1.0), 0), DomainError);
}

TEST_CASE("spectrum_asymptotic") {
    const InverseSquareProblem prob(s_bosons, 1.0);
    const auto r = spectrum_asymptotic(prob, 4);
    CHECK(r.kappas[0] == doctest::Approx(0.04948037427743491).epsilon(1e-12));
    CHECK(2.0 * std::exp(-specfun::euler_gamma) == doctest::Approx(1.122918).epsilon(1e-6));
    for (int n = 0; n + 1 < 4; ++n)
        CHECK(r.kappas[n] / r.kappas[n + 1] == doctest::Approx(std::exp(pi / s_bosons)).epsilon(1e-13));
    CHECK_THROWS_AS(spectrum_asymptotic(InverseSquareProblem(0.0, 1.0), 1), DomainError);
}

TEST_CASE("scaling_ratio") {
    CHECK(1.0 / std::sqrt(scaling_ratio(s_bosons)) == doctest::Approx(22.694).epsilon(1e-4));
    CHECK(scaling_ratio(1e9) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(scaling_ratio(pi / std::log(2.0)) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(scaling_ratio(0.0), DomainError);
}

TEST_CASE("state counts") {
    const double period = std::exp(pi / s_bosons);
    CHECK(count_states_formula(s_bosons, period, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(count_states_formula(s_bosons, std::pow(22.694, 3), 1.0) == doctest::Approx(3.0).epsilon(1e-4));
    CHECK(count_states_formula(s_bosons, 5.0, 5.0) == 0.0);
    CHECK(count_states_formula(s_bosons, -50.0, 1.0) == count_states_formula(s_bosons, 50.0, 1.0));
    CHECK_THROWS_AS(count_states_formula(s_bosons, 0.5, 1.0), DomainError);

    CHECK(count_states_direct(InverseSquareProblem(s_bosons, 1.0, period)) == 1);
    CHECK(count_states_direct(InverseSquareProblem(s_bosons, 1.0, 1.01)) == 0);
    const int n6 = count_states_direct(InverseSquareProblem(s_bosons, 1.0, 1e6));
    CHECK(n6 == 4);
    CHECK(std::abs(n6 - s_bosons / pi * std::log(1e6)) <= 1.0);
    for (double ratio : {1e2, 1e3, 1e4, 1e6}) {
        const int direct = count_states_direct(InverseSquareProblem(s_bosons, 1.0, ratio));
        CHECK(std::abs(direct - std::lround(count_states_formula(s_bosons, ratio, 1.0))) <= 1);
    }
    CHECK_THROWS_AS(count_states_direct(InverseSquareProblem(s_bosons, 1.0)), DomainError);

    SUBCASE("direct count matches the number of box eigenvalues") {
        // Independent check: eigenvalues of the doubly walled problem are the
        // shooting states with the outer wall at r_outer; count those with E < 0.
        const InverseSquareProblem box(1.7455, 1.0, 500.0);
        const double theta_threshold = shooting_phase(box, 1e-12, box.r_outer);
        CHECK(count_states_direct(box) == static_cast<int>(std::floor(theta_threshold / pi)));
    }
}

TEST_CASE("thomas_scaling_check") {
    const InverseSquareProblem prob(s_bosons, 1.0);
    CHECK(thomas_scaling_check(prob, 2.0).ratio == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(thomas_scaling_check(prob, 1.0).ratio == doctest::Approx(1.0).epsilon(1e-14));
    const auto r10 = thomas_scaling_check(prob, 10.0);
    CHECK(r10.ratio == doctest::Approx(100.0).epsilon(1e-4));
    CHECK(r10.expected == doctest::Approx(100.0));
    CHECK(r10.e1_scaled < r10.e1_reference);
    CHECK_THROWS_AS(thomas_scaling_check(prob, 0.0), DomainError);
}
