#include "doctest.h"

#include "efimov/bo3body.hpp"
#include "efimov/errors.hpp"
#include "efimov/specfun.hpp"
#include "efimov/twobody.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace efimov;
using namespace efimov::bo3body;
using efimov::twobody::coupling_from_binding;
using efimov::twobody::make_dimer;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double A = 0.5671432904097838730;

// The adiabatic equation before the momentum integrals are done:
// lambda [ int g^2/(p^2+k^2) d^3p + int g^2 e^{ip.R}/(p^2+k^2) d^3p ] = 1.
double momentum_space_lhs(double kappa, double R, double kappa0, double beta) {
    const double lambda = coupling_from_binding(kappa0, beta).lambda;
    const auto direct = specfun::integrate_adaptive(
        [=](double p) {
            const double g = 1.0 / (p * p + beta * beta);
            return 4.0 * pi * p * p * g * g / (p * p + kappa * kappa);
        },
        0.0, INFINITY, 0.0, 1e-14);
    // Angular integral of e^{ip.R} gives 4 pi sin(pR) / (pR). The tail beyond
    // p_max is bounded by 4 pi / (R p_max^5) / 4.
    const double p_max = 400.0;
    const auto exchange = specfun::integrate_adaptive(
        [=](double p) {
            const double g = 1.0 / (p * p + beta * beta);
            return 4.0 * pi * p * std::sin(p * R) / R * g * g / (p * p + kappa * kappa);
        },
        0.0, p_max, 1e-15, 0.0, 20000);
    return lambda * (direct.value + exchange.value);
}

// Naive transcription of the closed-form equation, RHS - LHS.
double closed_form_residual(double kappa, double R, double kappa0, double beta) {
    const double q = (beta + kappa0) / (beta + kappa);
    const double bracket = 2.0 * beta / ((beta - kappa) * (beta - kappa)) *
                               (std::exp(-kappa * R) - std::exp(-beta * R)) / R -
                           (beta + kappa) / (beta - kappa) * std::exp(-beta * R);
    return q * q * bracket - (1.0 - q * q);
}

}  // namespace

TEST_CASE("closed form agrees with the momentum-space equation") {
    for (double kappa0 : {0.0, 0.2}) {
        for (double R : {0.3, 0.7, 2.0}) {
            const double beta = 3.0;
            const auto p = solve_kappa(R, make_dimer(kappa0, beta), coupling_from_binding(kappa0, beta));
            CAPTURE(kappa0);
            CAPTURE(R);
            CHECK(momentum_space_lhs(p.kappa, R, kappa0, beta) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("exchange term near the removable singularity") {
    const double beta = 5.0, R = 0.8;
    for (double rel : {-0.3, -0.12, -1e-2, 1e-2, 0.12, 0.3}) {
        const double kappa = beta * (1.0 + rel);
        const double naive = 2.0 * beta / ((beta - kappa) * (beta - kappa)) *
                                 (std::exp(-kappa * R) - std::exp(-beta * R)) / R -
                             (beta + kappa) / (beta - kappa) * std::exp(-beta * R);
        CHECK(exchange_term(kappa, R, beta) == doctest::Approx(naive).epsilon(1e-10));
    }
    const double at = exchange_term(beta, R, beta);
    CHECK(at == doctest::Approx(std::exp(-beta * R) * (1.0 + beta * R)).epsilon(1e-14));
    CHECK(exchange_term(beta * (1 + 1e-9), R, beta) == doctest::Approx(at).epsilon(1e-8));
    CHECK(exchange_term(beta * (1 - 1e-9), R, beta) == doctest::Approx(at).epsilon(1e-8));
}

TEST_CASE("solve_kappa: inverse-square regime") {
    const double beta = 1e3;
    const auto dimer = make_dimer(0.0, beta);
    const auto pot = coupling_from_binding(0.0, beta);

    const auto p = solve_kappa(1.0, dimer, pot);
    CHECK(p.kappa * p.R == doctest::Approx(0.5671).epsilon(1e-3));
    CHECK(p.xi == p.kappa);
    CHECK(p.epsilon == doctest::Approx(-p.kappa * p.kappa));
    CHECK(p.region == Region::II);

    SUBCASE("plateau approaches A with finite-range corrections of order 1/(beta R)") {
        double prev = INFINITY;
        for (double beta_r : {1e2, 1e3, 1e4, 1e5, 1e6}) {
            const auto q = solve_kappa(beta_r / beta, dimer, pot);
            const double dev = std::abs(q.xi * q.R - A) / A;
            CAPTURE(beta_r);
            CHECK(dev < 1.0 / beta_r);
            CHECK(dev < prev);
            if (beta_r >= 1e3) CHECK(dev < 1e-3);
            prev = dev;
        }
    }
    SUBCASE("kappa0 -> 0 approaches -A^2/R^2 monotonically") {
        const double beta_big = 1e6, R = 1.0;
        double prev = INFINITY;
        for (double k0 : {1e-2, 1e-3, 1e-4}) {
            const auto q = solve_kappa(R, make_dimer(k0, beta_big), coupling_from_binding(k0, beta_big));
            const double err = std::abs(q.epsilon + A * A / (R * R));
            CHECK(err < prev);
            prev = err;
        }
        CHECK(prev < 1e-3);
    }
}

TEST_CASE("solve_kappa: residual, ordering and large-R limit") {
    const double beta = 1e3, kappa0 = 0.01;
    const auto dimer = make_dimer(kappa0, beta);
    const auto pot = coupling_from_binding(kappa0, beta);

    SUBCASE("residual") {
        for (double R : log_grid(1e-3, 1e4, 40)) {
            const auto q = solve_kappa(R, dimer, pot);
            const double b = beta + kappa0;
            const double scale = q.xi * (2.0 * b + q.xi) + b * b * exchange_term(q.kappa, R, beta);
            if (scale > 0.0) CHECK(std::abs(adiabatic_residual(q.xi, R, kappa0, beta)) / scale < 1e-10);
            if (q.xi > 1e-5 * beta) {
                CHECK(std::abs(closed_form_residual(q.kappa, R, kappa0, beta)) < 1e-10);
            }
        }
    }
    SUBCASE("epsilon increases with R toward the dimer threshold") {
        double prev = -INFINITY, prev_rel = -INFINITY;
        for (double R : log_grid(1e-3, 5e3, 60)) {
            const auto q = solve_kappa(R, dimer, pot);
            // Beyond R ~ 40 a the shift drops below one ulp of kappa0^2, so
            // strict growth is checked on the threshold-relative value.
            CHECK(q.epsilon >= prev);
            CHECK(q.epsilon_relative > prev_rel);
            prev_rel = q.epsilon_relative;
            CHECK(q.epsilon <= -kappa0 * kappa0);
            CHECK(q.kappa >= kappa0);
            CHECK(q.xi >= 0.0);
            prev = q.epsilon;
        }
    }
    SUBCASE("R -> infinity reproduces the dimer") {
        const auto q = solve_kappa(1e6, dimer, pot);
        CHECK(q.kappa == doctest::Approx(kappa0).epsilon(1e-6));
        CHECK(q.epsilon == doctest::Approx(-kappa0 * kappa0).epsilon(1e-6));
        const auto far = solve_kappa(1e3 / kappa0, dimer, pot);
        CHECK(far.xi == 0.0);
        CHECK(far.kappa == kappa0);
    }
    SUBCASE("Yukawa tail") {
        const auto masses = MassConfig::from_ratio(1e6);
        for (double R : {10.0 / kappa0, 20.0 / kappa0}) {
            const auto q = solve_kappa(R, dimer, pot);
            const double ratio = q.epsilon_relative / yukawa_tail(R, 1.0 / kappa0, masses);
            CAPTURE(R);
            CHECK(std::abs(ratio - 1.0) < 0.1);
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(solve_kappa(0.0, dimer, pot), DomainError);
        CHECK_THROWS_AS(solve_kappa(1.0, make_dimer(2.0, 1.0), coupling_from_binding(2.0, 1.0)), DomainError);
    }
}

TEST_CASE("build_curve") {
    const auto masses = MassConfig::from_ratio(20.0);

    SUBCASE("resonant limit is inverse square beyond R0") {
        const double beta = 1e3;
        const auto grid = log_grid(1e-4, 1e4, 50);
        const auto curve = build_curve(make_dimer(0.0, beta), coupling_from_binding(0.0, beta), masses, grid);
        CHECK(curve.R0 == doctest::Approx(1e-3));
        for (const auto& p : curve.points) {
            CHECK(p.status == PointStatus::ok);
            CHECK(p.region == (p.R <= curve.R0 ? Region::I : Region::II));
        }
    }
    SUBCASE("single point") {
        const std::vector<double> grid{0.5};
        const auto curve = build_curve(make_dimer(0.0, 10.0), coupling_from_binding(0.0, 10.0), masses, grid);
        REQUIRE(curve.points.size() == 1);
        CHECK(curve.points[0].R == 0.5);
    }
    SUBCASE("finite scattering length shows regions I through IV in order") {
        const double beta = 1e3, kappa0 = 0.01;
        const auto grid = log_grid(1e-4, 1e4, 81);
        const auto curve =
            build_curve(make_dimer(kappa0, beta), coupling_from_binding(kappa0, beta), masses, grid);
        int prev = 0;
        std::vector<bool> seen(4, false);
        for (const auto& p : curve.points) {
            const int r = static_cast<int>(p.region);
            CHECK(r >= prev);
            prev = r;
            seen[static_cast<std::size_t>(r)] = true;
        }
        CHECK(seen == std::vector<bool>{true, true, true, true});
    }
    SUBCASE("custom R0") {
        const std::vector<double> grid{0.5, 1.0, 2.0};
        const auto curve =
            build_curve(make_dimer(0.0, 10.0), coupling_from_binding(0.0, 10.0), masses, grid, 1.0);
        CHECK(curve.points[0].region == Region::I);
        CHECK(curve.points[1].region == Region::I);
        CHECK(curve.points[2].region == Region::II);
    }
    SUBCASE("grid validation") {
        const std::vector<double> bad{1.0, 0.5};
        const std::vector<double> empty;
        const auto dimer = make_dimer(0.0, 10.0);
        const auto pot = coupling_from_binding(0.0, 10.0);
        CHECK_THROWS_AS(build_curve(dimer, pot, masses, bad), DomainError);
        CHECK_THROWS_AS(build_curve(dimer, pot, masses, empty), DomainError);
    }
}

TEST_CASE("yukawa_tail") {
    const auto unit = MassConfig{1.0, 0.5, 1.0, 0.5};
    CHECK(yukawa_tail(1.0, 1.0, unit) == doctest::Approx(-2.0 * std::exp(-1.0)));
    CHECK(yukawa_tail(1.0, 1.0, unit) == doctest::Approx(-0.7358).epsilon(1e-4));
    for (double R : {0.3, 2.0, 7.0}) {
        CHECK(yukawa_tail(2 * R, 1.5, unit) / yukawa_tail(R, 1.5, unit) ==
              doctest::Approx(std::exp(-R / 1.5) / 2.0));
    }
    CHECK_THROWS_AS(yukawa_tail(1.0, -1.0, unit), DomainError);
}

TEST_CASE("mass configuration") {
    const auto m = MassConfig::from_ratio(20.0);
    CHECK(m.mu == 10.0);
    CHECK(m.nu == doctest::Approx(40.0 / 41.0));
    CHECK(m.nu_prime == doctest::Approx(20.0 / 21.0));
    CHECK(m.nu > 0.0);
    CHECK(m.nu < 1.0);
    CHECK_THROWS_AS(MassConfig::from_ratio(0.0), DomainError);
    CHECK(heavy_light_regime(m));
    CHECK_FALSE(heavy_light_regime(MassConfig::from_ratio(1.0)));
}

TEST_CASE("inverse-square strength and s0") {
    CHECK(inverse_square_strength(MassConfig::from_ratio(20.0)) ==
          doctest::Approx(A * A * 41.0 / 4.0).epsilon(1e-14));
    CHECK(inverse_square_strength(MassConfig::from_ratio(20.0)) == doctest::Approx(3.2969).epsilon(1e-4));
    CHECK(inverse_square_strength(MassConfig::from_ratio(1e-9)) == doctest::Approx(A * A / 4.0).epsilon(1e-8));
    CHECK(inverse_square_strength(MassConfig::from_ratio(1e-9)) == doctest::Approx(0.0804).epsilon(1e-3));

    const double s20 = efimov_s0(MassConfig::from_ratio(20.0));
    CHECK(s20 == doctest::Approx(1.745545186047205594).epsilon(1e-13));
    CHECK(std::exp(pi / s20) == doctest::Approx(6.05).epsilon(1e-3));

    CHECK(critical_mass_ratio() == doctest::Approx(1.054477381789968).epsilon(1e-13));
    CHECK_THROWS_AS(efimov_s0(MassConfig::from_ratio(1.0)), SubcriticalMassRatio);
    CHECK_THROWS_AS(efimov_s0(MassConfig::from_ratio(critical_mass_ratio())), SubcriticalMassRatio);
    try {
        efimov_s0(MassConfig::from_ratio(0.5));
    } catch (const SubcriticalMassRatio& e) {
        CHECK(e.critical_ratio() == doctest::Approx(1.0545).epsilon(1e-4));
    }
    CHECK(efimov_s0(MassConfig::from_ratio(critical_mass_ratio() * (1 + 1e-10))) < 1e-4);

    double prev_c = 0.0, prev_s = 0.0;
    for (double M = 1.1; M < 200.0; M *= 1.2) {
        const auto m = MassConfig::from_ratio(M);
        const double c = inverse_square_strength(m);
        const double s = efimov_s0(m);
        CHECK(c > prev_c);
        CHECK(s > prev_s);
        // Linear in M with slope A^2 / 2.
        CHECK((c - A * A / 4.0) / M == doctest::Approx(A * A / 2.0).epsilon(1e-12));
        prev_c = c;
        prev_s = s;
    }
}
