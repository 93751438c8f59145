#include "efimov/bo3body.hpp"

#include "efimov/errors.hpp"
#include "efimov/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace efimov::bo3body {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// (e^y - 1 - y) / y^2 scaled by e^{-beta R}, i.e.
// [e^{-kappa R} - e^{-beta R} (1 + y)] / y^2 with y = (beta - kappa) R.
double scaled_phi2(double kappa, double R, double beta) {
    const double y = (beta - kappa) * R;
    if (std::abs(y) < 0.5) {
        double term = 0.5;
        double sum = term;
        for (int n = 3; n < 40; ++n) {
            term *= y / n;
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return std::exp(-beta * R) * sum;
    }
    return (std::exp(-kappa * R) - std::exp(-beta * R) * (1.0 + y)) / (y * y);
}

}  // namespace

MassConfig MassConfig::from_ratio(double mass_ratio) {
    if (!(mass_ratio > 0.0) || !std::isfinite(mass_ratio))
        throw DomainError("mass ratio must be positive and finite");
    return {mass_ratio, mass_ratio / 2.0, 2.0 * mass_ratio / (2.0 * mass_ratio + 1.0),
            mass_ratio / (mass_ratio + 1.0)};
}

std::string_view region_name(Region region) {
    switch (region) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::IV: return "IV";
    }
    return "?";
}

double exchange_term(double kappa, double R, double beta) {
    // = e^{-beta R} [1 + 2 beta R (e^y - 1 - y) / y^2]
    return std::exp(-beta * R) + 2.0 * beta * R * scaled_phi2(kappa, R, beta);
}

double adiabatic_residual(double xi, double R, double kappa0, double beta) {
    const double b = beta + kappa0;
    return b * b * exchange_term(kappa0 + xi, R, beta) - xi * (2.0 * b + xi);
}

Region classify_region(double R, double R0, double a) {
    if (R <= R0) return Region::I;
    if (R > 3.0 * a) return Region::IV;
    if (R >= a / 3.0) return Region::III;
    return Region::II;
}

BOPoint solve_kappa(double R, const twobody::DimerState& dimer, const twobody::YamaguchiPotential& pot) {
    const double kappa0 = dimer.kappa0;
    const double beta = pot.beta;
    if (!(R > 0.0)) throw DomainError("separation R must be positive");
    if (!(kappa0 >= 0.0)) throw DomainError("kappa0 must be non-negative");
    if (!(beta > kappa0)) throw DomainError("adiabatic equation requires beta > kappa0");

    const double b = beta + kappa0;
    // kappa is largest as R -> 0, where the exchange term tends to 1 and
    // (beta + kappa)^2 = 2 (beta + kappa0)^2.
    const double xi_max = (std::numbers::sqrt2 - 1.0) * b;
    const specfun::RealFunction g = [=](double log_xi) {
        return -adiabatic_residual(std::exp(log_xi), R, kappa0, beta);
    };

    double xi = 0.0;
    const double g_top = g(std::log(xi_max));
    if (!(g_top > 0.0)) {
        throw NoRoot("no attractive adiabatic root at R = " + std::to_string(R));
    }
    if (exchange_term(kappa0, R, beta) > 0.0) {
        // Walk down in decades until the residual changes sign.
        double hi = std::log(xi_max), f_hi = g_top;
        const double step = std::log(10.0);
        bool bracketed = false;
        for (int i = 0; i < 330; ++i) {
            const double lo = hi - step;
            const double f_lo = g(lo);
            if (f_lo <= 0.0) {
                xi = f_lo == 0.0 ? std::exp(lo)
                                 : std::exp(specfun::find_root(g, {lo, hi, f_lo, f_hi}, 1e-15));
                bracketed = true;
                break;
            }
            hi = lo;
            f_hi = f_lo;
        }
        // Otherwise the root lies below the smallest representable xi.
        if (!bracketed) xi = 0.0;
    }

    BOPoint p;
    p.R = R;
    p.xi = xi;
    p.kappa = kappa0 + xi;
    p.epsilon = -p.kappa * p.kappa;
    p.epsilon_relative = -xi * (2.0 * kappa0 + xi);
    p.region = classify_region(R, 1.0 / beta, dimer.scattering_length);
    return p;
}

std::vector<double> log_grid(double r_min, double r_max, int n) {
    if (!(r_min > 0.0) || !(r_max >= r_min) || n < 1) throw DomainError("invalid logarithmic grid");
    std::vector<double> grid(static_cast<std::size_t>(n));
    if (n == 1) {
        grid[0] = r_min;
        return grid;
    }
    const double lo = std::log(r_min), hi = std::log(r_max);
    for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * i / (n - 1));
    grid.back() = r_max;
    return grid;
}

BOCurve build_curve(const twobody::DimerState& dimer, const twobody::YamaguchiPotential& pot,
                    const MassConfig& masses, std::span<const double> R_grid, std::optional<double> R0) {
    if (R_grid.empty()) throw DomainError("R grid is empty");
    for (std::size_t i = 0; i < R_grid.size(); ++i) {
        if (!(R_grid[i] > 0.0)) throw DomainError("R grid must be positive");
        if (i > 0 && !(R_grid[i] > R_grid[i - 1])) throw DomainError("R grid must be strictly increasing");
    }
    const double cutoff = R0.value_or(1.0 / pot.beta);
    BOCurve curve{{}, dimer, pot, masses, cutoff};
    curve.points.reserve(R_grid.size());
    for (double R : R_grid) {
        BOPoint p;
        try {
            p = solve_kappa(R, dimer, pot);
        } catch (const NoRoot& e) {
            p.R = R;
            p.status = PointStatus::no_root;
            p.message = e.what();
            p.kappa = p.epsilon = p.epsilon_relative = p.xi = std::numeric_limits<double>::quiet_NaN();
        }
        p.region = classify_region(R, cutoff, dimer.scattering_length);
        curve.points.push_back(std::move(p));
    }
    return curve;
}

double yukawa_tail(double R, double a, const MassConfig& masses) {
    if (!(R > 0.0) || !(a > 0.0)) throw DomainError("Yukawa tail requires R > 0 and a > 0");
    return -(2.0 / masses.nu) * std::exp(-R / a) / (a * R);
}

double inverse_square_strength(const MassConfig& masses) {
    const double A = specfun::lambert_root();
    return A * A * (1.0 + 2.0 * masses.mass_ratio) / 4.0;
}

bool heavy_light_regime(const MassConfig& masses) { return masses.mass_ratio >= 10.0; }

double critical_mass_ratio() {
    const double A = specfun::lambert_root();
    return (1.0 / (A * A) - 1.0) / 2.0;
}

double efimov_s0(const MassConfig& masses) {
    const double excess = inverse_square_strength(masses) - 0.25;
    const double critical = critical_mass_ratio();
    if (!(excess > 0.0) || masses.mass_ratio <= critical) {
        throw SubcriticalMassRatio("mass ratio " + std::to_string(masses.mass_ratio) +
                                       " is at or below the critical value " + std::to_string(critical) +
                                       ": no Efimov states in this channel",
                                   critical);
    }
    return std::sqrt(excess);
}

}  // namespace efimov::bo3body
