#pragma once

// Born-Oppenheimer model of two heavy particles sharing a light one that
// interacts with each through the Yamaguchi separable potential. For fixed
// heavy-heavy separation R the light particle is bound with wavenumber
// kappa(R); epsilon(R) = -kappa(R)^2 is the adiabatic potential felt by
// the heavy pair.

#include "efimov/twobody.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace efimov::bo3body {

struct MassConfig {
    double mass_ratio;   // M / m, heavy over light
    double mu;           // M/m / 2
    double nu;           // 2(M/m) / (2(M/m) + 1)
    double nu_prime;     // (M/m) / ((M/m) + 1)

    /// Throws DomainError unless mass_ratio > 0.
    static MassConfig from_ratio(double mass_ratio);
};

/// Diagnostic labels for the shape of epsilon(R):
/// I short range (R <= R0), II inverse square, III crossover near R ~ a,
/// IV Yukawa tail.
enum class Region { I, II, III, IV };

std::string_view region_name(Region region);

enum class PointStatus { ok, no_root };

struct BOPoint {
    double R = 0.0;
    double kappa = 0.0;
    double epsilon = 0.0;            // -kappa^2
    double epsilon_relative = 0.0;   // epsilon + kappa0^2, measured from the dimer threshold
    double xi = 0.0;                 // kappa - kappa0
    Region region = Region::I;
    PointStatus status = PointStatus::ok;
    std::string message;             // set when status != ok
};

struct BOCurve {
    std::vector<BOPoint> points;   // strictly increasing R
    twobody::DimerState dimer;
    twobody::YamaguchiPotential potential;
    MassConfig masses;
    double R0;                     // region I boundary
};

/// Bracketed exchange term of the adiabatic equation,
///   2 beta (e^{-kappa R} - e^{-beta R}) / ((beta - kappa)^2 R) - (beta + kappa) e^{-beta R} / (beta - kappa),
/// evaluated through its series near the removable singularity kappa = beta.
double exchange_term(double kappa, double R, double beta);

/// Residual RHS - LHS of the adiabatic equation after eliminating lambda
/// through the dimer binding, written in xi = kappa - kappa0 and divided by
/// (beta + kappa0)^2 / (beta + kappa)^2 so that it stays well conditioned
/// for xi << kappa0:  beta_k0^2 h(kappa0 + xi) - xi (2 beta_k0 + xi).
double adiabatic_residual(double xi, double R, double kappa0, double beta);

/// Solves the adiabatic equation for kappa(R) > kappa0. Throws DomainError
/// unless R > 0 and beta > kappa0, NoRoot if the attractive branch is absent.
/// Region is labeled with the default R0 = 1/beta.
BOPoint solve_kappa(double R, const twobody::DimerState& dimer, const twobody::YamaguchiPotential& pot);

/// Region label for separation R, cutoff R0 and scattering length a (may be +inf).
Region classify_region(double R, double R0, double a);

/// Solves every grid point; failures are recorded per point.
/// Throws DomainError if the grid is empty, non-positive or not strictly increasing.
BOCurve build_curve(const twobody::DimerState& dimer, const twobody::YamaguchiPotential& pot,
                    const MassConfig& masses, std::span<const double> R_grid,
                    std::optional<double> R0 = std::nullopt);

/// Logarithmically spaced grid of n points from r_min to r_max inclusive.
std::vector<double> log_grid(double r_min, double r_max, int n);

/// Large-R asymptote -(2/nu) e^{-R/a} / (a R), measured from the dimer threshold.
double yukawa_tail(double R, double a, const MassConfig& masses);

/// Coefficient c of the effective -c/R^2 heavy-heavy potential, A^2 (1 + 2M/m) / 4.
double inverse_square_strength(const MassConfig& masses);

/// True when M/m >= 10, where the adiabatic treatment is quantitatively trustworthy.
bool heavy_light_regime(const MassConfig& masses);

/// Mass ratio at which inverse_square_strength reaches 1/4: (1/A^2 - 1)/2.
double critical_mass_ratio();

/// s0 = sqrt(c - 1/4). Throws SubcriticalMassRatio for M/m <= critical_mass_ratio().
double efimov_s0(const MassConfig& masses);

}  // namespace efimov::bo3body
