#include "efimov/twobody.hpp"

#include "efimov/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace efimov::twobody {

namespace {

constexpr double pi = std::numbers::pi;
constexpr long double pi_l = std::numbers::pi_v<long double>;

// Below this relative gap between beta and kappa0 the wave function is
// evaluated through its beta -> kappa0 limit.
constexpr double degenerate_gap = 1e-8;

}  // namespace

YamaguchiPotential::YamaguchiPotential(double lambda_, double beta_) : lambda(lambda_), beta(beta_) {
    if (!(lambda > 0.0)) throw DomainError("Yamaguchi coupling lambda must be positive");
    if (!(beta > 0.0)) throw DomainError("Yamaguchi range parameter beta must be positive");
}

double YamaguchiPotential::form_factor_momentum(double p) const { return 1.0 / (p * p + beta * beta); }

double YamaguchiPotential::form_factor_position(double r) const {
    return std::sqrt(pi / 2.0) * std::exp(-beta * r) / r;
}

double binding_integral(double kappa, double beta) {
    return pi * pi / (beta * (beta + kappa) * (beta + kappa));
}

double critical_coupling(double beta) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    return beta * beta * beta / (pi * pi);
}

DimerState make_dimer(double kappa0, double beta) {
    if (!(kappa0 >= 0.0)) throw DomainError("kappa0 must be non-negative");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    DimerState d{};
    d.kappa0 = kappa0;
    d.binding_energy = -kappa0 * kappa0;
    d.scattering_length = kappa0 > 0.0 ? 1.0 / kappa0 : std::numeric_limits<double>::infinity();
    d.norm_const = std::sqrt(kappa0 * beta * (kappa0 + beta) / (2.0 * pi));
    return d;
}

DimerState binding_from_coupling(const YamaguchiPotential& pot) {
    // lambda pi^2 / (beta (beta + kappa0)^2) = 1, inverted in extended
    // precision so that kappa0 << beta survives the subtraction.
    const long double lambda = pot.lambda;
    const long double beta = pot.beta;
    const long double sum = pi_l * std::sqrt(lambda / beta);
    long double kappa0 = sum - beta;
    // lambda carries one rounding of a double; within that resolution the
    // coupling is exactly critical.
    const long double resolution = 2.0L * std::numeric_limits<double>::epsilon() * beta;
    if (std::abs(kappa0) <= resolution) kappa0 = 0.0L;
    if (kappa0 < 0.0L) {
        throw NoBoundState("coupling " + std::to_string(pot.lambda) + " is below the critical value " +
                           std::to_string(critical_coupling(pot.beta)) + ": no bound state");
    }
    return make_dimer(static_cast<double>(kappa0), pot.beta);
}

YamaguchiPotential coupling_from_binding(double kappa0, double beta) {
    if (!(kappa0 >= 0.0)) throw DomainError("kappa0 must be non-negative");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    const long double b = beta;
    const long double s = b + static_cast<long double>(kappa0);
    return {static_cast<double>(b * s * s / (pi_l * pi_l)), beta};
}

double bound_wavefunction(const DimerState& state, const YamaguchiPotential& pot, double r) {
    if (!(r > 0.0)) throw DomainError("wave function requires r > 0");
    if (!(state.kappa0 > 0.0)) throw DomainError("wave function requires a bound state (kappa0 > 0)");
    const double kappa = state.kappa0;
    const double gap = pot.beta - kappa;
    // (e^{-kappa r} - e^{-beta r}) / ((beta - kappa) r) = e^{-kappa r} (1 - e^{-gap r}) / (gap r)
    double shape;
    if (std::abs(gap) < degenerate_gap * pot.beta) {
        shape = std::exp(-kappa * r);
    } else {
        const double y = gap * r;
        shape = std::exp(-kappa * r) * (-std::expm1(-y) / y);
    }
    return state.norm_const * shape;
}

std::complex<double> zero_range_amplitude(double k, double a) {
    if (!(k >= 0.0)) throw DomainError("wavenumber must be non-negative");
    return -1.0 / std::complex<double>(1.0 / a, k);
}

double effective_range_expansion(double k, const LowEnergyParams& params) {
    return -1.0 / params.a + 0.5 * params.r0 * k * k;
}

double feshbach_scattering_length(double B, const FeshbachParams& params) {
    if (params.delta_B == 0.0) throw DomainError("Feshbach width delta_B must be nonzero");
    const double detuning = B - params.B0;
    if (detuning == 0.0) {
        return -std::copysign(std::numeric_limits<double>::infinity(), params.a_bg * params.delta_B);
    }
    return params.a_bg * (1.0 - params.delta_B / detuning);
}

double feshbach_detuning(double B, const FeshbachParams& params) { return params.delta_mu * (B - params.B0); }

}  // namespace efimov::twobody
