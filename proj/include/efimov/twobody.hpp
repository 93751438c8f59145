#pragma once

// Separable two-body interaction V = -lambda |g><g| with the Yamaguchi form
// factor g(p) = 1 / (p^2 + beta^2), plus zero-range scattering quantities.
// Natural units hbar = 2m = 1 throughout: energies are inverse lengths squared.

#include <complex>

namespace efimov::twobody {

struct YamaguchiPotential {
    double lambda;   // coupling strength, > 0 (attractive)
    double beta;     // form-factor inverse range, > 0

    /// Throws DomainError unless lambda > 0 and beta > 0.
    YamaguchiPotential(double lambda, double beta);

    double form_factor_momentum(double p) const;   // g(p)
    double form_factor_position(double r) const;   // g(r) = sqrt(pi/2) e^{-beta r} / r
};

struct DimerState {
    double kappa0;              // bound-state wavenumber
    double binding_energy;      // -kappa0^2
    double scattering_length;   // 1/kappa0 (zero-range identification), +inf at threshold
    // Amplitude N of the normalized wave function
    //   psi(r) = N (e^{-kappa0 r} - e^{-beta r}) / ((beta - kappa0) r),
    // i.e. N = sqrt(kappa0 beta (kappa0 + beta) / (2 pi)). Zero at threshold.
    double norm_const;
};

struct LowEnergyParams {
    double a;    // scattering length; may be +-infinity
    double r0;   // effective range, > 0
};

struct FeshbachParams {
    double a_bg;       // background scattering length
    double B0;         // resonance position
    double delta_B;    // resonance width, nonzero
    double delta_mu;   // magnetic-moment difference of the two channels
};

/// The momentum integral  int g^2(p) / (kappa^2 + p^2) d^3p = pi^2 / (beta (beta + kappa)^2).
double binding_integral(double kappa, double beta);

/// Coupling at which a zero-energy bound state appears: beta^3 / pi^2.
double critical_coupling(double beta);

/// Solves lambda * binding_integral(kappa0, beta) = 1 for kappa0 >= 0.
/// Throws NoBoundState below the critical coupling.
DimerState binding_from_coupling(const YamaguchiPotential& pot);

/// Inverse of binding_from_coupling.
YamaguchiPotential coupling_from_binding(double kappa0, double beta);

/// Dimer state for a given kappa0 and beta, without going through lambda.
DimerState make_dimer(double kappa0, double beta);

/// Normalized s-wave bound state at radius r (int |psi|^2 4 pi r^2 dr = 1).
/// The beta = kappa0 case is evaluated through its analytic limit.
double bound_wavefunction(const DimerState& state, const YamaguchiPotential& pot, double r);

/// f0(k) = -1 / (1/a + i k).
std::complex<double> zero_range_amplitude(double k, double a);

/// k cot delta0 = -1/a + r0 k^2 / 2.
double effective_range_expansion(double k, const LowEnergyParams& params);

/// a(B) = a_bg (1 - delta_B / (B - B0)). At B == B0 returns the signed
/// infinity approached from B > B0.
double feshbach_scattering_length(double B, const FeshbachParams& params);

/// Closed-channel detuning delta_mu (B - B0).
double feshbach_detuning(double B, const FeshbachParams& params);

}  // namespace efimov::twobody
