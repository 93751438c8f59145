#pragma once

// Semiclassical phase-space treatment of a single radial channel
// (natural units hbar = 2m = 1, so p^2 is the kinetic energy):
//   Z(T)  = (4 pi T)^{-1/2} int e^{-T V(r)} dr       with T the inverse temperature
//   g(E)  = (1 / 2 pi) int dr / sqrt(E - V(r))        over the allowed region
//   N(E)  = (1 / pi)   int sqrt(E - V(r)) dr
// g is the inverse Laplace transform of Z and N(E) is the integral of g up to E.

#include <functional>

namespace efimov::semiclassical {

struct LangerChannel {
    int ell;              // partial wave, >= 0
    double s0;            // inverse-square strength, V_bare = -(s0^2 + 1/4) / r^2
    bool langer = true;   // false keeps ell(ell + 1) for comparison

    /// Throws DomainError for ell < 0 or a negative or non-finite s0.
    LangerChannel(int ell, double s0, bool langer = true);

    /// Coefficient C of V_ell = C / r^2.
    double strength() const;
};

/// [-(s0^2 + 1/4) + (ell + 1/2)^2] / r^2. Throws DomainError for r <= 0.
double langer_potential(const LangerChannel& chan, double r);

/// V(r) on [r_lo, r_hi]. r_lo = 0 is admitted so that singular potentials can
/// be flagged rather than silently cut; singular_strength records C when V ~ C / r^2
/// at the origin and is only consulted in that case.
struct RadialPotential {
    std::function<double(double)> V;
    double r_lo;
    double r_hi;
    double singular_strength = 0.0;

    /// Throws DomainError unless 0 <= r_lo < r_hi < inf.
    RadialPotential(std::function<double(double)> V, double r_lo, double r_hi, double singular_strength = 0.0);

    static RadialPotential channel(const LangerChannel& chan, double r_lo, double r_hi);
    static RadialPotential flat(double r_lo, double r_hi);
};

struct PartitionResult {
    double value = 0.0;
    bool divergent = false;   // attractive 1/r^2 reaching r = 0: value is +inf
};

/// Throws DomainError unless inverse_temperature > 0.
PartitionResult partition_function(const RadialPotential& pot, double inverse_temperature);

struct DensityResult {
    double value = 0.0;
    bool forbidden = false;   // E below V on the whole domain, value 0
};

/// Turning points are located by a scan of E - V and refined by root finding;
/// each allowed interval is integrated after r = mid - half cos(phi), which
/// cancels the inverse square root at both ends. Allowed pockets narrower
/// than the scan spacing (domain / 512, log-spaced when r_lo > 0) can be missed.
DensityResult density_of_states(const RadialPotential& pot, double E);

/// Semiclassical number of states below E. Throws DomainError when the count
/// diverges (attractive 1/r^2 down to r = 0).
double count_states(const RadialPotential& pot, double E);

/// N(E) for V0 = -s0^2 / r^2 on [r0, a]; at E = 0 this is (s0 / pi) ln(a / r0)
/// exactly and is evaluated in closed form. Throws DomainError unless
/// a >= r0 > 0 and E <= 0.
double count_states_semiclassical(double s0, double E, double r0, double a);

}  // namespace efimov::semiclassical
