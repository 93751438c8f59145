#pragma once

// Bound states of u'' + (s0^2 + 1/4)/r^2 u = kappa^2 u on r > r_c with
// u(r_c) = 0 (natural units, E = -kappa^2).

#include <limits>
#include <string_view>
#include <vector>

namespace efimov::spectrum {

struct InverseSquareProblem {
    double s0;          // strength; s0 = 0 is the critical coupling -1/4 (no bound states)
    double r_c;         // inner hard wall
    double r_outer;     // outer hard wall, +inf for the open problem

    /// Throws DomainError unless s0 >= 0, r_c > 0 and r_outer > r_c.
    InverseSquareProblem(double s0, double r_c, double r_outer = std::numeric_limits<double>::infinity());

    /// Strength parameter for a potential lambda / r^2; any lambda >= -1/4 maps to s0 = 0.
    static InverseSquareProblem from_coupling(double lambda, double r_c);
};

enum class SpectrumMethod { bessel_zeros, shooting, asymptotic };

std::string_view method_name(SpectrumMethod method);

struct SpectrumResult {
    std::vector<double> kappas;     // strictly decreasing
    std::vector<double> energies;   // -kappa^2
    SpectrumMethod method;
    int n_found = 0;
    bool truncated = false;         // fewer states than requested below double precision
};

// The three spectrum routines describe the open problem and ignore r_outer.

/// kappa_n = x_n / r_c from the zeros x_n of K_{i s0}.
SpectrumResult spectrum_bessel(const InverseSquareProblem& prob, int n_max);

/// Shooting on the radial equation in t = ln(r / r_c), counting nodes with
/// the Pruefer phase and refining each eigenvalue by root finding on the
/// phase at an outer wall r_max = 30 / kappa.
SpectrumResult spectrum_shooting(const InverseSquareProblem& prob, int n_max);

/// kappa_n r_c = 2 e^{-gamma} e^{-n pi / s0}, the leading small-kappa form.
SpectrumResult spectrum_asymptotic(const InverseSquareProblem& prob, int n_max);

/// Pruefer phase theta of the solution vanishing at r_c, evaluated at r_max.
/// floor(theta / pi) is the number of states deeper than -kappa^2 for a wall at r_max.
/// r_max defaults to 30 / kappa.
double shooting_phase(const InverseSquareProblem& prob, double kappa, double r_max = 0.0);

/// E_{n+1} / E_n = exp(-2 pi / s0).
double scaling_ratio(double s0);

/// (s0 / pi) ln(|a| / r0), unrounded.
double count_states_formula(double s0, double a, double r0);

/// Number of E < 0 states between hard walls at r_c and r_outer, from the
/// nodes of the zero-energy solution. A node landing on r_outer within a
/// relative 1e-9 is counted (threshold state).
int count_states_direct(const InverseSquareProblem& prob);

struct ThomasScalingReport {
    double e1_reference;   // ground state at r_c
    double e1_scaled;      // ground state at r_c / scale
    double ratio;          // e1_scaled / e1_reference
    double expected;       // scale^2
};

ThomasScalingReport thomas_scaling_check(const InverseSquareProblem& prob, double scale);

}  // namespace efimov::spectrum
