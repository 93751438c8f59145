#pragma once

// Three-body recombination in an ultracold gas. SI units; the Bohr radius is
// provided because lab scattering lengths are quoted in units of a0.
// The low-temperature regime k_B T <~ hbar^2 / (m a^2) is assumed, not checked.

#include <iosfwd>
#include <string>
#include <vector>

namespace efimov::observables {

inline constexpr double hbar_si = 1.054571817e-34;          // J s
inline constexpr double bohr_radius_si = 5.29177210903e-11;  // m
inline constexpr double atomic_mass_unit_si = 1.66053906660e-27;  // kg

struct GasParams {
    double number_density;      // m^-3, > 0
    double atom_mass;           // kg, > 0
    double scattering_length;   // m
    double c_of_a;              // dimensionless C(a) >= 0, supplied externally
};

/// Throws DomainError unless the invariants of GasParams hold.
void validate(const GasParams& gas);

/// Recombination events per volume per time, C n^3 (hbar / m) a^4.
double recombination_rate(const GasParams& gas);

/// rho_3 = (2 sqrt(3) C)^{1/4} |a|, in the units of a. Throws DomainError for C < 0.
double recombination_length(double c_of_a, double a);

/// Position of the next Efimov resonance, a * factor (factor > 1 moves outward).
double next_resonance(double a, double factor);

/// The first n resonance positions starting at a1, spaced by exp(pi / s0).
std::vector<double> resonance_ladder(double a1, double s0, int n);

struct CTableRow {
    double a;
    double c_of_a;
};

/// Two-column (a, C) table: comma separated, '#' lines and blank lines skipped,
/// an optional non-numeric header row. Throws DomainError on malformed rows
/// or C < 0; source names the input in messages.
std::vector<CTableRow> read_c_table(std::istream& in, const std::string& source = "C(a) table");

}  // namespace efimov::observables
