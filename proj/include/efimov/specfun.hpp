#pragma once

// Special functions and numerical kernels shared by the rest of the library:
// modified Bessel functions of imaginary order, the omega constant,
// bracketed root finding and adaptive Gauss-Kronrod quadrature.

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace efimov::specfun {

using RealFunction = std::function<double(double)>;

inline constexpr double euler_gamma = std::numbers::egamma_v<double>;

/// Interval [lo, hi] over which a function changes sign.
struct RootBracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

/// Evaluates f at both ends and validates the sign change.
/// Throws InvalidBracket if lo >= hi or f does not change sign strictly.
RootBracket make_bracket(const RealFunction& f, double lo, double hi);

/// Brent's method: inverse quadratic interpolation with a bisection
/// fallback. Converges when the bracket shrinks below tol * |x| (relative)
/// or f vanishes exactly.
double find_root(const RealFunction& f, const RootBracket& bracket, double tol = 1e-12);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;   // absolute
    std::size_t evaluations = 0;
    bool converged = false;        // false when the interval budget ran out
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature of f over [a, b].
/// b may be +infinity, in which case the map x = a + u / (1 - u) is applied.
/// Stops once the summed error estimate is below max(tol, rel_tol * |value|).
QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b, double tol,
                                    double rel_tol = 0.0, std::size_t max_intervals = 4000);

/// Positive root of x e^x = 1 (the omega constant, 0.567143290409784...).
double lambert_root();

/// Principal-branch log Gamma for Re z > 0, continuous in Im z.
std::complex<double> log_gamma(std::complex<double> z);

/// arg Gamma(1 + i s), continuous in s with value 0 at s = 0.
double arg_gamma_one_plus_is(double s);

/// K_{is}(x) normalized as the integral of exp(-x cosh t) cos(s t) over t >= 0.
/// Uses the ascending series for x <= 1 and the integral representation
/// above. Returns 0 once exp(-x) underflows. Throws DomainError for
/// x <= 0 or s < 0.
double bessel_k_imag(double s, double x);

/// True when bessel_k_imag(s, x) saturates to zero because exp(-x) underflows.
bool bessel_k_imag_underflows(double x);

/// Ascending power series; accurate for x up to a few units.
double bessel_k_imag_series(double s, double x);

/// Direct quadrature of the integral representation; accurate for x >~ 0.05.
double bessel_k_imag_integral(double s, double x);

/// Leading small-x form -sqrt(pi / (s sinh(pi s))) sin(s ln(x/2) - arg Gamma(1+is)).
double bessel_k_imag_small_x(double s, double x);

struct BesselZeros {
    std::vector<double> zeros;   // strictly decreasing
    bool truncated = false;      // fewer than requested: hit the double-precision floor
};

/// The n_max largest zeros of K_{is}(x) below x_upper, in decreasing order.
/// Scans log-spaced abscissae with at least 40 points per period pi/s of ln x.
BesselZeros bessel_k_imag_zeros(double s, int n_max, double x_upper);

/// Default scan start, safely above the largest zero of K_{is}.
double bessel_k_imag_zero_scan_start(double s);

}  // namespace efimov::specfun
