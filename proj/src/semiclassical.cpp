#include "efimov/semiclassical.hpp"

#include "efimov/errors.hpp"
#include "efimov/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace efimov::semiclassical {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int scan_intervals = 512;
constexpr double rel_tol = 1e-12;

// Bisection to adjacent doubles; tolerates an infinite end value.
double turning_point(const std::function<double(double)>& f, double lo, double hi) {
    const bool lo_allowed = f(lo) > 0.0;
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid;
        if ((f(mid) > 0.0) == lo_allowed) lo = mid;
        else hi = mid;
    }
}

// Maximal subintervals of [r_lo, r_hi] on which E - V > 0.
std::vector<std::pair<double, double>> allowed_intervals(const RadialPotential& pot, double E) {
    const std::function<double(double)> f = [&](double r) { return E - pot.V(r); };
    std::vector<double> grid(scan_intervals + 1);
    const bool log_spaced = pot.r_lo > 0.0;
    for (int i = 0; i <= scan_intervals; ++i) {
        const double w = static_cast<double>(i) / scan_intervals;
        grid[i] = log_spaced ? pot.r_lo * std::pow(pot.r_hi / pot.r_lo, w) : pot.r_hi * w;
    }
    grid.front() = pot.r_lo;
    grid.back() = pot.r_hi;

    std::vector<double> edges{pot.r_lo};
    bool prev = f(grid[0]) > 0.0;
    for (int i = 1; i <= scan_intervals; ++i) {
        const bool cur = f(grid[i]) > 0.0;
        if (cur != prev) edges.push_back(turning_point(f, grid[i - 1], grid[i]));
        prev = cur;
    }
    edges.push_back(pot.r_hi);

    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        if (b > a && f(0.5 * (a + b)) > 0.0) out.emplace_back(a, b);
    }
    return out;
}

// int_a^b F(E - V(r)) dr with r = a + 2h sin^2(phi/2), h = (b - a)/2, written
// from the nearer end so that r stays accurate next to either endpoint.
double integrate_allowed(const RadialPotential& pot, double E, double a, double b, double (*F)(double)) {
    const double h = 0.5 * (b - a);
    const specfun::RealFunction integrand = [&](double phi) {
        const double r = phi < 0.5 * pi ? a + 2.0 * h * std::pow(std::sin(0.5 * phi), 2)
                                        : b - 2.0 * h * std::pow(std::cos(0.5 * phi), 2);
        const double gap = E - pot.V(r);
        return gap > 0.0 ? F(gap) * h * std::sin(phi) : 0.0;
    };
    return specfun::integrate_adaptive(integrand, 0.0, pi, 0.0, rel_tol).value;
}

double inverse_sqrt(double x) { return 1.0 / std::sqrt(x); }
double plain_sqrt(double x) { return std::sqrt(x); }

}  // namespace

LangerChannel::LangerChannel(int ell_, double s0_, bool langer_) : ell(ell_), s0(s0_), langer(langer_) {
    if (ell < 0) throw DomainError("partial wave ell must be non-negative");
    if (!(s0 >= 0.0) || !std::isfinite(s0)) throw DomainError("s0 must be finite and non-negative");
}

double LangerChannel::strength() const {
    const double centrifugal = langer ? (ell + 0.5) * (ell + 0.5) : static_cast<double>(ell) * (ell + 1);
    return centrifugal - (s0 * s0 + 0.25);
}

double langer_potential(const LangerChannel& chan, double r) {
    if (!(r > 0.0)) throw DomainError("radius must be positive");
    return chan.strength() / (r * r);
}

RadialPotential::RadialPotential(std::function<double(double)> V_, double r_lo_, double r_hi_,
                                 double singular_strength_)
    : V(std::move(V_)), r_lo(r_lo_), r_hi(r_hi_), singular_strength(singular_strength_) {
    if (!(r_lo >= 0.0) || !(r_hi > r_lo) || !std::isfinite(r_hi))
        throw DomainError("radial domain must satisfy 0 <= r_lo < r_hi < inf");
}

RadialPotential RadialPotential::channel(const LangerChannel& chan, double r_lo, double r_hi) {
    const double c = chan.strength();
    return {[c](double r) { return c == 0.0 ? 0.0 : c / (r * r); }, r_lo, r_hi, c};
}

RadialPotential RadialPotential::flat(double r_lo, double r_hi) {
    return {[](double) { return 0.0; }, r_lo, r_hi};
}

PartitionResult partition_function(const RadialPotential& pot, double inverse_temperature) {
    if (!(inverse_temperature > 0.0)) throw DomainError("inverse temperature must be positive");
    PartitionResult z;
    if (pot.r_lo == 0.0 && pot.singular_strength < 0.0) {
        z.value = std::numeric_limits<double>::infinity();
        z.divergent = true;
        return z;
    }
    const specfun::RealFunction boltzmann = [&](double r) { return std::exp(-inverse_temperature * pot.V(r)); };
    const double spatial = specfun::integrate_adaptive(boltzmann, pot.r_lo, pot.r_hi, 0.0, rel_tol).value;
    z.value = spatial / std::sqrt(4.0 * pi * inverse_temperature);
    return z;
}

DensityResult density_of_states(const RadialPotential& pot, double E) {
    DensityResult g;
    const auto intervals = allowed_intervals(pot, E);
    g.forbidden = intervals.empty();
    for (const auto& [a, b] : intervals) g.value += integrate_allowed(pot, E, a, b, inverse_sqrt);
    g.value /= 2.0 * pi;
    return g;
}

double count_states(const RadialPotential& pot, double E) {
    if (pot.r_lo == 0.0 && pot.singular_strength < 0.0)
        throw DomainError("semiclassical count diverges for an attractive 1/r^2 potential reaching r = 0");
    double n = 0.0;
    for (const auto& [a, b] : allowed_intervals(pot, E)) n += integrate_allowed(pot, E, a, b, plain_sqrt);
    return n / pi;
}

double count_states_semiclassical(double s0, double E, double r0, double a) {
    if (!(r0 > 0.0) || !(a >= r0) || !std::isfinite(a)) throw DomainError("count requires a >= r0 > 0");
    if (!(E <= 0.0)) throw DomainError("count requires E <= 0");
    if (a == r0) return 0.0;
    if (E == 0.0) return s0 / pi * std::log(a / r0);
    return count_states(RadialPotential::channel(LangerChannel(0, s0), r0, a), E);
}

}  // namespace efimov::semiclassical
