#include "efimov/spectrum.hpp"

#include "efimov/errors.hpp"
#include "efimov/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace efimov::spectrum {

namespace {

constexpr double pi = std::numbers::pi;

// Outer wall for the shooting solver, in units of the decay length 1/kappa.
constexpr double decay_lengths = 30.0;
// Base RK4 step in t = ln(r / r_c).
constexpr double base_step = 2e-3;
// Below this kappa r_c the states are lost to double precision.
constexpr double log_x_floor = -640.0;

// Pruefer phase for w'' = -q(t) w, q = s0^2 - x^2 e^{2t}, w(0) = 0, with
// w = rho sin(theta), w' = sigma rho cos(theta):
//   theta' = sigma cos^2(theta) + (q / sigma) sin^2(theta).
double prufer_phase(double s0, double x, double t_end) {
    const double sigma = s0 > 0.0 ? s0 : 1.0;
    const double s0_sq = s0 * s0;
    const double x_sq = x * x;
    auto rhs = [=](double t, double theta) {
        const double q = s0_sq - x_sq * std::exp(2.0 * t);
        const double c = std::cos(theta), s = std::sin(theta);
        return sigma * c * c + (q / sigma) * s * s;
    };
    double t = 0.0, theta = 0.0;
    while (t < t_end) {
        const double q_abs = std::abs(s0_sq - x_sq * std::exp(2.0 * t));
        double h = std::min(base_step, 0.25 / (sigma + q_abs / sigma));
        if (t + h > t_end) h = t_end - t;
        const double k1 = rhs(t, theta);
        const double k2 = rhs(t + 0.5 * h, theta + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, theta + 0.5 * h * k2);
        const double k4 = rhs(t + h, theta + h * k3);
        theta += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        t += h;
    }
    return theta;
}

double wall_distance(double x) { return std::log(decay_lengths / x); }

int states_deeper_than(double s0, double log_x) {
    const double x = std::exp(log_x);
    return static_cast<int>(std::floor(prufer_phase(s0, x, wall_distance(x)) / pi));
}

void check_count(int n_max) {
    if (n_max < 1) throw DomainError("n_max must be at least 1");
}

SpectrumResult make_result(std::vector<double> kappas, SpectrumMethod method, bool truncated) {
    SpectrumResult r;
    r.energies.reserve(kappas.size());
    for (double k : kappas) r.energies.push_back(-k * k);
    r.n_found = static_cast<int>(kappas.size());
    r.kappas = std::move(kappas);
    r.method = method;
    r.truncated = truncated;
    return r;
}

}  // namespace

InverseSquareProblem::InverseSquareProblem(double s0_, double r_c_, double r_outer_)
    : s0(s0_), r_c(r_c_), r_outer(r_outer_) {
    if (!(s0 >= 0.0) || !std::isfinite(s0)) throw DomainError("s0 must be finite and non-negative");
    if (!(r_c > 0.0)) throw DomainError("inner cutoff r_c must be positive");
    if (!(r_outer > r_c)) throw DomainError("outer cutoff must exceed r_c");
}

InverseSquareProblem InverseSquareProblem::from_coupling(double lambda, double r_c) {
    // lambda = -(s0^2 + 1/4)
    return {std::sqrt(std::max(0.0, -lambda - 0.25)), r_c};
}

std::string_view method_name(SpectrumMethod method) {
    switch (method) {
        case SpectrumMethod::bessel_zeros: return "bessel";
        case SpectrumMethod::shooting: return "shooting";
        case SpectrumMethod::asymptotic: return "asymptotic";
    }
    return "?";
}

SpectrumResult spectrum_bessel(const InverseSquareProblem& prob, int n_max) {
    check_count(n_max);
    if (prob.s0 == 0.0) return make_result({}, SpectrumMethod::bessel_zeros, false);
    const auto zeros =
        specfun::bessel_k_imag_zeros(prob.s0, n_max, specfun::bessel_k_imag_zero_scan_start(prob.s0));
    std::vector<double> kappas;
    kappas.reserve(zeros.zeros.size());
    for (double x : zeros.zeros) kappas.push_back(x / prob.r_c);
    return make_result(std::move(kappas), SpectrumMethod::bessel_zeros, zeros.truncated);
}

double shooting_phase(const InverseSquareProblem& prob, double kappa, double r_max) {
    if (!(kappa > 0.0)) throw DomainError("shooting requires kappa > 0");
    const double x = kappa * prob.r_c;
    const double t_end = r_max > 0.0 ? std::log(r_max / prob.r_c) : wall_distance(x);
    if (!(t_end > 0.0)) throw DomainError("outer wall must lie beyond r_c");
    return prufer_phase(prob.s0, x, t_end);
}

SpectrumResult spectrum_shooting(const InverseSquareProblem& prob, int n_max) {
    check_count(n_max);
    const double s0 = prob.s0;

    // No state is deeper than the turning point at the wall.
    double log_hi = std::log(s0 + 1.0);
    while (states_deeper_than(s0, log_hi) > 0) log_hi += 1.0;

    // Walk down half a scaling period at a time until n_max states lie above.
    // With s0 = 0 the phase never reaches pi, so the walk ends at the floor.
    const double stride = s0 > 0.0 ? 0.5 * pi / s0 : 50.0;
    double log_lo = log_hi;
    int available = 0;
    bool truncated = false;
    while (true) {
        const double next = log_lo - stride;
        if (next < log_x_floor) {
            truncated = s0 > 0.0;
            break;
        }
        log_lo = next;
        available = states_deeper_than(s0, log_lo);
        if (available >= n_max) break;
    }
    if (s0 == 0.0) return make_result({}, SpectrumMethod::shooting, false);

    const int n_states = std::min(n_max, available);
    std::vector<double> kappas;
    kappas.reserve(static_cast<std::size_t>(n_states));
    for (int n = 1; n <= n_states; ++n) {
        // Bisect on the node count, each trial with its own outer wall.
        double a = log_lo, b = log_hi;   // count(a) >= n > count(b)
        while (b - a > 0.3) {
            const double mid = 0.5 * (a + b);
            if (states_deeper_than(s0, mid) >= n) a = mid;
            else b = mid;
        }
        // Refine with the wall fixed at the larger of the two radii.
        const double t_end = wall_distance(std::exp(a));
        const specfun::RealFunction phase_gap = [=](double log_x) {
            return prufer_phase(s0, std::exp(log_x), t_end) - n * pi;
        };
        double f_a = phase_gap(a), f_b = phase_gap(b);
        while (!(f_a >= 0.0) || !(f_b < 0.0)) {
            // The moved wall shifted the count at an end point; widen toward it.
            if (!(f_a >= 0.0)) {
                a -= 0.1;
                f_a = phase_gap(a);
            } else {
                b += 0.1;
                f_b = phase_gap(b);
            }
        }
        const double log_x = specfun::find_root(phase_gap, {a, b, f_a, f_b}, 1e-15);
        kappas.push_back(std::exp(log_x) / prob.r_c);
    }
    return make_result(std::move(kappas), SpectrumMethod::shooting, truncated && n_states < n_max);
}

SpectrumResult spectrum_asymptotic(const InverseSquareProblem& prob, int n_max) {
    check_count(n_max);
    if (!(prob.s0 > 0.0)) throw DomainError("asymptotic spectrum requires s0 > 0");
    const double prefactor = 2.0 * std::exp(-specfun::euler_gamma);
    std::vector<double> kappas;
    kappas.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) kappas.push_back(prefactor * std::exp(-n * pi / prob.s0) / prob.r_c);
    return make_result(std::move(kappas), SpectrumMethod::asymptotic, false);
}

double scaling_ratio(double s0) {
    if (!(s0 > 0.0)) throw DomainError("scaling ratio requires s0 > 0");
    return std::exp(-2.0 * pi / s0);
}

double count_states_formula(double s0, double a, double r0) {
    if (!(r0 > 0.0)) throw DomainError("short-distance cutoff must be positive");
    if (!(std::abs(a) >= r0)) throw DomainError("state count requires |a| >= r0");
    return s0 / pi * std::log(std::abs(a) / r0);
}

int count_states_direct(const InverseSquareProblem& prob) {
    if (!std::isfinite(prob.r_outer)) throw DomainError("direct count requires a finite outer cutoff");
    // Zero-energy solution: each node inside (r_c, r_outer) is one bound state.
    const double theta = prufer_phase(prob.s0, 0.0, std::log(prob.r_outer / prob.r_c));
    return static_cast<int>(std::floor(theta / pi * (1.0 + 1e-9)));
}

ThomasScalingReport thomas_scaling_check(const InverseSquareProblem& prob, double scale) {
    if (!(scale > 0.0)) throw DomainError("scale must be positive");
    const auto reference = spectrum_bessel(prob, 1);
    const auto scaled = spectrum_bessel(InverseSquareProblem(prob.s0, prob.r_c / scale), 1);
    if (reference.n_found < 1 || scaled.n_found < 1) throw NoRoot("no bound state for the cutoff scaling check");
    ThomasScalingReport r{};
    r.e1_reference = reference.energies[0];
    r.e1_scaled = scaled.energies[0];
    r.ratio = r.e1_scaled / r.e1_reference;
    r.expected = scale * scale;
    return r;
}

}  // namespace efimov::spectrum
