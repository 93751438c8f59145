#include "efimov/specfun.hpp"

#include "efimov/errors.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace efimov::specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool at_roundoff;
};

Segment gauss_kronrod_15(const RealFunction& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_center = f(center);
    double kronrod = f_center * kronrod_weights[7];
    double gauss = f_center * gauss_weights[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f_left{};
    std::array<double, 7> f_right{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kronrod_nodes[j];
        f_left[j] = f(center - dx);
        f_right[j] = f(center + dx);
        const double pair = f_left[j] + f_right[j];
        kronrod += kronrod_weights[j] * pair;
        abs_sum += kronrod_weights[j] * (std::abs(f_left[j]) + std::abs(f_right[j]));
        if (j % 2 == 1) gauss += gauss_weights[j / 2] * pair;
    }
    const double mean = 0.5 * kronrod;
    double asc = kronrod_weights[7] * std::abs(f_center - mean);
    for (int j = 0; j < 7; ++j)
        asc += kronrod_weights[j] * (std::abs(f_left[j] - mean) + std::abs(f_right[j] - mean));

    const double result = kronrod * half;
    const double resabs = abs_sum * std::abs(half);
    const double resasc = asc * std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    bool roundoff = false;
    if (resabs > DBL_MIN / (50.0 * eps) && 50.0 * eps * resabs >= err) {
        err = 50.0 * eps * resabs;
        roundoff = true;
    }
    return {a, b, result, err, roundoff};
}

bool by_error(const Segment& lhs, const Segment& rhs) { return lhs.error < rhs.error; }

}  // namespace

RootBracket make_bracket(const RealFunction& f, double lo, double hi) {
    if (!(lo < hi)) throw InvalidBracket("root bracket requires lo < hi");
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (!std::isfinite(f_lo) || !std::isfinite(f_hi))
        throw InvalidBracket("function is not finite at the bracket ends");
    if (f_lo * f_hi > 0.0 || (f_lo == 0.0 && f_hi == 0.0))
        throw InvalidBracket("function does not change sign across [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    return {lo, hi, f_lo, f_hi};
}

double find_root(const RealFunction& f, const RootBracket& bracket, double tol) {
    if (!(bracket.lo < bracket.hi) || bracket.f_lo * bracket.f_hi > 0.0)
        throw InvalidBracket("invalid root bracket");
    if (bracket.f_lo == 0.0) return bracket.lo;
    if (bracket.f_hi == 0.0) return bracket.hi;

    double a = bracket.lo, b = bracket.hi;
    double fa = bracket.f_lo, fb = bracket.f_hi;
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 500; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol * std::abs(b) + DBL_MIN;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || std::nextafter(b, c) == c) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic (or secant) step.
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    return b;
}

QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b, double tol,
                                    double rel_tol, std::size_t max_intervals) {
    if (a == b) return {0.0, 0.0, 0, true};
    if (std::isinf(b)) {
        if (b < 0.0 || std::isinf(a)) throw DomainError("integrate_adaptive: only [a, +inf) is supported");
        // x = a + u / (1 - u), dx = du / (1 - u)^2
        const RealFunction mapped = [&f, a](double u) {
            const double w = 1.0 - u;
            return f(a + u / w) / (w * w);
        };
        return integrate_adaptive(mapped, 0.0, 1.0, tol, rel_tol, max_intervals);
    }
    if (b < a) {
        auto r = integrate_adaptive(f, b, a, tol, rel_tol, max_intervals);
        r.value = -r.value;
        return r;
    }

    std::vector<Segment> heap;
    heap.reserve(max_intervals + 1);
    heap.push_back(gauss_kronrod_15(f, a, b));
    std::size_t evaluations = 15;
    double value = heap.front().value;
    double error = heap.front().error;

    auto target = [&] { return std::max(tol, rel_tol * std::abs(value)); };
    while (error > target() && heap.size() < max_intervals) {
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.at_roundoff || !(mid > worst.a && mid < worst.b)) {
            // Further bisection cannot reduce the estimate.
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), by_error);
            break;
        }
        const Segment left = gauss_kronrod_15(f, worst.a, mid);
        const Segment right = gauss_kronrod_15(f, mid, worst.b);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
    }

    // Resum to shed accumulated drift from the incremental updates.
    value = 0.0;
    error = 0.0;
    for (const auto& s : heap) {
        value += s.value;
        error += s.error;
    }
    return {value, error, evaluations, error <= target()};
}

double lambert_root() {
    double x = 0.5;
    for (int i = 0; i < 100; ++i) {
        const double ex = std::exp(x);
        const double step = (x * ex - 1.0) / (ex * (x + 1.0));
        x -= step;
        if (std::abs(step) <= 4.0 * eps * x) break;
    }
    return x;
}

std::complex<double> log_gamma(std::complex<double> z) {
    if (!(z.real() > 0.0)) throw DomainError("log_gamma requires Re z > 0");
    // Shift into the Stirling regime; each log(z + k) has Re > 0, so the
    // summed imaginary parts stay on the continuous branch.
    std::complex<double> shift_sum{0.0, 0.0};
    while (z.real() < 15.0) {
        shift_sum += std::log(z);
        z += 1.0;
    }
    constexpr std::array<double, 8> stirling = {1.0 / 12.0,        -1.0 / 360.0,      1.0 / 1260.0,
                                                -1.0 / 1680.0,      1.0 / 1188.0,      -691.0 / 360360.0,
                                                1.0 / 156.0,        -3617.0 / 122400.0};
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> series{0.0, 0.0};
    std::complex<double> power = inv;
    for (double c : stirling) {
        series += c * power;
        power *= inv2;
    }
    const std::complex<double> result =
        (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series;
    return result - shift_sum;
}

double arg_gamma_one_plus_is(double s) { return log_gamma({1.0, s}).imag(); }

bool bessel_k_imag_underflows(double x) { return std::exp(-x) < DBL_MIN; }

namespace {

void check_bessel_args(double s, double x) {
    if (!(x > 0.0)) throw DomainError("K_{is}(x) requires x > 0");
    if (!(s >= 0.0)) throw DomainError("K_{is}(x) requires s >= 0");
}

// pi / sqrt(pi s sinh(pi s)), evaluated without overflowing sinh.
double series_prefactor(double s) {
    const double log_sinh = pi * s + std::log1p(-std::exp(-2.0 * pi * s)) - std::numbers::ln2;
    return pi * std::exp(-0.5 * (std::log(pi * s) + log_sinh));
}

}  // namespace

double bessel_k_imag_series(double s, double x) {
    check_bessel_args(s, x);
    if (s == 0.0) return bessel_k_imag_integral(s, x);
    // K_{is}(x) = -pi Im I_{is}(x) / sinh(pi s), with
    // I_{is}(x) = (x/2)^{is} / Gamma(1+is) * sum_k (x^2/4)^k / (k! (1+is)_k).
    const double theta = s * std::log(0.5 * x) - arg_gamma_one_plus_is(s);
    const double q = 0.25 * x * x;
    std::complex<double> term{1.0, 0.0};
    std::complex<double> sum{1.0, 0.0};
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<double>(k) * std::complex<double>(k, s));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    const double im = std::sin(theta) * sum.real() + std::cos(theta) * sum.imag();
    return -series_prefactor(s) * im;
}

double bessel_k_imag_integral(double s, double x) {
    check_bessel_args(s, x);
    if (bessel_k_imag_underflows(x)) return 0.0;
    // exp(-x) is factored out; the remaining integrand falls below 1e-18
    // of its peak at t_max.
    const double t_max = std::acosh(1.0 + 42.0 / x);
    const RealFunction integrand = [s, x](double t) {
        return std::exp(-x * (std::cosh(t) - 1.0)) * std::cos(s * t);
    };
    const double scale = std::min(t_max, std::sqrt(pi / (2.0 * x)));
    const auto r = integrate_adaptive(integrand, 0.0, t_max, 1e-14 * scale);
    return std::exp(-x) * r.value;
}

double bessel_k_imag_small_x(double s, double x) {
    check_bessel_args(s, x);
    if (s == 0.0) throw DomainError("small-x oscillatory form requires s > 0");
    const double theta = s * std::log(0.5 * x) - arg_gamma_one_plus_is(s);
    return -series_prefactor(s) * std::sin(theta);
}

double bessel_k_imag(double s, double x) {
    check_bessel_args(s, x);
    if (x <= 1.0 && s > 0.0) return bessel_k_imag_series(s, x);
    return bessel_k_imag_integral(s, x);
}

double bessel_k_imag_zero_scan_start(double s) { return s + 2.0; }

BesselZeros bessel_k_imag_zeros(double s, int n_max, double x_upper) {
    if (!(s > 0.0)) throw DomainError("Bessel zeros require s > 0");
    if (n_max < 1) throw DomainError("Bessel zeros require n_max >= 1");
    if (!(x_upper > 0.0)) throw DomainError("Bessel zeros require x_upper > 0");

    // Zeros are evenly spaced by pi/s in ln x.
    const double step = std::min(pi / (40.0 * s), 0.1);
    constexpr double log_floor = -690.0;  // x ~ 1e-300
    const RealFunction in_log = [s](double y) { return bessel_k_imag(s, std::exp(y)); };

    BesselZeros out;
    double y_hi = std::log(x_upper);
    double f_hi = in_log(y_hi);
    while (static_cast<int>(out.zeros.size()) < n_max) {
        const double y_lo = y_hi - step;
        if (y_lo < log_floor) {
            out.truncated = true;
            break;
        }
        const double f_lo = in_log(y_lo);
        if (f_lo == 0.0) {
            out.zeros.push_back(std::exp(y_lo));
            // Step past the exact zero so it is not bracketed twice.
            y_hi = y_lo - 0.5 * step;
            f_hi = in_log(y_hi);
            continue;
        }
        if (f_hi != 0.0 && (f_lo > 0.0) != (f_hi > 0.0)) {
            const double y = find_root(in_log, RootBracket{y_lo, y_hi, f_lo, f_hi}, 1e-16);
            out.zeros.push_back(std::exp(y));
        }
        y_hi = y_lo;
        f_hi = f_lo;
    }
    return out;
}

}  // namespace efimov::specfun
