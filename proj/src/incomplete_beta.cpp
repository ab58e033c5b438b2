#include "regaudit/diagnostics.hpp"

#include "regaudit/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace regaudit {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// x^a (1-x)^b / B(a,b)
double front_factor(double a, double b, double x) {
    return std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
}

// Modified Lentz evaluation of the continued fraction for I_x(a,b)·a/front.
// Converges quickly for x < (a+1)/(a+b+2). Returns NaN if it does not converge.
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            return h;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// I_x(a,b) = front/a · Σ_n [(a+b)_n / (a+1)_n] x^n, convergent for 0 ≤ x < 1.
double beta_series(double a, double b, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < 1000000; ++n) {
        term *= (a + b + n) / (a + 1.0 + n) * x;
        sum += term;
        if (std::abs(term) < kEps * std::abs(sum)) {
            break;
        }
    }
    return front_factor(a, b, x) / a * sum;
}

double lower_tail(double a, double b, double x) {
    const double cf = beta_continued_fraction(a, b, x);
    if (std::isfinite(cf)) {
        return front_factor(a, b, x) * cf / a;
    }
    return beta_series(a, b, x);
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw input_error(fmt::format("beta shape parameters must be positive (a={}, b={})", a, b));
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw input_error(fmt::format("incomplete beta argument {} outside [0,1]", x));
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x == 1.0) {
        return 1.0;
    }
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return lower_tail(a, b, x);
    }
    return 1.0 - lower_tail(b, a, 1.0 - x);
}

} // namespace regaudit
