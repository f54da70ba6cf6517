#include "intertwine/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "intertwine/errors.hpp"

namespace intertwine {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleDistance = 1e-9;
constexpr double kMaxExp = 709.0;

// Bernoulli numbers B_{2k} / (2k (2k-1)), k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,           -1.0 / 360.0,          1.0 / 1260.0,         -1.0 / 1680.0,
    1.0 / 1188.0,         -691.0 / 360360.0,     1.0 / 156.0,          -3617.0 / 122400.0,
    43867.0 / 244188.0,   -174611.0 / 125400.0,
};

bool near_nonpositive_integer(Complex z) {
    if (z.real() > 0.5) return false;
    const double nearest = std::round(z.real());
    return std::abs(z - Complex(nearest, 0.0)) < kPoleDistance;
}

// sin(pi z) with the real part reduced modulo 2 first.
Complex sin_pi(Complex z) {
    double x = std::fmod(z.real(), 2.0);
    const double y = z.imag();
    const double sx = std::sin(kPi * x);
    const double cx = std::cos(kPi * x);
    return {sx * std::cosh(kPi * y), cx * std::sinh(kPi * y)};
}

Complex cos_pi(Complex z) {
    double x = std::fmod(z.real(), 2.0);
    const double y = z.imag();
    return {std::cos(kPi * x) * std::cosh(kPi * y), -std::sin(kPi * x) * std::sinh(kPi * y)};
}

Complex stirling(Complex z) {
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex series = 0.0;
    Complex power = inv;
    for (double c : kStirling) {
        series += c * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

Complex log_gamma_right(Complex z) {
    // Shift into the Stirling region; each log(z + k) has Re(z + k) > 0 so
    // the sum stays on the branch continuous from the positive axis.
    Complex shift = 0.0;
    while (z.real() < 15.0 || std::abs(z) < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return stirling(z) - shift;
}

Complex checked_exp(Complex w, const char* what) {
    if (!(w.real() < kMaxExp) || !std::isfinite(w.imag())) {
        throw OverflowError(std::string(what) + ": result overflows double");
    }
    return std::exp(w);
}

}  // namespace

Complex log_gamma(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("log_gamma: non-finite argument");
    }
    if (near_nonpositive_integer(z)) {
        throw PoleError("log_gamma: argument at a pole of Gamma");
    }
    if (z.real() >= 0.5) return log_gamma_right(z);
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(kPi) - std::log(sin_pi(z)) - log_gamma_right(1.0 - z);
}

Complex gamma(Complex z) { return checked_exp(log_gamma(z), "gamma"); }

Complex c_factor(Complex p) {
    if (near_nonpositive_integer(p)) {
        throw PoleError("c_factor: p at a pole of Gamma");
    }
    return checked_exp(log_gamma(p), "c_factor") * cos_pi(0.5 * p);
}

Complex lambda_n(long n, Complex p) {
    const double m = static_cast<double>(n < 0 ? -n : n);
    const Complex num = m + 0.5 * (1.0 - p);
    const Complex den = m + 0.5 * (1.0 + p);
    if (near_nonpositive_integer(num)) {
        throw PoleError("lambda_n: eigenvalue has a pole at this p");
    }
    if (near_nonpositive_integer(den)) return 0.0;
    return checked_exp(log_gamma(num) - log_gamma(den), "lambda_n");
}

Complex lambda_n_alt(long n, Complex p) {
    const double m = static_cast<double>(n);
    const Complex num = 0.5 - p - m;
    const Complex den = 0.5 - p + m;
    if (near_nonpositive_integer(num) || near_nonpositive_integer(den)) {
        throw PoleError("lambda_n_alt: gamma argument at a pole");
    }
    const Complex phase = -Complex(0.0, 1.0) * p.imag() * std::log(2.0);
    return checked_exp(phase + log_gamma(num) - log_gamma(den), "lambda_n_alt");
}

Complex circle_power_coeff(long n, Complex alpha) {
    if (!(alpha.real() > -1.0)) {
        throw DomainError("circle_power_coeff: requires Re alpha > -1");
    }
    const long m = n < 0 ? -n : n;
    // Non-negative even integer exponent: |1 - z|^{2k} = (2 - z - 1/z)^k.
    const double half = 0.5 * alpha.real();
    const double k_round = std::round(half);
    if (std::abs(alpha - Complex(2.0 * k_round, 0.0)) < kPoleDistance && k_round >= 0.0) {
        const long k = static_cast<long>(k_round);
        if (m > k) return 0.0;
        // (-1)^n binom(2k, k + m)
        double value = 1.0;
        for (long i = 1; i <= k - m; ++i) {
            value *= static_cast<double>(k + m + i) / static_cast<double>(i);
        }
        return (m % 2 == 0) ? value : -value;
    }
    const double dm = static_cast<double>(m);
    const Complex log_mag =
        log_gamma(alpha + 1.0) + log_gamma(dm - 0.5 * alpha) - log_gamma(dm + 0.5 * alpha + 1.0);
    return -checked_exp(log_mag, "circle_power_coeff") * sin_pi(0.5 * alpha) / kPi;
}

namespace {

struct BetaPrep {
    Complex gamma;
    Complex powers;
};

BetaPrep beta_prepare(Complex alpha, Complex beta, Complex a, Complex b, Complex c) {
    const Complex gam = 1.0 - alpha - beta;
    for (Complex e : {alpha, beta, gam}) {
        if (!(e.real() > 0.0 && e.real() < 1.0)) {
            throw DomainError("beta integral: exponents need 0 < Re < 1");
        }
    }
    for (Complex pt : {a, b, c}) {
        if (std::abs(std::abs(pt) - 1.0) > 1e-12) {
            throw DomainError("beta integral: points must lie on the unit circle");
        }
    }
    const double ab = std::abs(a - b);
    const double bc = std::abs(b - c);
    const double ac = std::abs(a - c);
    if (ab < 1e-12 || bc < 1e-12 || ac < 1e-12) {
        throw DegenerateError("beta integral: coincident points");
    }
    return {gam, abs_pow(ab, -gam) * abs_pow(bc, -alpha) * abs_pow(ac, -beta)};
}

}  // namespace

Complex beta_closed_form(Complex alpha, Complex beta, Complex a, Complex b, Complex c) {
    const auto prep = beta_prepare(alpha, beta, a, b, c);
    return 4.0 / kPi * c_factor(alpha) * c_factor(beta) * c_factor(prep.gamma) * prep.powers;
}

Complex beta_closed_form_ratio(Complex alpha, Complex beta, Complex a, Complex b, Complex c) {
    const auto prep = beta_prepare(alpha, beta, a, b, c);
    return 2.0 * c_factor(alpha) * c_factor(beta) / c_factor(alpha + beta) * prep.powers;
}

}  // namespace intertwine
