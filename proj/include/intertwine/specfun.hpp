#pragma once

#include <complex>

namespace intertwine {

using Complex = std::complex<double>;

/// Log-gamma on the complex plane.
///
/// For Re z >= 1/2 this is the branch continuous from the positive real
/// axis (real for real z > 0). For Re z < 1/2 it is obtained by reflection
/// and the imaginary part is only meaningful modulo 2*pi; every caller in
/// this library exponentiates differences, so the branch never leaks.
/// Throws PoleError within 1e-9 of a non-positive integer.
Complex log_gamma(Complex z);

/// Gamma(z) computed as exp(log_gamma(z)); OverflowError if not finite.
Complex gamma(Complex z);

/// C(p) = Gamma(p) cos(pi p / 2). PoleError at p in {0, -1, -2, ...}.
Complex c_factor(Complex p);

/// Eigenvalue of the circle intertwiner J(p) on the mode z^n:
///
///     Gamma(|n| + (1 - p)/2) / Gamma(|n| + (1 + p)/2)
///
/// This is the Fourier multiplier of the kernel |z - u|^{-1+p} / (2 C(p))
/// with respect to d(theta). Even in n; unimodular for p on the imaginary
/// axis. PoleError when the numerator argument hits a pole (p = 1 + 2|n| +
/// 2k); a pole of the denominator gives an exact zero.
Complex lambda_n(long n, Complex p);

/// The alternative closed form 2^{-i Im p} Gamma(1/2 - p - n) / Gamma(1/2 - p + n).
///
/// Kept for comparison only: it does not match the kernel eigenvalues (see
/// kernel_eigenvalue_quadrature) and is not unimodular on the imaginary
/// axis. PoleError when either gamma argument is a pole.
Complex lambda_n_alt(long n, Complex p);

/// n-th Fourier coefficient of |1 - e^{i theta}|^alpha with respect to the
/// normalized measure d(theta)/(2 pi). DomainError when Re alpha <= -1.
/// Exact binomial values for non-negative even integer alpha.
Complex circle_power_coeff(long n, Complex alpha);

/// Closed form of the circle beta integral
///
///     int |z-a|^{alpha-1} |z-b|^{beta-1} |z-c|^{gamma-1} dz/(iz)
///
/// with gamma = 1 - alpha - beta:
/// (4/pi) C(alpha) C(beta) C(gamma) |a-b|^{-gamma} |b-c|^{-alpha} |a-c|^{-beta}.
/// DomainError unless 0 < Re of each exponent < 1 and |a| = |b| = |c| = 1
/// (to 1e-12); DegenerateError when two points coincide.
Complex beta_closed_form(Complex alpha, Complex beta, Complex a, Complex b, Complex c);

/// Same integral through the second constant 2 C(alpha) C(beta) / C(alpha + beta).
Complex beta_closed_form_ratio(Complex alpha, Complex beta, Complex a, Complex b, Complex c);

/// |z|^s for z != 0 and complex s, via exp(s log|z|).
inline Complex abs_pow(double modulus, Complex s) {
    return std::exp(s * std::log(modulus));
}

}  // namespace intertwine
