#pragma once

#include <functional>
#include <vector>

#include "intertwine/specfun.hpp"

namespace intertwine {

enum class Grading {
    // tanh-sinh nodes per arc, clustered double-exponentially at both ends
    DoubleExponential,
    // uniform nodes on the whole circle; only accurate for smooth integrands
    PeriodicTrapezoid,
};

struct QuadratureConfig {
    int node_count = 480;
    Grading grading = Grading::DoubleExponential;
    double target_rel_err = 1e-12;

    // DomainError unless node_count >= 8 and target_rel_err > 0.
    void validate() const;
};

/// One node of a graded rule on an interval of length L. Offsets to both
/// ends are kept separately (and as logs) so that endpoint distances far
/// below machine epsilon relative to L stay exact.
struct ArcNode {
    double offset_lo;
    double offset_hi;
    double log_offset_lo;
    double log_offset_hi;
    double log_weight;
};

/// tanh-sinh rule on [0, length]. mu_lo and mu_hi are the real parts of the
/// local exponents mu in an endpoint behaviour d^{mu - 1}; the truncation of
/// the infinite rule is chosen so the neglected endpoint mass is below
/// target_rel_err.
std::vector<ArcNode> arc_rule(double length, double mu_lo, double mu_hi,
                              const QuadratureConfig& cfg);

struct SingularPoint {
    double angle;
    Complex exponent;  // local factor |e^{i theta} - e^{i angle}|^exponent
};

/// Integral over theta in [0, 2 pi) of
///     prod_j |e^{i theta} - e^{i angle_j}|^{exponent_j} * smooth(theta).
/// Every exponent needs Re > -1. Each arc between consecutive singular
/// points gets its own graded rule.
Complex circle_singular_integral(const std::vector<SingularPoint>& points,
                                 const std::function<Complex(double)>& smooth,
                                 const QuadratureConfig& cfg);

/// Left side of the circle beta integral by direct quadrature (measure
/// d theta); gamma = 1 - alpha - beta.
Complex beta_integral_quadrature(Complex alpha, Complex beta, Complex a, Complex b, Complex c,
                                 const QuadratureConfig& cfg);

/// Fourier coefficient of |1 - e^{i theta}|^alpha by quadrature.
Complex circle_power_coeff_quadrature(long n, Complex alpha, const QuadratureConfig& cfg);

/// Eigenvalue of the J(p) kernel on z^n by quadrature of
/// (1 / 2C(p)) int |1 - e^{i theta}|^{-1+p} e^{i n theta} d theta.
/// The theta^{-1+p} part is integrated analytically, which continues the
/// integral to -1 < Re p (p != 0), including the imaginary axis.
Complex kernel_eigenvalue_quadrature(long n, Complex p, const QuadratureConfig& cfg);

/// log(sin(x) / x) for 0 <= x < pi, accurate near 0.
double log_sinc(double x);

}  // namespace intertwine
