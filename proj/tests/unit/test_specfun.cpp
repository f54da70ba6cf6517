#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "intertwine/errors.hpp"
#include "intertwine/quadrature.hpp"
#include "intertwine/specfun.hpp"

using namespace intertwine;
using C = Complex;

namespace {

// Values frozen from mpmath at 30 digits (gamma functions directly, Fourier
// coefficients and the beta integral by adaptive quadrature).
constexpr double kFrozenTol = 1e-13;

bool close(C a, C b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("log_gamma and gamma against frozen values") {
    CHECK(close(gamma(C(0.3, 0.7)), C(0.30968625674374916, -0.85678775293927057), kFrozenTol));
    CHECK(close(log_gamma(C(5, -3)), C(2.2442467170202177, -4.7140895389049294), kFrozenTol));
    CHECK(close(gamma(C(-1.5, 0.2)), C(1.9625551258028472, 0.27845955312126246), kFrozenTol));
    CHECK(close(gamma(C(6, 0)), C(120, 0), 1e-14));
    CHECK(std::abs(log_gamma(C(0.5, 0)) - C(0.5 * std::log(M_PI), 0)) < 1e-14);
}

TEST_CASE("poles raise PoleError") {
    CHECK_THROWS_AS(gamma(C(0, 0)), PoleError);
    CHECK_THROWS_AS(gamma(C(-3, 0)), PoleError);
    CHECK_THROWS_AS(log_gamma(C(-2 + 1e-10, 0)), PoleError);
    CHECK_THROWS_AS(c_factor(C(-1, 0)), PoleError);
    CHECK_NOTHROW(gamma(C(-2.5, 0)));
}

TEST_CASE("gamma overflow") {
    CHECK_THROWS_AS(gamma(C(200, 0)), OverflowError);
}

TEST_CASE("lambda_n frozen values and symmetry") {
    CHECK(close(lambda_n(0, C(0, 0.4)), C(0.73561314238269063, 0.67740187832177091), kFrozenTol));
    CHECK(close(lambda_n(5, C(0, 0.4)), C(0.79937453105790946, -0.60083305426378412), kFrozenTol));
    CHECK(close(lambda_n(-5, C(0, 0.4)), lambda_n(5, C(0, 0.4)), 0));
    CHECK(close(lambda_n(3, C(0.3, 0.2)), C(0.70083665506796841, -0.15703265320650725), kFrozenTol));
    for (long n : {0L, 1L, 7L, 40L, 500L}) CHECK(std::abs(std::abs(lambda_n(n, C(0, -0.9))) - 1.0) < 1e-13);
}

TEST_CASE("lambda_n agrees with the kernel quadrature oracle") {
    QuadratureConfig q;
    for (long n : {0L, 1L, -4L, 12L}) {
        const C p(0.1, 0.35);
        CHECK(close(kernel_eigenvalue_quadrature(n, p, q), lambda_n(n, p), 1e-10));
    }
}

TEST_CASE("the alternative closed form is not the kernel eigenvalue") {
    CHECK(std::abs(lambda_n_alt(1, C(0, 0.4)) - lambda_n(1, C(0, 0.4))) > 0.1);
}

TEST_CASE("circle_power_coeff frozen values") {
    CHECK(close(circle_power_coeff(3, C(0.5, 0.2)), C(-0.04150367128670916, -0.0037166948105074736), 1e-12));
    CHECK(close(circle_power_coeff(-2, C(-0.4, 0.3)), C(0.079023675816878984, -0.18883023418998676), 1e-12));
    CHECK_THROWS_AS(circle_power_coeff(0, C(-1.0, 0.1)), DomainError);
}

TEST_CASE("circle_power_coeff is exact for even integer powers") {
    // |1 - z|^4 = (2 - z - 1/z)^2 = 6 - 4z - 4/z + z^2 + 1/z^2
    CHECK(circle_power_coeff(0, C(4, 0)) == C(6, 0));
    CHECK(circle_power_coeff(1, C(4, 0)) == C(-4, 0));
    CHECK(circle_power_coeff(-2, C(4, 0)) == C(1, 0));
    CHECK(circle_power_coeff(3, C(4, 0)) == C(0, 0));
    CHECK(circle_power_coeff(0, C(0, 0)) == C(1, 0));
}

TEST_CASE("beta closed forms against the frozen integral") {
    const C alpha(0.3, 0.1), beta(0.4, -0.2);
    const C a = std::polar(1.0, 0.3), b = std::polar(1.0, 2.2), c = std::polar(1.0, 4.4);
    // the mpmath integral is only good to about 1e-13 absolute here
    const C frozen(8.0344642700388629, -1.0909732155363987);
    CHECK(close(beta_closed_form(alpha, beta, a, b, c), frozen, 1e-11));
    CHECK(close(beta_closed_form_ratio(alpha, beta, a, b, c), frozen, 1e-11));
    CHECK(close(beta_integral_quadrature(alpha, beta, a, b, c, QuadratureConfig{}), frozen, 1e-11));
    CHECK(close(beta_closed_form(alpha, beta, a, b, c), beta_closed_form_ratio(alpha, beta, a, b, c), 1e-13));
}

TEST_CASE("beta closed form domain") {
    const C a = std::polar(1.0, 0.3), b = std::polar(1.0, 2.2), c = std::polar(1.0, 4.4);
    CHECK_THROWS_AS(beta_closed_form(C(1.2, 0), C(0.3, 0), a, b, c), DomainError);
    CHECK_THROWS_AS(beta_closed_form(C(0.3, 0), C(0.3, 0), a, a, c), DegenerateError);
    CHECK_THROWS_AS(beta_closed_form(C(0.3, 0), C(0.3, 0), 2.0 * a, b, c), DomainError);
}

TEST_CASE("reflection of c_factor") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> re(-5, 5), im(-3, 3);
    int tested = 0;
    while (tested < 1000) {
        const C g(re(rng), im(rng));
        // keep clear of the poles of both factors
        if (std::abs(g.imag()) < 1e-3 && std::abs(g.real() - std::round(g.real())) < 1e-3) continue;
        const C v = c_factor(g) * c_factor(1.0 - g);
        CHECK(std::abs(v - M_PI / 2) <= 1e-10 * M_PI / 2);
        ++tested;
    }
}

TEST_CASE("unimodularity on the imaginary axis up to |n| = 256") {
    double worst = 0;
    for (double y : {-2.0, -0.4, 0.05, 0.7, 3.0}) {
        for (long n = -256; n <= 256; ++n) worst = std::max(worst, std::abs(std::abs(lambda_n(n, C(0, y))) - 1.0));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("power coefficients are even in n") {
    for (C a : {C(0.3, 0.2), C(-0.7, -1.1), C(0, 0.9), C(2.5, 0)}) {
        for (long n = 1; n <= 64; ++n) {
            CHECK(std::abs(circle_power_coeff(n, a) - circle_power_coeff(-n, a)) <= 1e-12);
        }
    }
}
