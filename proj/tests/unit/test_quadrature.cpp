#include <doctest.h>

#include <cmath>

#include "intertwine/errors.hpp"
#include "intertwine/quadrature.hpp"

using namespace intertwine;
using C = Complex;

TEST_CASE("arc rule integrates endpoint singularities") {
    QuadratureConfig q;
    // int_0^1 x^{-1/2} (1 - x)^{-1/2} dx = pi
    double sum = 0;
    for (const auto& n : arc_rule(1.0, 0.5, 0.5, q)) {
        sum += std::exp(n.log_weight - 0.5 * n.log_offset_lo - 0.5 * n.log_offset_hi);
    }
    CHECK(std::abs(sum - M_PI) < 1e-11);
}

TEST_CASE("circle integral of a smooth function") {
    QuadratureConfig q;
    const C v = circle_singular_integral({}, [](double t) { return C(std::exp(std::cos(t)), 0); }, q);
    // 2 pi I_0(1)
    CHECK(std::abs(v - C(2 * M_PI * 1.2660658777520082, 0)) < 1e-12);
}

TEST_CASE("power coefficients by quadrature match the closed form") {
    QuadratureConfig q;
    for (long n : {0L, 2L, -7L}) {
        const C a(-0.6, 0.25);
        CHECK(std::abs(circle_power_coeff_quadrature(n, a, q) - circle_power_coeff(n, a)) < 1e-10);
    }
}

TEST_CASE("config validation") {
    QuadratureConfig q;
    q.node_count = 4;
    CHECK_THROWS_AS(q.validate(), DomainError);
    q.node_count = 100;
    q.target_rel_err = 0;
    CHECK_THROWS_AS(q.validate(), DomainError);
}

TEST_CASE("log_sinc") {
    CHECK(std::abs(log_sinc(0.0)) < 1e-300);
    CHECK(std::abs(log_sinc(1e-9) + 1e-18 / 6) < 1e-25);
    CHECK(std::abs(log_sinc(2.0) - std::log(std::sin(2.0) / 2.0)) < 1e-15);
}
