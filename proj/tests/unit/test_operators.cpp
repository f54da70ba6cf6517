#include <doctest.h>

#include <cmath>

#include "intertwine/checks.hpp"
#include "intertwine/errors.hpp"
#include "intertwine/operators.hpp"

using namespace intertwine;
using C = Complex;

TEST_CASE("J acts diagonally and is unitary on the imaginary axis") {
    SpectralField F(2, 4);
    F.at({2, -1}) = C(1, 0);
    const SpectralField G = apply_J(1, C(0, 0.6), F);
    CHECK(std::abs(G.at({2, -1}) - lambda_n(2, C(0, 0.6))) < 1e-15);
    const SpectralField H = random_band_limited(2, 10, 0.3, 4);
    CHECK(std::abs(apply_J(2, C(0, -1.3), H).norm() - H.norm()) < 1e-13);
    CHECK_THROWS_AS(apply_J(3, C(0, 0.1), H), ShapeError);
}

TEST_CASE("J(p) J(-p) is the identity") {
    const SpectralField F = random_band_limited(1, 20, 0.3, 8);
    CHECK((apply_J(1, C(0, 0.4), apply_J(1, C(0, -0.4), F)) - F).norm() < 1e-14);
}

TEST_CASE("A with exponent zero is the identity and A(2) is multiplication") {
    const SpectralField F = random_band_limited(2, 6, 0.8, 5);
    CHECK((apply_A(1, 2, C(0, 0), F) - F).norm() < 1e-15);
    // |z1 - z2|^2 = 2 - z1/z2 - z2/z1
    SpectralField G(2, 6);
    G.at({0, 0}) = C(1, 0);
    const SpectralField H = apply_A(1, 2, C(2, 0), G);
    CHECK(std::abs(H.at({0, 0}) - C(2, 0)) < 1e-15);
    CHECK(std::abs(H.at({1, -1}) - C(-1, 0)) < 1e-15);
    CHECK(std::abs(H.at({-1, 1}) - C(-1, 0)) < 1e-15);
    CHECK_THROWS_AS(apply_A(1, 2, C(-1.2, 0), G), DomainError);
}

TEST_CASE("group law of T") {
    const SpectralField F = random_band_limited(1, 32, 1.0, 3);
    const auto g = MoebiusElement::from_params(0.2, 0.4, 1.1);
    const auto h = MoebiusElement::from_params(0.3, -0.7, 2.0);
    const C p(0, 0.3);
    const SpectralField lhs = apply_T(1, p, g, apply_T(1, p, h, F));
    CHECK((lhs - apply_T(1, p, g * h, F)).norm() < 1e-7);
    CHECK((apply_T(1, p, g.inverse(), apply_T(1, p, g, F)) - F).norm() < 1e-7);
    CHECK_THROWS_AS((MoebiusElement{C(1, 0), C(0.5, 0)}.validate()), DomainError);
}

TEST_CASE("J intertwines the two representations") {
    const auto gs = random_group_elements(2, 0.4, 5);
    const CheckReport r = check_intertwine_J(C(0, 0.35), gs, 48, 1);
    CHECK(r.passed);
    CHECK(r.residual < 1e-5);
}

TEST_CASE("R word shape") {
    const OperatorWord w = r_matrix_word(C(0, 0.3), C(0, 0.2), C(0, -0.3), 1, 2);
    REQUIRE(w.size() == 4);
    CHECK(w.factors[0].kind == FactorKind::A);
    CHECK(w.factors[1].kind == FactorKind::J);
    CHECK(w.factors[1].axis_k == 2);
    CHECK(w.factors[2].axis_k == 1);
    CHECK(std::abs(std::get<C>(w.factors[0].exponent) - C(0, 0.3 - (-0.1) / 2)) < 1e-15);
}

TEST_CASE("word JSON round trip and hashes") {
    const OperatorWord lhs = yang_baxter_lhs();
    CHECK(lhs.is_symbolic());
    CHECK(lhs.size() == 12);
    CHECK(word_from_json(word_to_json(lhs)) == lhs);
    CHECK(word_hash(lhs) != word_hash(yang_baxter_rhs()));
    CHECK(word_hash(lhs).size() == 16);
    const OperatorWord numeric = r_matrix_word(C(0, 0.3), C(0, 0.2), C(0, -0.3), 2, 3);
    CHECK(word_from_json(word_to_json(numeric)) == numeric);
    CHECK_THROWS_AS(word_from_json(nlohmann::json{{"factors", 3}}), StructureError);
}

TEST_CASE("label routing through the Yang-Baxter blocks") {
    const std::vector<Symbol> start{Symbol::p, Symbol::q, Symbol::r};
    const auto a = route_labels(yang_baxter_lhs_blocks(), start);
    const auto b = route_labels(yang_baxter_rhs_blocks(), start);
    CHECK(a == b);
    CHECK(a == std::vector<Symbol>{Symbol::r, Symbol::q, Symbol::p});
    CHECK_THROWS_AS(route_labels(yang_baxter_lhs_blocks(), {Symbol::q, Symbol::p, Symbol::r}),
                    StructureError);
}

TEST_CASE("adjoint reverses and conjugates") {
    const OperatorWord w = r_matrix_word(C(0.1, 0.3), C(0, 0.2), C(0, -0.3), 1, 2);
    const OperatorWord a = word_adjoint(w);
    REQUIRE(a.size() == 4);
    CHECK(std::get<C>(a.factors[0].exponent) == std::conj(std::get<C>(w.factors[3].exponent)));
    CHECK(word_adjoint(a) == w);
}

TEST_CASE("symbolic words need values") {
    const SpectralField F = default_test_field(3, 6, 1);
    CHECK_THROWS_AS(apply_word(yang_baxter_lhs(), F), StructureError);
    SymbolValues v;
    v.values = {C(0, 0.2), C(0, -0.3), C(0, 0.25), C(0, 0.4), C(0, -0.15)};
    CHECK(std::abs(apply_word(yang_baxter_lhs(), F, &v).norm() - 1.0) < 0.1);
}

TEST_CASE("J is diagonal and A acts along the difference direction") {
    SpectralField F(3, 5);
    F.at({1, -2, 3}) = C(1, 0);
    const SpectralField G = apply_J(2, C(0.1, 0.4), F);
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (i != F.index({1, -2, 3})) CHECK(G.coeffs()[i] == C(0, 0));
    }
    const SpectralField H = apply_A(1, 3, C(0, 0.6), F);
    for (int a = -5; a <= 5; ++a) {
        for (int b = -5; b <= 5; ++b) {
            for (int c = -5; c <= 5; ++c) {
                const bool on_line = b == -2 && a + c == 4;
                if (!on_line) CHECK(H.at({a, b, c}) == C(0, 0));
            }
        }
    }
    CHECK(std::abs(H.at({0, -2, 4}) - circle_power_coeff(1, C(0, 0.6))) < 1e-15);
}

TEST_CASE("cocycle identity for distances") {
    for (const auto& g : random_group_elements(4, 0.55, 2)) {
        for (double x : {0.1, 1.7, 4.0}) {
            for (double y : {0.3, 2.9, 5.5}) {
                const C z = std::polar(1.0, x), u = std::polar(1.0, y);
                const double lhs = std::abs(g.map(z) - g.map(u));
                const double rhs = std::abs(z - u) / (g.cocycle(z) * g.cocycle(u));
                CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
                const C alpha(0.2, 0.7);
                const C pw = std::pow(std::abs(z - u), alpha) * std::pow(g.cocycle(z), -alpha);
                const C pg = std::pow(lhs, alpha) * std::pow(g.cocycle(u), alpha);
                CHECK(std::abs(pw - pg) <= 1e-12 * std::max(1.0, std::abs(pg)));
            }
        }
    }
}
