#include <doctest.h>

#include "intertwine/errors.hpp"
#include "intertwine/rewrite.hpp"

using namespace intertwine;

namespace {

LinExpr sym(Symbol s, Rational c = 1) { return LinExpr::symbol(s, c); }

const LinExpr p = sym(Symbol::p);
const LinExpr q = sym(Symbol::q);
const LinExpr r = sym(Symbol::r);

// Application order J1(c), A12(b), J1(a) with a = p, b = q, c = -p - q.
OperatorWord star() {
    return {{OperatorFactor::J(1, -p - q), OperatorFactor::A(1, 2, q), OperatorFactor::J(1, p)}};
}

}  // namespace

TEST_CASE("commutation relations") {
    CHECK(factors_commute(OperatorFactor::A(1, 2, p), OperatorFactor::A(2, 3, q)));
    CHECK(factors_commute(OperatorFactor::J(1, p), OperatorFactor::J(2, q)));
    CHECK(factors_commute(OperatorFactor::A(1, 2, p), OperatorFactor::J(3, q)));
    CHECK_FALSE(factors_commute(OperatorFactor::A(1, 2, p), OperatorFactor::J(2, q)));
    CHECK_FALSE(factors_commute(OperatorFactor::J(1, p), OperatorFactor::J(1, q)));
}

TEST_CASE("transpose") {
    const OperatorWord w{{OperatorFactor::J(1, p), OperatorFactor::J(2, q), OperatorFactor::A(1, 2, r)}};
    const OperatorWord t = transpose(w, 1);
    CHECK(t.factors[0] == w.factors[1]);
    CHECK(t.factors[1] == w.factors[0]);
    CHECK_THROWS_AS(transpose(w, 2), NonCommutingError);
    CHECK_THROWS_AS(transpose(w, 3), StructureError);
    CHECK_THROWS_AS(transpose(w, 0), StructureError);
}

TEST_CASE("star to triangle and back") {
    const OperatorWord t = star_to_triangle(star(), 1);
    REQUIRE(t.size() == 3);
    CHECK(t.factors[0] == OperatorFactor::A(1, 2, -p));
    CHECK(t.factors[1] == OperatorFactor::J(1, -q));
    CHECK(t.factors[2] == OperatorFactor::A(1, 2, p + q));
    CHECK(triangle_to_star(t, 1) == star());
}

TEST_CASE("star-triangle preconditions") {
    OperatorWord bad = star();
    bad.factors[0] = OperatorFactor::J(1, -p);
    CHECK_THROWS_AS(star_to_triangle(bad, 1), ConstraintError);
    CHECK_THROWS_AS(triangle_to_star(star(), 1), PatternError);
    OperatorWord other_axis = star();
    other_axis.factors[2] = OperatorFactor::J(2, p);
    CHECK_THROWS_AS(star_to_triangle(other_axis, 1), PatternError);
    CHECK_THROWS_AS(star_to_triangle(star(), 2), StructureError);
}

TEST_CASE("numeric exponents obey the sum rule to 1e-12") {
    using C = Complex;
    OperatorWord w{{OperatorFactor::J(1, C(0, -0.5)), OperatorFactor::A(1, 2, C(0, 0.2)),
                    OperatorFactor::J(1, C(0, 0.3))}};
    CHECK_NOTHROW(star_to_triangle(w, 1));
    w.factors[0] = OperatorFactor::J(1, C(0, -0.5 + 1e-9));
    CHECK_THROWS_AS(star_to_triangle(w, 1), ConstraintError);
}

TEST_CASE("canonical form identifies commuting rearrangements") {
    const OperatorWord a{{OperatorFactor::J(1, p), OperatorFactor::J(2, q), OperatorFactor::A(1, 2, r)}};
    const OperatorWord b = transpose(a, 1);
    CHECK(canonical_hash(a) == canonical_hash(b));
    CHECK(canonical_form(a) == canonical_form(b));
    const OperatorWord c{{OperatorFactor::J(1, p), OperatorFactor::A(1, 2, r), OperatorFactor::J(2, q)}};
    CHECK(canonical_hash(a) != canonical_hash(c));
    const auto moves = transpositions_between(a, b);
    REQUIRE(moves);
    CHECK(moves->size() == 1);
    CHECK_FALSE(transpositions_between(a, c));
}

TEST_CASE("search: trivial and one-move cases") {
    const SearchResult same = search_derivation(star(), star(), 3);
    REQUIRE(same.found);
    CHECK(same.certificate->steps.empty());
    CHECK(same.depth == 0);

    const SearchResult one = search_derivation(star(), star_to_triangle(star(), 1), 3);
    REQUIRE(one.found);
    CHECK(one.depth == 1);
    CHECK(one.certificate->star_triangle_count() == 1);
    CHECK(verify_certificate(*one.certificate).accepted);

    const OperatorWord unrelated{{OperatorFactor::J(2, p)}};
    CHECK_FALSE(search_derivation(star(), unrelated, 2).found);
}

TEST_CASE("the built-in Yang-Baxter derivation") {
    const auto& script = yang_baxter_script();
    CHECK(script.size() == 42);
    const Certificate c = yang_baxter_derivation();
    CHECK(c.star_triangle_count() == 8);
    CHECK(c.start == yang_baxter_lhs());
    CHECK(c.end == yang_baxter_rhs());
    const OperatorWord rhs = yang_baxter_rhs();
    const VerificationResult v = verify_certificate(c, &rhs);
    CHECK(v.accepted);
    CHECK(v.failed_step == -1);
}

TEST_CASE("certificate JSON round trip and tampering") {
    const Certificate c = yang_baxter_derivation();
    const nlohmann::json j = certificate_to_json(c);
    CHECK(j["format"] == "intertwine.certificate");
    CHECK(j["star_triangle_moves"] == 8);
    const Certificate back = certificate_from_json(nlohmann::json::parse(j.dump()));
    CHECK(verify_certificate(back).accepted);
    CHECK(back.moves() == c.moves());

    nlohmann::json moved = j;
    moved["steps"][3]["position"] = 6;
    const VerificationResult v1 = verify_certificate(certificate_from_json(moved));
    CHECK_FALSE(v1.accepted);
    CHECK(v1.failed_step == 3);

    nlohmann::json rehashed = j;
    rehashed["steps"][10]["after"] = "0000000000000000";
    CHECK_FALSE(verify_certificate(certificate_from_json(rehashed)).accepted);

    nlohmann::json truncated = j;
    truncated["steps"].erase(truncated["steps"].size() - 1);
    CHECK_FALSE(verify_certificate(certificate_from_json(truncated)).accepted);

    const OperatorWord lhs = yang_baxter_lhs();
    CHECK_FALSE(verify_certificate(c, &lhs).accepted);
}

TEST_CASE("move names") {
    CHECK(move_kind_from_name(move_kind_name(MoveKind::TriangleToStar)) == MoveKind::TriangleToStar);
    CHECK_THROWS_AS(move_kind_from_name("rotate"), StructureError);
}

TEST_CASE("every move of the derivation conserves the total exponent") {
    auto total = [](const OperatorWord& w) {
        LinExpr s;
        for (const auto& f : w.factors) s += std::get<LinExpr>(f.exponent);
        return s;
    };
    const Certificate c = yang_baxter_derivation();
    const LinExpr t0 = total(c.start);
    for (const auto& s : c.steps) CHECK(total(s.after) == t0);
}
