#include <doctest.h>

#include "intertwine/errors.hpp"
#include "intertwine/linexpr.hpp"

using namespace intertwine;

TEST_CASE("to_string and parse round trip") {
    const LinExpr e = LinExpr::symbol(Symbol::theta) - LinExpr::symbol(Symbol::tau) +
                      LinExpr::symbol(Symbol::p, Rational(1, 2)) + LinExpr::symbol(Symbol::q, Rational(1, 2));
    const std::string s = e.to_string();
    CHECK(LinExpr::parse(s) == e);
    CHECK(LinExpr().to_string() == "0");
    CHECK(LinExpr::parse("0").is_zero());
    CHECK(LinExpr::parse("-1/2*p + 3/4") == LinExpr::symbol(Symbol::p, Rational(-1, 2)) + LinExpr(Rational(3, 4)));
}

TEST_CASE("arithmetic is exact") {
    const LinExpr p = LinExpr::symbol(Symbol::p);
    const LinExpr q = LinExpr::symbol(Symbol::q);
    const LinExpr x = Rational(1, 3) * (p + q) - Rational(1, 3) * p;
    CHECK(x.coeff(Symbol::p).numerator() == 0);
    CHECK(x.coeff(Symbol::q) == Rational(1, 3));
    CHECK((x - x).is_zero());
    CHECK((-x).coeff(Symbol::q) == Rational(-1, 3));
}

TEST_CASE("evaluate and unitary conjugate") {
    SymbolValues v;
    v[Symbol::p] = Complex(0, 0.2);
    v[Symbol::tau] = Complex(0, -0.5);
    const LinExpr e = LinExpr::symbol(Symbol::p, 2) + LinExpr::symbol(Symbol::tau) + LinExpr(Rational(1, 2));
    CHECK(std::abs(e.evaluate(v) - Complex(0.5, -0.1)) < 1e-15);
    CHECK(std::abs(e.conjugate_on_unitary_locus().evaluate(v) - std::conj(e.evaluate(v))) < 1e-15);
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(LinExpr::parse("p +"), StructureError);
    CHECK_THROWS_AS(LinExpr::parse("x"), StructureError);
    CHECK_THROWS_AS(LinExpr::parse("1/0 p"), StructureError);
}
