#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>

#include <boost/rational.hpp>

#include "intertwine/specfun.hpp"

namespace intertwine {

using Rational = boost::rational<std::int64_t>;

enum class Symbol { p = 0, q = 1, r = 2, theta = 3, tau = 4 };
inline constexpr int kSymbolCount = 5;

const char* symbol_name(Symbol s);

/// Numeric values substituted for the symbols when a symbolic word is applied.
struct SymbolValues {
    std::array<Complex, kSymbolCount> values{};
    Complex operator[](Symbol s) const { return values[static_cast<int>(s)]; }
    Complex& operator[](Symbol s) { return values[static_cast<int>(s)]; }
};

/// Exact linear form c_p p + c_q q + c_r r + c_theta theta + c_tau tau + c_0.
class LinExpr {
public:
    LinExpr() = default;
    explicit LinExpr(Rational constant) : constant_(constant) {}
    static LinExpr symbol(Symbol s, Rational coeff = 1);

    Rational coeff(Symbol s) const { return coeffs_[static_cast<int>(s)]; }
    Rational constant() const { return constant_; }
    bool is_zero() const;

    LinExpr operator-() const;
    LinExpr& operator+=(const LinExpr& o);
    LinExpr& operator-=(const LinExpr& o);
    LinExpr& operator*=(Rational k);
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(Rational k, LinExpr a) { return a *= k; }
    friend LinExpr operator*(LinExpr a, Rational k) { return a *= k; }
    bool operator==(const LinExpr& o) const = default;
    // Lexicographic on (coefficients, constant); a total order for canonical sorting.
    bool operator<(const LinExpr& o) const;

    Complex evaluate(const SymbolValues& v) const;

    // Formal conjugate on the locus where every symbol is imaginary:
    // symbol coefficients flip sign, the real constant stays.
    LinExpr conjugate_on_unitary_locus() const;

    // Human form such as "theta - tau + 1/2 p + 1/2 q"; "0" for zero.
    std::string to_string() const;
    // Inverse of to_string (also accepts "*" between coefficient and symbol).
    // StructureError on malformed input.
    static LinExpr parse(const std::string& text);

private:
    std::array<Rational, kSymbolCount> coeffs_{};
    Rational constant_{0};
};

/// Operator exponent: a concrete complex number or an exact symbolic label.
using Exponent = std::variant<Complex, LinExpr>;

std::string rational_to_string(Rational r);
Rational parse_rational(const std::string& text);

}  // namespace intertwine
