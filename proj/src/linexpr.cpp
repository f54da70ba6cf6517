#include "intertwine/linexpr.hpp"

#include <cctype>
#include <tuple>

#include "intertwine/errors.hpp"

namespace intertwine {

namespace {

constexpr std::array<const char*, kSymbolCount> kNames = {"p", "q", "r", "theta", "tau"};

double to_double(Rational r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace

const char* symbol_name(Symbol s) { return kNames[static_cast<int>(s)]; }

std::string rational_to_string(Rational r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
    try {
        std::size_t used = 0;
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            const long long num = std::stoll(text, &used);
            if (used != text.size()) throw StructureError("bad rational: " + text);
            return Rational(num);
        }
        const std::string a = text.substr(0, slash);
        const std::string b = text.substr(slash + 1);
        const long long num = std::stoll(a, &used);
        if (used != a.size()) throw StructureError("bad rational: " + text);
        const long long den = std::stoll(b, &used);
        if (used != b.size() || den == 0) throw StructureError("bad rational: " + text);
        return Rational(num, den);
    } catch (const std::logic_error&) {
        throw StructureError("bad rational: " + text);
    }
}

LinExpr LinExpr::symbol(Symbol s, Rational coeff) {
    LinExpr e;
    e.coeffs_[static_cast<int>(s)] = coeff;
    return e;
}

bool LinExpr::is_zero() const {
    for (const auto& c : coeffs_) {
        if (c.numerator() != 0) return false;
    }
    return constant_.numerator() == 0;
}

LinExpr LinExpr::operator-() const {
    LinExpr e = *this;
    e *= Rational(-1);
    return e;
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    for (int i = 0; i < kSymbolCount; ++i) coeffs_[i] += o.coeffs_[i];
    constant_ += o.constant_;
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
    for (int i = 0; i < kSymbolCount; ++i) coeffs_[i] -= o.coeffs_[i];
    constant_ -= o.constant_;
    return *this;
}

LinExpr& LinExpr::operator*=(Rational k) {
    for (auto& c : coeffs_) c *= k;
    constant_ *= k;
    return *this;
}

bool LinExpr::operator<(const LinExpr& o) const {
    auto key = [](const LinExpr& e) {
        return std::tie(e.coeffs_[0], e.coeffs_[1], e.coeffs_[2], e.coeffs_[3], e.coeffs_[4],
                        e.constant_);
    };
    return key(*this) < key(o);
}

Complex LinExpr::evaluate(const SymbolValues& v) const {
    Complex acc = to_double(constant_);
    for (int i = 0; i < kSymbolCount; ++i) {
        if (coeffs_[i].numerator() != 0) acc += to_double(coeffs_[i]) * v.values[i];
    }
    return acc;
}

LinExpr LinExpr::conjugate_on_unitary_locus() const {
    LinExpr e = *this;
    for (auto& c : e.coeffs_) c = -c;
    return e;
}

std::string LinExpr::to_string() const {
    std::string out;
    auto append = [&out](Rational c, const std::string& name) {
        if (c.numerator() == 0) return;
        const bool negative = c.numerator() < 0;
        const Rational mag = negative ? -c : c;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        if (name.empty()) {
            out += rational_to_string(mag);
        } else {
            if (mag != Rational(1)) out += rational_to_string(mag) + " ";
            out += name;
        }
    };
    for (int i = 0; i < kSymbolCount; ++i) append(coeffs_[i], kNames[i]);
    append(constant_, "");
    return out.empty() ? "0" : out;
}

LinExpr LinExpr::parse(const std::string& text) {
    // Grammar: term (('+'|'-') term)*, term = [rational] [ ['*'] symbol ].
    LinExpr result;
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    bool first = true;
    skip();
    if (pos == text.size()) throw StructureError("empty linear expression");
    while (true) {
        skip();
        if (pos == text.size()) break;
        Rational sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') sign = -1;
            ++pos;
            skip();
        } else if (!first) {
            throw StructureError("expected + or - in linear expression: " + text);
        }
        first = false;
        std::string number;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) {
            number += text[pos++];
        }
        skip();
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            skip();
        }
        std::string name;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
            name += text[pos++];
        }
        if (number.empty() && name.empty()) {
            throw StructureError("malformed term in linear expression: " + text);
        }
        const Rational coeff = sign * (number.empty() ? Rational(1) : parse_rational(number));
        if (name.empty()) {
            result.constant_ += coeff;
            continue;
        }
        bool found = false;
        for (int i = 0; i < kSymbolCount; ++i) {
            if (name == kNames[i]) {
                result.coeffs_[i] += coeff;
                found = true;
            }
        }
        if (!found) throw StructureError("unknown symbol '" + name + "'");
    }
    return result;
}

}  // namespace intertwine
