#include "intertwine/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fft.hpp"
#include "intertwine/errors.hpp"

namespace intertwine {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_axis(const SpectralField& F, int k) {
    if (k < 1 || k > F.dim()) throw ShapeError("operator axis outside 1..m");
}

std::string complex_string(Complex z) {
    char buf[64];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.6g", z.real());
    } else if (z.real() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.6gi", z.imag());
    } else {
        std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
    }
    return buf;
}

std::string exponent_string(const Exponent& e) {
    if (const auto* le = std::get_if<LinExpr>(&e)) return le->to_string();
    return complex_string(std::get<Complex>(e));
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw StructureError("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

// out[n] += sum_{|j| <= 2N} c_j F[n - j e_k + j e_l]
SpectralField convolve_difference(int k, int l, const std::vector<Complex>& c,
                                  const SpectralField& F) {
    const int m = F.dim();
    const int N = F.band();
    const int L = F.side();
    const std::size_t sk = F.stride(k);
    const std::size_t sl = F.stride(l);
    std::size_t so = 0;
    int lo_count = 1;
    for (int o = 1; o <= m; ++o) {
        if (o != k && o != l) {
            so = F.stride(o);
            lo_count = L;
        }
    }
    SpectralField out(m, N);
    const Complex* src = F.coeffs().data();
    Complex* dst = out.coeffs().data();
    for (int j = -2 * N; j <= 2 * N; ++j) {
        const Complex cj = c[static_cast<std::size_t>(std::abs(j))];
        const int ik_lo = std::max(0, j);
        const int ik_hi = std::min(L, L + j);
        const int il_lo = std::max(0, -j);
        const int il_hi = std::min(L, L - j);
        for (int ik = ik_lo; ik < ik_hi; ++ik) {
            for (int il = il_lo; il < il_hi; ++il) {
                const std::size_t d0 = ik * sk + il * sl;
                const std::size_t s0 = (ik - j) * sk + (il + j) * sl;
                for (int io = 0; io < lo_count; ++io) {
                    dst[d0 + io * so] += cj * src[s0 + io * so];
                }
            }
        }
    }
    return out;
}

std::vector<Complex> power_coeffs(Complex alpha, int count) {
    std::vector<Complex> c(count);
    for (int j = 0; j < count; ++j) c[j] = circle_power_coeff(j, alpha);
    return c;
}

}  // namespace

void MoebiusElement::validate() const {
    const double det = std::norm(a) - std::norm(b);
    if (std::abs(det - 1.0) > 1e-12) {
        throw DomainError("MoebiusElement: |a|^2 - |b|^2 must equal 1");
    }
}

MoebiusElement MoebiusElement::from_params(double t, double phi, double psi) {
    return {std::polar(std::cosh(t), phi), std::polar(std::sinh(t), psi)};
}

OperatorFactor OperatorFactor::J(int k, Exponent alpha) {
    OperatorFactor f;
    f.kind = FactorKind::J;
    f.axis_k = k;
    f.exponent = std::move(alpha);
    return f;
}

OperatorFactor OperatorFactor::A(int k, int l, Exponent alpha) {
    if (k == l) throw StructureError("A factor needs two distinct axes");
    OperatorFactor f;
    f.kind = FactorKind::A;
    f.axis_k = std::min(k, l);
    f.axis_l = std::max(k, l);
    f.exponent = std::move(alpha);
    return f;
}

OperatorFactor OperatorFactor::T(int k, Complex p, const MoebiusElement& g) {
    g.validate();
    OperatorFactor f;
    f.kind = FactorKind::T;
    f.axis_k = k;
    f.exponent = p;
    f.g = g;
    return f;
}

std::vector<int> OperatorFactor::axes() const {
    if (kind == FactorKind::A) return {axis_k, axis_l};
    return {axis_k};
}

bool OperatorFactor::shares_axis(const OperatorFactor& o) const {
    for (int x : axes()) {
        for (int y : o.axes()) {
            if (x == y) return true;
        }
    }
    return false;
}

bool OperatorFactor::operator==(const OperatorFactor& o) const {
    if (kind != o.kind || axis_k != o.axis_k || axis_l != o.axis_l || exponent != o.exponent) {
        return false;
    }
    return kind != FactorKind::T || (g.a == o.g.a && g.b == o.g.b);
}

std::string OperatorFactor::label() const {
    std::string name;
    switch (kind) {
        case FactorKind::J: name = "J" + std::to_string(axis_k); break;
        case FactorKind::A: name = "A" + std::to_string(axis_k) + std::to_string(axis_l); break;
        case FactorKind::T: name = "T" + std::to_string(axis_k); break;
    }
    return name + "(" + exponent_string(exponent) + ")";
}

int OperatorWord::max_axis() const {
    int m = 0;
    for (const auto& f : factors) {
        for (int a : f.axes()) m = std::max(m, a);
    }
    return m;
}

bool OperatorWord::is_symbolic() const {
    return std::any_of(factors.begin(), factors.end(),
                       [](const OperatorFactor& f) { return std::holds_alternative<LinExpr>(f.exponent); });
}

OperatorWord OperatorWord::then(const OperatorWord& next) const {
    OperatorWord w = *this;
    w.factors.insert(w.factors.end(), next.factors.begin(), next.factors.end());
    return w;
}

SpectralField apply_J(int k, Complex alpha, const SpectralField& F) {
    check_axis(F, k);
    const int N = F.band();
    const int L = F.side();
    std::vector<Complex> lam(L);
    for (int j = 0; j <= N; ++j) {
        lam[N + j] = lambda_n(j, alpha);
        lam[N - j] = lam[N + j];
    }
    SpectralField out = F;
    const std::size_t sk = F.stride(k);
    auto& c = out.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= lam[(i / sk) % L];
    return out;
}

SpectralField apply_A(int k, int l, Complex alpha, const SpectralField& F, TruncationLog* log) {
    check_axis(F, k);
    check_axis(F, l);
    if (k == l) throw ShapeError("apply_A: axes must differ");
    if (!(alpha.real() > -1.0)) throw DomainError("apply_A: requires Re alpha > -1");
    const int count = 2 * F.band() + 1;
    SpectralField out = convolve_difference(k, l, power_coeffs(alpha, count), F);
    if (log) {
        // <|z_k - z_l|^{2 Re alpha} F, F> is the exact output energy; F is
        // band-limited so the in-band convolution evaluates it exactly.
        const double two_re = 2.0 * alpha.real();
        double exact = 0.0;
        if (two_re == 0.0) {
            exact = F.norm() * F.norm();
        } else {
            const SpectralField w = convolve_difference(k, l, power_coeffs(two_re, count), F);
            exact = inner_product(w, F).real();
        }
        const double kept = out.norm() * out.norm();
        log->discarded_fraction.push_back(exact > 0.0 ? std::max(0.0, 1.0 - kept / exact) : 0.0);
    }
    return out;
}

SpectralField apply_T(int k, Complex p, const MoebiusElement& g, const SpectralField& F,
                      TruncationLog* log, int oversample) {
    check_axis(F, k);
    g.validate();
    if (oversample < 1) throw ShapeError("apply_T: oversample must be >= 1");
    const int N = F.band();
    const int L = F.side();
    const int M = transform_friendly_size(oversample * L);
    // E[j][n] = |a + z_j conj b|^{-1+p} (g z_j)^{n}, n = -N..N
    std::vector<Complex> E(static_cast<std::size_t>(M) * L);
    for (int j = 0; j < M; ++j) {
        const Complex z = std::polar(1.0, kTwoPi * j / M);
        const Complex w = g.map(z);
        const Complex weight = abs_pow(g.cocycle(z), p - 1.0);
        const Complex w_unit = w / std::abs(w);
        Complex power = std::pow(std::conj(w_unit), N);
        for (int n = 0; n < L; ++n) {
            E[static_cast<std::size_t>(j) * L + n] = weight * power;
            power *= w_unit;
        }
    }
    const std::size_t sk = F.stride(k);
    const std::size_t lines = F.size() / L;
    std::vector<Complex> data(lines * M);
    std::vector<std::size_t> base(lines);
    {
        // first index of every line along axis k
        std::size_t idx = 0;
        for (std::size_t i = 0; i < F.size(); ++i) {
            if ((i / sk) % L == 0) base[idx++] = i;
        }
    }
    const auto& c = F.coeffs();
    std::vector<Complex> line(L);
    for (std::size_t ln = 0; ln < lines; ++ln) {
        for (int n = 0; n < L; ++n) line[n] = c[base[ln] + n * sk];
        for (int j = 0; j < M; ++j) {
            const Complex* row = &E[static_cast<std::size_t>(j) * L];
            Complex acc = 0.0;
            for (int n = 0; n < L; ++n) acc += row[n] * line[n];
            data[ln * M + j] = acc;
        }
    }
    detail::fft_batch(data, M, static_cast<int>(lines), -1);
    SpectralField out(F.dim(), N);
    auto& o = out.coeffs();
    double total = 0.0;
    double kept = 0.0;
    const double scale = 1.0 / M;
    for (std::size_t ln = 0; ln < lines; ++ln) {
        for (int j = 0; j < M; ++j) total += std::norm(data[ln * M + j] * scale);
        for (int n = -N; n <= N; ++n) {
            const Complex v = data[ln * M + ((n % M) + M) % M] * scale;
            o[base[ln] + (n + N) * sk] = v;
            kept += std::norm(v);
        }
    }
    const double dropped = total > 0.0 ? std::max(0.0, 1.0 - kept / total) : 0.0;
    if (log) {
        log->discarded_fraction.push_back(dropped);
        if (dropped > 1e-4) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "AliasWarning: T on axis %d left %.3e of the energy outside the band",
                          k, dropped);
            log->warnings.emplace_back(buf);
        }
    }
    return out;
}

Complex resolve(const Exponent& e, const SymbolValues* values) {
    if (const auto* z = std::get_if<Complex>(&e)) return *z;
    if (!values) throw StructureError("symbolic exponent applied without symbol values");
    return std::get<LinExpr>(e).evaluate(*values);
}

SpectralField apply_factor(const OperatorFactor& f, const SpectralField& F,
                           const SymbolValues* values, TruncationLog* log) {
    const Complex e = resolve(f.exponent, values);
    switch (f.kind) {
        case FactorKind::J: return apply_J(f.axis_k, e, F);
        case FactorKind::A: return apply_A(f.axis_k, f.axis_l, e, F, log);
        case FactorKind::T: return apply_T(f.axis_k, e, f.g, F, log);
    }
    throw StructureError("unknown factor kind");
}

SpectralField apply_word(const OperatorWord& w, const SpectralField& F, const SymbolValues* values,
                         TruncationLog* log) {
    if (w.max_axis() > F.dim()) throw ShapeError("apply_word: word axes exceed field dimension");
    SpectralField cur = F;
    for (const auto& f : w.factors) cur = apply_factor(f, cur, values, log);
    return cur;
}

OperatorWord r_matrix_word(Complex sigma, Complex p, Complex q, int k, int l) {
    const OperatorWord w{{OperatorFactor::A(k, l, sigma - 0.5 * (p + q)),
                          OperatorFactor::J(l, -sigma + 0.5 * (p - q)),
                          OperatorFactor::J(k, -sigma + 0.5 * (q - p)),
                          OperatorFactor::A(k, l, sigma + 0.5 * (p + q))}};
    for (const auto& f : w.factors) {
        const Complex e = std::get<Complex>(f.exponent);
        if (f.kind == FactorKind::J) (void)lambda_n(0, e);  // PoleError at a pole of the factor
    }
    return w;
}

OperatorWord r_matrix_word(const LinExpr& sigma, const LinExpr& p, const LinExpr& q, int k,
                           int l) {
    const Rational half(1, 2);
    return OperatorWord{{OperatorFactor::A(k, l, sigma - half * (p + q)),
                         OperatorFactor::J(l, -sigma + half * (p - q)),
                         OperatorFactor::J(k, -sigma + half * (q - p)),
                         OperatorFactor::A(k, l, sigma + half * (p + q))}};
}

Complex r_matrix_literal_ratio(Complex sigma, Complex p, Complex q) {
    const Complex a = -sigma + 0.5 * (q - p);
    const Complex b = -sigma + 0.5 * (p - q);
    const Complex literal = 1.0 / (4.0 * c_factor(a) * c_factor(b));
    const Complex spectral = (1.0 / (2.0 * c_factor(a))) * (1.0 / (2.0 * c_factor(b)));
    return literal / spectral;
}

OperatorWord blocks_to_word(const std::vector<RBlock>& blocks) {
    OperatorWord w;
    for (const auto& b : blocks) {
        w = w.then(r_matrix_word(b.sigma, LinExpr::symbol(b.p), LinExpr::symbol(b.q), b.k, b.l));
    }
    return w;
}

std::vector<Symbol> route_labels(const std::vector<RBlock>& blocks, std::vector<Symbol> labels) {
    for (const auto& b : blocks) {
        if (b.k < 1 || b.l < 1 || b.k > static_cast<int>(labels.size()) ||
            b.l > static_cast<int>(labels.size())) {
            throw StructureError("route_labels: block axis outside the label list");
        }
        if (labels[b.k - 1] != b.p || labels[b.l - 1] != b.q) {
            throw StructureError("route_labels: block superscripts do not match the current labels");
        }
        std::swap(labels[b.k - 1], labels[b.l - 1]);
    }
    return labels;
}

std::vector<RBlock> yang_baxter_lhs_blocks() {
    const auto th = LinExpr::symbol(Symbol::theta);
    const auto ta = LinExpr::symbol(Symbol::tau);
    return {{ta, Symbol::q, Symbol::r, 2, 3},
            {th, Symbol::p, Symbol::r, 1, 2},
            {th - ta, Symbol::p, Symbol::q, 2, 3}};
}

std::vector<RBlock> yang_baxter_rhs_blocks() {
    const auto th = LinExpr::symbol(Symbol::theta);
    const auto ta = LinExpr::symbol(Symbol::tau);
    return {{th - ta, Symbol::p, Symbol::q, 1, 2},
            {th, Symbol::p, Symbol::r, 2, 3},
            {ta, Symbol::q, Symbol::r, 1, 2}};
}

OperatorWord yang_baxter_lhs() { return blocks_to_word(yang_baxter_lhs_blocks()); }

OperatorWord yang_baxter_rhs() { return blocks_to_word(yang_baxter_rhs_blocks()); }

OperatorWord word_adjoint(const OperatorWord& w) {
    OperatorWord out;
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
        OperatorFactor f = *it;
        if (const auto* le = std::get_if<LinExpr>(&f.exponent)) {
            f.exponent = le->conjugate_on_unitary_locus();
            if (f.kind == FactorKind::T) f.exponent = -std::get<LinExpr>(f.exponent);
        } else {
            const Complex e = std::conj(std::get<Complex>(f.exponent));
            f.exponent = f.kind == FactorKind::T ? -e : e;
        }
        if (f.kind == FactorKind::T) f.g = f.g.inverse();
        out.factors.push_back(f);
    }
    return out;
}

nlohmann::json factor_to_json(const OperatorFactor& f) {
    nlohmann::json j;
    switch (f.kind) {
        case FactorKind::J: j["kind"] = "J"; break;
        case FactorKind::A: j["kind"] = "A"; break;
        case FactorKind::T: j["kind"] = "T"; break;
    }
    j["axes"] = f.axes();
    if (const auto* le = std::get_if<LinExpr>(&f.exponent)) {
        j["exponent"] = {{"linexpr", le->to_string()}};
    } else {
        j["exponent"] = complex_json(std::get<Complex>(f.exponent));
    }
    if (f.kind == FactorKind::T) j["g"] = {{"a", complex_json(f.g.a)}, {"b", complex_json(f.g.b)}};
    return j;
}

OperatorFactor factor_from_json(const nlohmann::json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        const auto axes = j.at("axes").get<std::vector<int>>();
        const auto& e = j.at("exponent");
        Exponent ex = e.is_object() ? Exponent(LinExpr::parse(e.at("linexpr").get<std::string>()))
                                    : Exponent(complex_from_json(e));
        for (int a : axes) {
            if (a < 1 || a > 3) throw StructureError("factor axis outside 1..3");
        }
        if (kind == "J" && axes.size() == 1) return OperatorFactor::J(axes[0], ex);
        if (kind == "A" && axes.size() == 2) return OperatorFactor::A(axes[0], axes[1], ex);
        if (kind == "T" && axes.size() == 1 && std::holds_alternative<Complex>(ex)) {
            const MoebiusElement g{complex_from_json(j.at("g").at("a")),
                                   complex_from_json(j.at("g").at("b"))};
            return OperatorFactor::T(axes[0], std::get<Complex>(ex), g);
        }
        throw StructureError("malformed factor record: " + j.dump());
    } catch (const nlohmann::json::exception& e) {
        throw StructureError(std::string("factor record: ") + e.what());
    }
}

nlohmann::json word_to_json(const OperatorWord& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : w.factors) arr.push_back(factor_to_json(f));
    return arr;
}

OperatorWord word_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw StructureError("operator word must be a JSON list");
    OperatorWord w;
    for (const auto& rec : j) w.factors.push_back(factor_from_json(rec));
    return w;
}

std::string word_hash(const OperatorWord& w) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : word_to_json(w).dump()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string word_to_string(const OperatorWord& w) {
    std::string out;
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
        if (!out.empty()) out += " ";
        out += it->label();
    }
    return out.empty() ? "1" : out;
}

}  // namespace intertwine
