#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "intertwine/linexpr.hpp"
#include "intertwine/spectral_field.hpp"

namespace intertwine {

/// Element of SU(1,1) acting on the circle by z -> (b + z conj(a)) / (a + z conj(b)).
struct MoebiusElement {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};

    // DomainError unless |a|^2 - |b|^2 = 1 within 1e-12.
    void validate() const;
    Complex map(Complex z) const { return (b + z * std::conj(a)) / (a + z * std::conj(b)); }
    // |a + z conj(b)|
    double cocycle(Complex z) const { return std::abs(a + z * std::conj(b)); }
    MoebiusElement inverse() const { return {std::conj(a), -b}; }
    // Matrix product of [[a, b], [conj b, conj a]] forms.
    MoebiusElement operator*(const MoebiusElement& o) const {
        return {a * o.a + b * std::conj(o.b), a * o.b + b * std::conj(o.a)};
    }
    // a = cosh(t) e^{i phi}, b = sinh(t) e^{i psi}
    static MoebiusElement from_params(double t, double phi, double psi);
};

enum class FactorKind { J, A, T };

/// One generator. For J and T only axis_k is used; A acts on the pair
/// (axis_k, axis_l). For T the exponent holds the representation label p.
struct OperatorFactor {
    FactorKind kind = FactorKind::J;
    int axis_k = 1;
    int axis_l = 0;
    Exponent exponent = Complex(0.0);
    MoebiusElement g;

    static OperatorFactor J(int k, Exponent alpha);
    static OperatorFactor A(int k, int l, Exponent alpha);
    static OperatorFactor T(int k, Complex p, const MoebiusElement& g);

    std::vector<int> axes() const;
    bool shares_axis(const OperatorFactor& o) const;
    bool operator==(const OperatorFactor& o) const;
    // Display form such as "J1(theta - tau)" or "A23(0.5i)".
    std::string label() const;
};

/// Ordered product of factors in application order: factors[0] acts first
/// (it is factor number 1, the rightmost one in written form).
struct OperatorWord {
    std::vector<OperatorFactor> factors;

    std::size_t size() const { return factors.size(); }
    int max_axis() const;
    bool is_symbolic() const;
    bool operator==(const OperatorWord& o) const { return factors == o.factors; }
    OperatorWord then(const OperatorWord& next) const;
};

/// Energy bookkeeping for operators whose exact output leaves the band.
struct TruncationLog {
    // one entry per A or T application, fraction of output energy dropped
    std::vector<double> discarded_fraction;
    std::vector<std::string> warnings;
};

/// Multiplies coefficient n by lambda_n(n_k, alpha).
SpectralField apply_J(int k, Complex alpha, const SpectralField& F);

/// Band-N projection of |z_k - z_l|^alpha F, as a convolution along
/// e_k - e_l with circle_power_coeff over all shifts |j| <= 2N (every
/// in-band coupling). DomainError for Re alpha <= -1.
SpectralField apply_A(int k, int l, Complex alpha, const SpectralField& F,
                      TruncationLog* log = nullptr);

/// T_p(g) on axis k: F(g z) |a + z conj(b)|^{-1+p}, with the pulled-back
/// series summed directly at mapped nodes of an oversampled grid and
/// re-analyzed to band N. Records an "AliasWarning" in the log when more than
/// 1e-4 of the output energy falls outside the band.
SpectralField apply_T(int k, Complex p, const MoebiusElement& g, const SpectralField& F,
                      TruncationLog* log = nullptr, int oversample = 4);

/// Symbolic exponents need `values`; StructureError otherwise.
SpectralField apply_factor(const OperatorFactor& f, const SpectralField& F,
                           const SymbolValues* values = nullptr, TruncationLog* log = nullptr);
SpectralField apply_word(const OperatorWord& w, const SpectralField& F,
                         const SymbolValues* values = nullptr, TruncationLog* log = nullptr);

Complex resolve(const Exponent& e, const SymbolValues* values);

/// Four-factor word of R(sigma) on axes (k, l) carrying T_p on k and T_q on l:
/// A_kl(sigma - (p+q)/2), J_l(-sigma + (p-q)/2), J_k(-sigma + (q-p)/2),
/// A_kl(sigma + (p+q)/2), in application order. No scalar prefactor.
OperatorWord r_matrix_word(Complex sigma, Complex p, Complex q, int k, int l);
OperatorWord r_matrix_word(const LinExpr& sigma, const LinExpr& p, const LinExpr& q, int k,
                           int l);

/// Ratio between the literal kernel constant 1/(4 C(a) C(b)) of R and the
/// product of the two J normalizations used by r_matrix_word,
/// a = -sigma + (q-p)/2, b = -sigma + (p-q)/2.
Complex r_matrix_literal_ratio(Complex sigma, Complex p, Complex q);

/// R_{kl}^{p,q}(sigma): maps T_p on axis k, T_q on axis l to the swapped pair.
struct RBlock {
    LinExpr sigma;
    Symbol p;
    Symbol q;
    int k;
    int l;
};

OperatorWord blocks_to_word(const std::vector<RBlock>& blocks);

/// Representation labels per axis after the blocks act (in order) on
/// `labels` (axis 1 first). StructureError when a block's (p, q) does not
/// match the current labels on its axes.
std::vector<Symbol> route_labels(const std::vector<RBlock>& blocks, std::vector<Symbol> labels);

/// The two sides of the Yang-Baxter relation on T^3, in application order.
std::vector<RBlock> yang_baxter_lhs_blocks();
std::vector<RBlock> yang_baxter_rhs_blocks();
OperatorWord yang_baxter_lhs();
OperatorWord yang_baxter_rhs();

/// Reversed word with J(alpha) -> J(conj alpha), A(alpha) -> A(conj alpha),
/// T_p(g) -> T_{-conj p}(g^{-1}). Symbolic exponents are conjugated as on
/// the locus where every symbol is imaginary.
OperatorWord word_adjoint(const OperatorWord& w);

nlohmann::json factor_to_json(const OperatorFactor& f);
OperatorFactor factor_from_json(const nlohmann::json& j);
nlohmann::json word_to_json(const OperatorWord& w);
OperatorWord word_from_json(const nlohmann::json& j);

/// 16 hex digits of FNV-1a over the compact JSON form.
std::string word_hash(const OperatorWord& w);

/// Written form, leftmost factor acts last: "A12(..) J1(..) ...".
std::string word_to_string(const OperatorWord& w);

}  // namespace intertwine
