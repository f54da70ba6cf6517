#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "intertwine/operators.hpp"
#include "intertwine/quadrature.hpp"
#include "intertwine/report.hpp"

namespace intertwine {

enum class DomainTag { SigmaUnitary, XiInterior, General };

/// Parameters of the Yang-Baxter relation.
///
/// SigmaUnitary requires every entry to be imaginary (|Re| <= 1e-14).
/// XiInterior reads (p, q, r) as (alpha, beta, gamma) and requires
/// Re alpha > 0, -1/2 < Re beta < 0, Re gamma > 0 and a zero sum.
struct ParameterPoint {
    Complex p, q, r, theta, tau;
    DomainTag tag = DomainTag::SigmaUnitary;

    void validate() const;  // DomainError when the tag's conditions fail
    SymbolValues values() const;
};

/// Seed of trial field `index` derived from a base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Test vector used by the operator checks: unit-norm modulated bump field
/// vanishing within 0.5 rad of every partial diagonal of T^m (every
/// coordinate bump on T^1).
SpectralField default_test_field(int m, int N, std::uint64_t seed);

/// `count` group elements with a = cosh(t) e^{i phi}, b = sinh(t) e^{i psi},
/// t uniform in [0.05, t_max].
std::vector<MoebiusElement> random_group_elements(int count, double t_max, std::uint64_t seed);

// Relative error between the quadrature of the circle beta integral and its
// closed form. Passing also needs the two closed forms to agree within
// 1e-12 (details.closed_form_agreement). DomainError unless
// alpha + beta + gamma = 1 within 1e-12.
CheckReport check_beta(Complex alpha, Complex beta, Complex gamma, Complex a, Complex b,
                       Complex c, const QuadratureConfig& quad, double tolerance = 1e-8);

// lambda_n against the kernel quadrature oracle, plus the same-path residual
// of apply_J on the mode z^n.
CheckReport check_eigen(long n, Complex p, const QuadratureConfig& quad,
                        double tolerance = 1e-6);

// max_{|n| <= n_max} |lambda_n lambda_{-n} - 2^{-2 i Im p}|.
CheckReport check_eigen_pairing(Complex p, long n_max, double tolerance = 1e-12);

// err_k = |lambda_k |k|^{Re p} 2^{i Im p} - 1| for k_min <= |k| <= k_max.
// residual = C = max_k |k| err_k; passes when the fitted log-log slope of
// err_k is at most -1/2 (so the O(1/|k|) envelope is not vacuous).
CheckReport check_eigen_asymptotics(Complex p, long k_min, long k_max);

// max over trials of | ||w F|| - ||F|| | / ||F|| on default test fields.
CheckReport check_unitary(const OperatorWord& w, int N, int trials, std::uint64_t seed,
                          double tolerance, const SymbolValues* values = nullptr);

// max_g || T_p(g) J(p) F - J(p) T_{-p}(g) F || / ||F|| on a smooth random field.
CheckReport check_intertwine_J(Complex p, const std::vector<MoebiusElement>& gs, int N,
                               std::uint64_t seed, double tolerance = 1e-5);

// max || R (T_p x T_q)(g) F - (T_q x T_p)(g) R F || / ||F|| over g and trials,
// bump fields on T^2. The right side moves T through the last multiplier
// with the cocycle identity; the directly sampled value is kept in details.
CheckReport check_intertwine_R(Complex sigma, Complex p, Complex q,
                               const std::vector<MoebiusElement>& gs, int N, int trials,
                               std::uint64_t seed, double tolerance = 1e-4);

// || J1(a) A12(b) J1(c) Psi - A12(-c) J1(-b) A12(-a) Psi || / ||Psi||,
// c = -a - b on the unitary locus, max over trials, for each N in Ns.
CheckReport check_star_triangle(Complex alpha, Complex beta, const std::vector<int>& Ns,
                                int trials, std::uint64_t seed, double tolerance = 1e-4);

// Weak form on the interior domain: <A12(b) J1(c) Psi, J1(a)* Phi> against
// <J1(-b) A12(-a) Psi, A12(-c)* Phi>, relative to the larger modulus.
CheckReport weak_star_triangle(Complex alpha, Complex beta, int N, std::uint64_t seed,
                               double tolerance = 1e-4);

// The weak residual along points whose real parts shrink by the factors in
// `scales` toward the imaginary axis; passes while it stays below tolerance.
CheckReport weak_star_triangle_boundary(Complex alpha, Complex beta, int N,
                                        const std::vector<double>& scales, std::uint64_t seed,
                                        double tolerance = 1e-4);

// Spectral <J1(a) A12(b) J1(c) Psi, Phi> against iterated singular
// quadrature of the underlying fourfold integral at a small band.
CheckReport weak_star_triangle_anchor(Complex alpha, Complex beta, int N, std::uint64_t seed,
                                      const QuadratureConfig& quad, double tolerance = 1e-2);

// Strong and weak Yang-Baxter residuals on T^3 bump fields over Ns.
CheckReport check_yang_baxter(const ParameterPoint& point, const std::vector<int>& Ns, int trials,
                              std::uint64_t seed, double strong_tolerance = 1e-2,
                              double weak_tolerance = 1e-3);

/// Runs a named check over Ns: "star-triangle" (alpha, beta),
/// "yang-baxter" (p, q, r, theta, tau), "unitary-r" (sigma, p, q) or
/// "beta" (alpha, beta; N-independent, flagged not applicable). Parameter
/// values are [re, im] pairs in `params`. DomainError for unknown names.
CheckReport convergence_study(const std::string& check, const std::vector<int>& Ns,
                              const nlohmann::json& params, int trials, std::uint64_t seed);

}  // namespace intertwine
