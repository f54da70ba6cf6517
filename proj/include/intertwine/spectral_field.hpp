#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "intertwine/specfun.hpp"

namespace intertwine {

/// Truncated Fourier coefficients of a function on the torus T^m, m <= 3.
///
/// Coefficient of prod_k z_k^{n_k} for n in {-N..N}^m, stored row-major with
/// axis 1 slowest and position n_k + N along each axis. The pairing uses the
/// normalized measure, so norm() is the L^2(T^m) norm.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(int m, int N);
    SpectralField(int m, int N, std::vector<Complex> coeffs);

    int dim() const { return m_; }
    int band() const { return N_; }
    int side() const { return 2 * N_ + 1; }
    std::size_t size() const { return coeffs_.size(); }

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    std::vector<Complex>& coeffs() { return coeffs_; }

    // Multi-index n (entries in -N..N, length m) to flat position.
    std::size_t index(const std::vector<int>& n) const;
    Complex at(const std::vector<int>& n) const { return coeffs_[index(n)]; }
    Complex& at(const std::vector<int>& n) { return coeffs_[index(n)]; }
    // Stride of axis k (1-based) in the flat layout.
    std::size_t stride(int k) const;

    double norm() const;
    // Fraction of the squared norm on the outer shell max_k |n_k| = N.
    double band_edge_energy() const;
    // Point value sum_n F(n) prod_k e^{i n_k x_k}; x has length m.
    Complex evaluate(const std::vector<double>& x) const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(Complex s);
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(Complex s, SpectralField a) { return a *= s; }

    // Same coefficients re-indexed into a band N2 (zero padded or truncated).
    SpectralField rebanded(int N2) const;

private:
    int m_ = 0;
    int N_ = 0;
    std::vector<Complex> coeffs_;
};

struct GridSpec {
    int points_per_axis = 0;
    int oversample = 1;
    // Samples per axis actually used: points_per_axis * oversample.
    int resolution() const { return points_per_axis * oversample; }
};

/// Values on the uniform grid x_j = 2 pi j / M, row-major, axis 1 slowest.
struct GridSamples {
    int m = 0;
    int M = 0;
    std::vector<Complex> values;
};

/// Smallest 2^a 3^b 5^c that is >= n.
int transform_friendly_size(int n);

/// Fourier coefficients |n_k| <= N of grid samples. ShapeError if the grid
/// has fewer than 2N+1 points per axis or the sample count is inconsistent.
SpectralField analyze(const GridSamples& samples, int N);

/// Values of F on the grid. ShapeError if the resolution is below 2N+1.
GridSamples synthesize(const SpectralField& F, const GridSpec& grid);

/// Sum_n F(n) conj(G(n)). ShapeError on mismatched dimension or band.
Complex inner_product(const SpectralField& F, const SpectralField& G);

using AxisPair = std::pair<int, int>;

/// Band-N projection of prod_{(k,l)} b(x_k - x_l), where b is the C^infinity
/// profile exp(s (1 - 1/(1 - u^2))), u = (d - pi)/(pi - gap), d = angle
/// difference mod 2 pi. It vanishes exactly where |arg(z_k/z_l)| <= gap for
/// a listed pair. With no pairs, the product of b(x_k) over the coordinates
/// is used instead. DomainError if the support is empty or arguments are
/// out of range.
///
/// s = 3 by default: with s = 1 the band-64 projection still reaches ~1e-6
/// inside the vanishing set, with s = 3 it stays near 2e-10.
inline constexpr int kDefaultBumpSmoothness = 3;
SpectralField diagonal_bump_field(int m, int N, const std::vector<AxisPair>& pairs, double gap,
                                  int smoothness = kDefaultBumpSmoothness);

/// Unit-norm bump field multiplied by a seeded smooth random factor with
/// modes |n_k| <= 3 and amplitudes exp(-|n|_1 / 2). Vanishing near the
/// listed diagonals is preserved exactly.
SpectralField modulated_bump_field(int m, int N, const std::vector<AxisPair>& pairs, double gap,
                                   std::uint64_t seed, int smoothness = kDefaultBumpSmoothness);

/// Unit-norm field with complex gaussian coefficients scaled by
/// exp(-decay_rate |n|_1); deterministic per seed.
SpectralField random_band_limited(int m, int N, double decay_rate, std::uint64_t seed);

/// Every diagonal pair (k,l), k < l, of T^m.
std::vector<AxisPair> all_diagonal_pairs(int m);

}  // namespace intertwine
