#include "intertwine/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fft.hpp"
#include "intertwine/errors.hpp"

namespace intertwine {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t ipow(std::size_t base, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

void check_shape(int m, int N) {
    if (m < 1 || m > 3) throw ShapeError("SpectralField: dimension must be 1, 2 or 3");
    if (N < 0) throw ShapeError("SpectralField: band must be non-negative");
}

void check_same(const SpectralField& a, const SpectralField& b) {
    if (a.dim() != b.dim() || a.band() != b.band()) {
        throw ShapeError("SpectralField: dimension or band mismatch");
    }
}

// Multi-index position (entries 0..side-1) of flat index i.
void unflatten(std::size_t i, int m, int side, int* out) {
    for (int k = m - 1; k >= 0; --k) {
        out[k] = static_cast<int>(i % side);
        i /= side;
    }
}

}  // namespace

SpectralField::SpectralField(int m, int N) : m_(m), N_(N) {
    check_shape(m, N);
    coeffs_.assign(ipow(2 * N + 1, m), Complex(0.0));
}

SpectralField::SpectralField(int m, int N, std::vector<Complex> coeffs)
    : m_(m), N_(N), coeffs_(std::move(coeffs)) {
    check_shape(m, N);
    if (coeffs_.size() != ipow(2 * N + 1, m)) {
        throw ShapeError("SpectralField: coefficient count must be (2N+1)^m");
    }
    for (const auto& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw DomainError("SpectralField: non-finite coefficient");
        }
    }
}

std::size_t SpectralField::index(const std::vector<int>& n) const {
    if (static_cast<int>(n.size()) != m_) throw ShapeError("SpectralField: index length != m");
    std::size_t idx = 0;
    for (int k = 0; k < m_; ++k) {
        if (n[k] < -N_ || n[k] > N_) throw ShapeError("SpectralField: index outside band");
        idx = idx * side() + static_cast<std::size_t>(n[k] + N_);
    }
    return idx;
}

std::size_t SpectralField::stride(int k) const {
    if (k < 1 || k > m_) throw ShapeError("SpectralField: axis out of range");
    return ipow(side(), m_ - k);
}

double SpectralField::norm() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return std::sqrt(s);
}

double SpectralField::band_edge_energy() const {
    double total = 0.0;
    double edge = 0.0;
    int pos[3];
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const double e = std::norm(coeffs_[i]);
        total += e;
        unflatten(i, m_, side(), pos);
        for (int k = 0; k < m_; ++k) {
            if (pos[k] == 0 || pos[k] == 2 * N_) {
                edge += e;
                break;
            }
        }
    }
    return total > 0.0 ? edge / total : 0.0;
}

Complex SpectralField::evaluate(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != m_) throw ShapeError("evaluate: point dimension != m");
    const int L = side();
    std::vector<std::vector<Complex>> phase(m_, std::vector<Complex>(L));
    for (int k = 0; k < m_; ++k) {
        for (int j = 0; j < L; ++j) phase[k][j] = std::polar(1.0, (j - N_) * x[k]);
    }
    Complex acc = 0.0;
    int pos[3];
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        unflatten(i, m_, L, pos);
        Complex term = coeffs_[i];
        for (int k = 0; k < m_; ++k) term *= phase[k][pos[k]];
        acc += term;
    }
    return acc;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

SpectralField SpectralField::rebanded(int N2) const {
    SpectralField out(m_, N2);
    const int L = side();
    const int L2 = out.side();
    int pos[3];
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        unflatten(i, m_, L, pos);
        std::size_t j = 0;
        bool inside = true;
        for (int k = 0; k < m_; ++k) {
            const int n = pos[k] - N_;
            if (n < -N2 || n > N2) {
                inside = false;
                break;
            }
            j = j * L2 + static_cast<std::size_t>(n + N2);
        }
        if (inside) out.coeffs_[j] = coeffs_[i];
    }
    return out;
}

int transform_friendly_size(int n) {
    int best = 1;
    while (best < n) best *= 2;
    for (int a = 1; a <= best; a *= 2) {
        for (int b = a; b <= best; b *= 3) {
            for (int c = b; c <= best; c *= 5) {
                if (c >= n && c < best) best = c;
            }
        }
    }
    return best;
}

SpectralField analyze(const GridSamples& samples, int N) {
    const int m = samples.m;
    const int M = samples.M;
    check_shape(m, N);
    if (M < 2 * N + 1) throw ShapeError("analyze: grid has fewer than 2N+1 points per axis");
    if (samples.values.size() != ipow(M, m)) throw ShapeError("analyze: sample count != M^m");
    std::vector<Complex> data = samples.values;
    detail::fft_cube(data, m, M, -1);
    SpectralField F(m, N);
    const int L = F.side();
    const double scale = 1.0 / static_cast<double>(ipow(M, m));
    int pos[3];
    for (std::size_t i = 0; i < F.size(); ++i) {
        unflatten(i, m, L, pos);
        std::size_t src = 0;
        for (int k = 0; k < m; ++k) {
            const int n = pos[k] - N;
            src = src * M + static_cast<std::size_t>((n % M + M) % M);
        }
        F.coeffs()[i] = data[src] * scale;
    }
    return F;
}

GridSamples synthesize(const SpectralField& F, const GridSpec& grid) {
    const int m = F.dim();
    const int N = F.band();
    const int M = grid.resolution();
    if (grid.oversample < 1 || M < 2 * N + 1) {
        throw ShapeError("synthesize: grid resolution below 2N+1");
    }
    GridSamples out{m, M, std::vector<Complex>(ipow(M, m), Complex(0.0))};
    const int L = F.side();
    int pos[3];
    for (std::size_t i = 0; i < F.size(); ++i) {
        unflatten(i, m, L, pos);
        std::size_t dst = 0;
        for (int k = 0; k < m; ++k) {
            const int n = pos[k] - N;
            dst = dst * M + static_cast<std::size_t>((n % M + M) % M);
        }
        out.values[dst] = F.coeffs()[i];
    }
    detail::fft_cube(out.values, m, M, +1);
    return out;
}

Complex inner_product(const SpectralField& F, const SpectralField& G) {
    check_same(F, G);
    Complex acc = 0.0;
    const auto& a = F.coeffs();
    const auto& b = G.coeffs();
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return acc;
}

namespace {

int bump_grid_size(int N) { return transform_friendly_size(std::max(4 * N + 1, 96)); }

GridSamples bump_samples(int m, int M, const std::vector<AxisPair>& pairs, double gap,
                         int smoothness) {
    if (m < 1 || m > 3) throw ShapeError("bump field: dimension must be 1, 2 or 3");
    if (!(gap > 0.0 && gap < std::numbers::pi)) {
        throw DomainError("bump field: gap must lie in (0, pi)");
    }
    if (smoothness < 1) throw DomainError("bump field: smoothness must be a positive integer");
    for (const auto& [k, l] : pairs) {
        if (k < 1 || k > m || l < 1 || l > m || k == l) {
            throw DomainError("bump field: invalid axis pair");
        }
    }
    // profile at angle 2 pi j / M; differences of grid angles land on the grid
    std::vector<double> profile(M);
    for (int j = 0; j < M; ++j) {
        const double d = kTwoPi * j / M;
        const double u = (d - std::numbers::pi) / (std::numbers::pi - gap);
        profile[j] = std::abs(u) < 1.0 ? std::exp(smoothness * (1.0 - 1.0 / (1.0 - u * u))) : 0.0;
    }
    GridSamples s{m, M, std::vector<Complex>(ipow(M, m))};
    int pos[3];
    double peak = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        unflatten(i, m, M, pos);
        double v = 1.0;
        if (pairs.empty()) {
            for (int k = 0; k < m; ++k) v *= profile[pos[k]];
        } else {
            for (const auto& [k, l] : pairs) v *= profile[((pos[k - 1] - pos[l - 1]) % M + M) % M];
        }
        s.values[i] = v;
        peak = std::max(peak, v);
    }
    if (peak == 0.0) throw DomainError("bump field: support is empty");
    return s;
}

Complex gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    const double re = dist(rng);
    const double im = dist(rng);
    return {re, im};
}

void normalize(SpectralField& F) {
    const double n = F.norm();
    if (n == 0.0) throw DomainError("field has zero norm");
    F *= 1.0 / n;
}

}  // namespace

SpectralField diagonal_bump_field(int m, int N, const std::vector<AxisPair>& pairs, double gap,
                                  int smoothness) {
    const int M = bump_grid_size(N);
    return analyze(bump_samples(m, M, pairs, gap, smoothness), N);
}

SpectralField modulated_bump_field(int m, int N, const std::vector<AxisPair>& pairs, double gap,
                                   std::uint64_t seed, int smoothness) {
    const int M = bump_grid_size(N);
    GridSamples s = bump_samples(m, M, pairs, gap, smoothness);
    SpectralField mod(m, 3);
    std::mt19937_64 rng(seed);
    int pos[3];
    for (std::size_t i = 0; i < mod.size(); ++i) {
        unflatten(i, m, mod.side(), pos);
        int l1 = 0;
        for (int k = 0; k < m; ++k) l1 += std::abs(pos[k] - 3);
        mod.coeffs()[i] = gaussian(rng) * std::exp(-0.5 * l1);
    }
    const GridSamples f = synthesize(mod, GridSpec{M, 1});
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values[i] *= f.values[i];
    SpectralField F = analyze(s, N);
    normalize(F);
    return F;
}

SpectralField random_band_limited(int m, int N, double decay_rate, std::uint64_t seed) {
    if (!(decay_rate > 0.0)) throw DomainError("random_band_limited: decay_rate must be > 0");
    SpectralField F(m, N);
    std::mt19937_64 rng(seed);
    int pos[3];
    for (std::size_t i = 0; i < F.size(); ++i) {
        unflatten(i, m, F.side(), pos);
        int l1 = 0;
        for (int k = 0; k < m; ++k) l1 += std::abs(pos[k] - N);
        F.coeffs()[i] = gaussian(rng) * std::exp(-decay_rate * l1);
    }
    normalize(F);
    return F;
}

std::vector<AxisPair> all_diagonal_pairs(int m) {
    std::vector<AxisPair> out;
    for (int k = 1; k <= m; ++k) {
        for (int l = k + 1; l <= m; ++l) out.emplace_back(k, l);
    }
    return out;
}

}  // namespace intertwine
