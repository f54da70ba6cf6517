#include "intertwine/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "intertwine/errors.hpp"

namespace intertwine {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// log(1 + e^y) without overflow.
double softplus(double y) { return std::max(y, 0.0) + std::log1p(std::exp(-std::abs(y))); }

double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

// log |e^{i theta} - e^{i phi}| given the angular distance d in [0, 2 pi].
double log_chord(double d) {
    if (d > kPi) d = kTwoPi - d;
    return std::log(2.0) + std::log(0.5 * d) + log_sinc(0.5 * d);
}

double log_chord_from_log(double d, double log_d) {
    if (d > 1.0) return log_chord(d);
    return log_d + log_sinc(0.5 * d);
}

// e^w - 1 for complex w, accurate when w is small.
Complex expm1_complex(Complex w) {
    const double s = std::sin(0.5 * w.imag());
    const double re = std::expm1(w.real()) * std::cos(w.imag()) - 2.0 * s * s;
    const double im = std::exp(w.real()) * std::sin(w.imag());
    return {re, im};
}

}  // namespace

void QuadratureConfig::validate() const {
    if (node_count < 8) throw DomainError("QuadratureConfig: node_count must be >= 8");
    if (!(target_rel_err > 0.0)) throw DomainError("QuadratureConfig: target_rel_err must be > 0");
}

double log_sinc(double x) {
    if (x < 1e-2) {
        const double x2 = x * x;
        return -x2 / 6.0 - x2 * x2 / 180.0 - x2 * x2 * x2 / 2835.0;
    }
    return std::log(std::sin(x) / x);
}

std::vector<ArcNode> arc_rule(double length, double mu_lo, double mu_hi,
                              const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(length > 0.0)) throw DomainError("arc_rule: length must be positive");
    const double mu = std::min(mu_lo, mu_hi);
    if (!(mu > 0.0)) throw DomainError("arc_rule: endpoint exponent not integrable");
    // Offsets shrink like L exp(-pi sinh|t|); the endpoint mass left out
    // beyond |t| = T is about delta^mu / mu.
    const double need = std::log(1.0 / (cfg.target_rel_err * std::min(mu, 1.0))) +
                        mu * std::max(std::log(length), 0.0);
    const double t_max = std::max(3.0, std::asinh(need / (kPi * mu)) + 0.5);
    const int n = cfg.node_count;
    const double h = 2.0 * t_max / (n - 1);
    const double log_l = std::log(length);
    std::vector<ArcNode> nodes;
    nodes.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = -t_max + h * i;
        const double s = 0.5 * kPi * std::sinh(t);
        ArcNode node{};
        node.log_offset_lo = log_l - softplus(-2.0 * s);
        node.log_offset_hi = log_l - softplus(2.0 * s);
        node.offset_lo = std::exp(node.log_offset_lo);
        node.offset_hi = std::exp(node.log_offset_hi);
        node.log_weight = std::log(h) + log_l + std::log(0.5 * kPi) + log_cosh(t) -
                          std::log(2.0) - 2.0 * log_cosh(s);
        nodes.push_back(node);
    }
    return nodes;
}

Complex circle_singular_integral(const std::vector<SingularPoint>& points,
                                 const std::function<Complex(double)>& smooth,
                                 const QuadratureConfig& cfg) {
    cfg.validate();
    for (const auto& pt : points) {
        if (!(pt.exponent.real() > -1.0)) {
            throw DomainError("circle_singular_integral: exponent with Re <= -1");
        }
    }
    std::vector<SingularPoint> pts = points;
    for (auto& pt : pts) {
        pt.angle = std::fmod(pt.angle, kTwoPi);
        if (pt.angle < 0.0) pt.angle += kTwoPi;
    }
    std::sort(pts.begin(), pts.end(),
              [](const SingularPoint& x, const SingularPoint& y) { return x.angle < y.angle; });

    auto log_factor = [&](double theta, std::size_t skip_a, std::size_t skip_b) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == skip_a || j == skip_b) continue;
            double d = std::fmod(std::abs(theta - pts[j].angle), kTwoPi);
            if (d == 0.0) throw DegenerateError("circle_singular_integral: node on a singular point");
            acc += pts[j].exponent * log_chord(d);
        }
        return acc;
    };

    if (pts.empty() || cfg.grading == Grading::PeriodicTrapezoid) {
        const int n = cfg.node_count;
        const double h = kTwoPi / n;
        Complex sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double theta = h * (i + 0.5);
            sum += std::exp(log_factor(theta, pts.size(), pts.size())) * smooth(theta);
        }
        return sum * h;
    }

    Complex total = 0.0;
    const std::size_t count = pts.size();
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t next = (i + 1) % count;
        const double start = pts[i].angle;
        double length = (next == i) ? kTwoPi : pts[next].angle - start;
        if (next == 0 && count > 1) length += kTwoPi;
        if (!(length > 0.0)) throw DegenerateError("circle_singular_integral: coincident points");
        const Complex e_lo = pts[i].exponent;
        const Complex e_hi = pts[next].exponent;
        const auto nodes = arc_rule(length, e_lo.real() + 1.0, e_hi.real() + 1.0, cfg);
        Complex arc = 0.0;
        for (const auto& node : nodes) {
            const double theta = start + node.offset_lo;
            Complex log_w = node.log_weight;
            if (next == i) {
                const bool lo_nearer = node.offset_lo <= node.offset_hi;
                const double d = lo_nearer ? node.offset_lo : node.offset_hi;
                const double ld = lo_nearer ? node.log_offset_lo : node.log_offset_hi;
                log_w += e_lo * log_chord_from_log(d, ld);
            } else {
                log_w += e_lo * log_chord_from_log(node.offset_lo, node.log_offset_lo);
                log_w += e_hi * log_chord_from_log(node.offset_hi, node.log_offset_hi);
            }
            log_w += log_factor(theta, i, next);
            arc += std::exp(log_w) * smooth(theta);
        }
        total += arc;
    }
    return total;
}

Complex beta_integral_quadrature(Complex alpha, Complex beta, Complex a, Complex b, Complex c,
                                 const QuadratureConfig& cfg) {
    const Complex gam = 1.0 - alpha - beta;
    std::vector<SingularPoint> pts = {
        {std::arg(a), alpha - 1.0}, {std::arg(b), beta - 1.0}, {std::arg(c), gam - 1.0}};
    return circle_singular_integral(pts, [](double) { return Complex(1.0); }, cfg);
}

Complex circle_power_coeff_quadrature(long n, Complex alpha, const QuadratureConfig& cfg) {
    const double dn = static_cast<double>(n);
    auto phase = [dn](double theta) { return std::polar(1.0, -dn * theta); };
    return circle_singular_integral({{0.0, alpha}}, phase, cfg) / kTwoPi;
}

Complex kernel_eigenvalue_quadrature(long n, Complex p, const QuadratureConfig& cfg) {
    if (!(p.real() > -1.0)) throw DomainError("kernel_eigenvalue_quadrature: needs Re p > -1");
    const double dn = static_cast<double>(n);
    // int_0^pi theta^{-1+p} [ (2 sin(theta/2) / theta)^{-1+p} cos(n theta) - 1 ] d theta
    // + pi^p / p; the bracket is O(theta^2) at 0.
    const auto nodes = arc_rule(kPi, p.real() + 2.0, 1.0, cfg);
    Complex integral = 0.0;
    for (const auto& node : nodes) {
        const double theta = node.offset_lo;
        const Complex w = (p - 1.0) * log_sinc(0.5 * theta);
        const double sn = std::sin(0.5 * dn * theta);
        const Complex bracket = expm1_complex(w) * std::cos(dn * theta) - 2.0 * sn * sn;
        integral += std::exp(node.log_weight + (p - 1.0) * node.log_offset_lo) * bracket;
    }
    const Complex total = integral + std::exp(p * std::log(kPi)) / p;
    return total / c_factor(p);
}

}  // namespace intertwine
