#include "mi.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace ncwave {

namespace {
const cplx I1{0.0, 1.0};
}

cplx plane_wave(double c, const ModelParams& p, double, double t) {
    return c * std::exp(I1 * (6.0 * std::pow(c, 4) * p.gamma + 2.0 * p.alpha2 * c * c) * t);
}

MiSystem mi_system(double k, double c, const ModelParams& p) {
    MiSystem s;
    s.k = k;
    s.c = c;
    const double c2 = c * c, k2 = k * k;
    s.beta = p.alpha2 * k2 / 2.0 + p.alpha1 * k * (6.0 * c2 - k2) - p.gamma * k2 * k2;
    s.a = s.beta - 6.0 * p.gamma * c2 * k2;
    s.b = -s.beta - 10.0 * p.gamma * c2 * k2 + 2.0 * c2 * (12.0 * c2 * p.gamma + 2.0 * p.alpha2);
    return s;
}

cplx growth_rate_closed(double k, double c, const ModelParams& p) {
    const double c2 = c * c, k2 = k * k;
    const double P = p.alpha2 * (-8.0 * c2 + k2) - 2.0 * p.alpha1 * k * (-6.0 * c2 + k2) -
                     2.0 * p.gamma * (24.0 * c2 * c2 - 10.0 * c2 * k2 + k2 * k2);
    const double beta1 = k * p.alpha2 - 2.0 * p.alpha1 * (-6.0 * c2 + k2) -
                         2.0 * p.gamma * k * (6.0 * c2 + k2);
    return std::abs(k) / 2.0 * std::sqrt(cplx(P * beta1, 0.0));
}

double growth_rate_numeric(double k, double c, const ModelParams& p) {
    const MiSystem s = mi_system(k, c, p);
    const double ab = s.a * s.b;
    return ab > 0.0 ? std::sqrt(ab) : 0.0;
}

std::vector<Band> unstable_band(double c, const ModelParams& p, double k_max,
                                std::size_t samples) {
    if (!(k_max > 0.0)) throw DimensionError("k_max must be positive");
    if (samples < 100) throw DimensionError("samples must be at least 100");
    const double thresh = 1e-12;
    auto unstable = [&](double k) { return growth_rate_numeric(k, c, p) > thresh; };
    auto refine = [&](double a, double b) {
        // a and b have different verdicts; return the boundary
        const bool ua = unstable(a);
        while (b - a > 1e-8) {
            const double mid = 0.5 * (a + b);
            if (unstable(mid) == ua) a = mid; else b = mid;
        }
        return 0.5 * (a + b);
    };
    std::vector<Band> out;
    const double h = 2.0 * k_max / static_cast<double>(samples - 1);
    bool in = false;
    double start = 0.0;
    double prev_k = -k_max;
    bool prev = unstable(prev_k);
    if (prev) { in = true; start = prev_k; }
    for (std::size_t i = 1; i < samples; ++i) {
        const double k = -k_max + h * static_cast<double>(i);
        const bool cur = unstable(k);
        if (cur != prev) {
            const double edge = refine(prev_k, k);
            if (cur) { in = true; start = edge; }
            else { out.push_back({start, edge}); in = false; }
        }
        prev = cur;
        prev_k = k;
    }
    if (in) out.push_back({start, k_max});
    return out;
}

std::array<cplx, 2> propagate(const MiSystem& s, const std::array<cplx, 2>& y0, double t) {
    // M^2 = ab I, so exp(Mt) = cosh(r t) I + sinh(r t)/r M with r = sqrt(ab).
    const cplx r = std::sqrt(cplx(s.a * s.b, 0.0));
    const cplx ch = std::cosh(r * t);
    const cplx sh = std::abs(r) < 1e-300 ? cplx(t, 0.0) : std::sinh(r * t) / r;
    return {ch * y0[0] + sh * s.a * y0[1], ch * y0[1] + sh * s.b * y0[0]};
}

double linearized_residual(const MiSystem& s, const std::array<cplx, 2>& y0, double t,
                           std::size_t steps) {
    auto f = [&](const std::array<cplx, 2>& y) {
        return std::array<cplx, 2>{s.a * y[1], s.b * y[0]};
    };
    auto axpy = [](const std::array<cplx, 2>& y, double h, const std::array<cplx, 2>& k) {
        return std::array<cplx, 2>{y[0] + h * k[0], y[1] + h * k[1]};
    };
    std::array<cplx, 2> y = y0;
    const double h = t / static_cast<double>(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const auto k1 = f(y);
        const auto k2 = f(axpy(y, h / 2, k1));
        const auto k3 = f(axpy(y, h / 2, k2));
        const auto k4 = f(axpy(y, h, k3));
        for (int j = 0; j < 2; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    const auto e = propagate(s, y0, t);
    return std::max(std::abs(e[0] - y[0]), std::abs(e[1] - y[1]));
}

}  // namespace ncwave
