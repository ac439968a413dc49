#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "lax.hpp"
#include "ncalgebra.hpp"

namespace ncwave {

/// c exp(i (6 c^4 gamma + 2 alpha2 c^2) t).
cplx plane_wave(double c, const ModelParams& params, double x, double t);

/// Linearised sideband system y_t = M y with M = [[0, a], [b, 0]].
struct MiSystem {
    double k = 0.0;
    double c = 0.0;
    double beta = 0.0;
    double a = 0.0;
    double b = 0.0;

    std::array<std::array<double, 2>, 2> matrix() const { return {{{0.0, a}, {b, 0.0}}}; }
};

MiSystem mi_system(double k, double c, const ModelParams& params);

/// Closed-form growth rate |k|/2 sqrt(P beta1), principal branch.
cplx growth_rate_closed(double k, double c, const ModelParams& params);
/// Max real part of the eigenvalues +-sqrt(ab).
double growth_rate_numeric(double k, double c, const ModelParams& params);

struct Band {
    double lo;
    double hi;
};

/// Maximal k-intervals in [-k_max, k_max] with positive growth, endpoints
/// refined by bisection to 1e-8.
std::vector<Band> unstable_band(double c, const ModelParams& params, double k_max,
                                std::size_t samples);

/// y(t) = exp(M t) y0.
std::array<cplx, 2> propagate(const MiSystem& s, const std::array<cplx, 2>& y0, double t);

/// Max deviation between exp(M t) y0 and a fixed-step RK4 integration of
/// y' = M y over [0, t].
double linearized_residual(const MiSystem& s, const std::array<cplx, 2>& y0, double t,
                           std::size_t steps = 2000);

}  // namespace ncwave
