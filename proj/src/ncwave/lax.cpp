#include "lax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace ncwave {

namespace {

const cplx I1{0.0, 1.0};

ComplexMatrix block2(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                     const ComplexMatrix& d) {
    const std::size_t m = a.rows();
    ComplexMatrix r(2 * m, 2 * m);
    place(r, a, 0, 0);
    place(r, b, 0, m);
    place(r, c, m, 0);
    place(r, d, m, m);
    return r;
}

}  // namespace

std::optional<Reduction> parse_reduction(const std::string& name) {
    if (name == "nls") return Reduction::nls;
    if (name == "hirota") return Reduction::hirota;
    if (name == "lpd") return Reduction::lpd;
    if (name == "mkdv") return Reduction::mkdv;
    if (name == "none") return Reduction::none;
    return std::nullopt;
}

std::string reduction_name(Reduction r) {
    switch (r) {
        case Reduction::nls: return "nls";
        case Reduction::hirota: return "hirota";
        case Reduction::lpd: return "lpd";
        case Reduction::mkdv: return "mkdv";
        case Reduction::none: break;
    }
    return "none";
}

ModelParams apply_reduction(ModelParams p, Reduction r) {
    switch (r) {
        case Reduction::nls: p.alpha1 = 0.0; p.gamma = 0.0; break;
        case Reduction::hirota: p.gamma = 0.0; break;
        case Reduction::lpd: p.alpha1 = 0.0; p.alpha2 = 0.0; break;
        case Reduction::mkdv: p.alpha2 = 0.0; p.gamma = 0.0; break;
        case Reduction::none: break;
    }
    return p;
}

bool satisfies_reduction(const ModelParams& p, Reduction r) {
    const ModelParams q = apply_reduction(p, r);
    return q.alpha1 == p.alpha1 && q.alpha2 == p.alpha2 && q.gamma == p.gamma;
}

cplx Seed::t_coefficient() const {
    const auto& p = params;
    return 2.0 * lambda * lambda * (4.0 * p.gamma * lambda * lambda - 2.0 * lambda * p.alpha1 - p.alpha2);
}

cplx Seed::zeta(double x, double t) const { return -lambda * x + t_coefficient() * t; }
cplx Seed::phi(double x, double t) const { return std::exp(I1 * zeta(x, t)); }
cplx Seed::chi(double x, double t) const { return std::exp(-I1 * zeta(x, t)); }

Seed seed(cplx lambda, const ModelParams& params) { return Seed{lambda, params}; }

Jet Jet::zero(std::size_t m) {
    ComplexMatrix z(m, m);
    return Jet{z, z, z, z, z};
}

ComplexMatrix LaxMatrices::spatial() const { return I1 * lambda * J + U; }
ComplexMatrix LaxMatrices::temporal() const { return B + Vp; }

LaxMatrices lax_matrices(const Jet& jet, cplx lambda, const ModelParams& params, VpForm form) {
    const std::size_t m = jet.dim();
    for (const ComplexMatrix* e : {&jet.ux, &jet.uxx, &jet.uxxx})
        if (e->rows() != m || e->cols() != m || !jet.u.square())
            throw DimensionError("lax_matrices: jet entries must share one square shape");

    const double a1 = params.alpha1, a2 = params.alpha2, g = params.gamma;
    const ComplexMatrix Id = ComplexMatrix::identity(m);
    const ComplexMatrix& u = jet.u;
    const ComplexMatrix& ux = jet.ux;
    const ComplexMatrix& uxx = jet.uxx;
    const ComplexMatrix& uxxx = jet.uxxx;
    const ComplexMatrix ud = dagger(u), udx = dagger(ux), udxx = dagger(uxx), udxxx = dagger(uxxx);
    const cplx l = lambda, l2 = l * l, l3 = l2 * l, l4 = l2 * l2;

    LaxMatrices L;
    L.lambda = lambda;
    L.rho1 = -4.0 * I1 * a1 * l3 - 2.0 * I1 * l2 * a2;
    L.rho2 = I1 * (2.0 * l * a1 + a2);
    L.J = block2(-Id, ComplexMatrix(m, m), ComplexMatrix(m, m), Id);
    L.U = block2(ComplexMatrix(m, m), u, -ud, ComplexMatrix(m, m));

    L.A1 = -4.0 * l2 * a1 * ud + 2.0 * l * (-a2 * ud + I1 * a1 * udx) + I1 * a2 * udx -
           a1 * (-2.0 * (ud * u * ud) - udxx);
    L.A2 = 4.0 * l2 * a1 * u + 2.0 * l * (a2 * u + I1 * a1 * ux) + I1 * a2 * ux -
           a1 * (2.0 * (u * ud * u) + uxx);
    const ComplexMatrix b11 = L.rho1 * Id + L.rho2 * (u * ud) - a1 * (ux * ud - u * udx);
    const ComplexMatrix b22 = -L.rho1 * Id - L.rho2 * (ud * u) - a1 * (-(ud * ux) + udx * u);
    L.B = block2(b11, L.A2, L.A1, b22);

    L.V1 = I1 * (uxx * ud + u * udxx - ux * udx) - 2.0 * l * (u * udx - ux * ud);
    L.V2 = -4.0 * I1 * l2 * ux + 3.0 * I1 * (u * ud * ux + ux * ud * u) + I1 * uxxx + 2.0 * l * uxx;
    L.V3 = -4.0 * I1 * l2 * udx + 3.0 * I1 * (ud * u * udx + udx * u * ud) + I1 * udxxx -
           2.0 * l * udxx;
    L.V4 = -I1 * (udxx * u + ud * uxx - udx * ux) + 2.0 * l * (-(ud * ux) + udx * u);

    L.rho3 = 3.0 * I1 * (u * ud * u * ud) - 4.0 * I1 * l2 * (u * ud) + 8.0 * I1 * l4 * Id;
    L.rho4 = -3.0 * I1 * (ud * u * ud * u) + 4.0 * I1 * l2 * (ud * u) - 8.0 * I1 * l4 * Id;
    L.rho5 = -8.0 * l3 * u + 4.0 * l * (u * ud * u);
    L.rho6 = 8.0 * l3 * ud - 4.0 * l * (ud * u * ud);

    if (form == VpForm::complete)
        L.Vp = g * block2(L.V1 + L.rho3, L.V2 + L.rho5, L.V3 + L.rho6, L.V4 + L.rho4);
    else
        L.Vp = g * block2(L.V1, L.V2, L.V3, L.V4);
    return L;
}

ComplexMatrix EomTerms::total() const { return time + alpha1 + alpha2 + gamma; }

EomTerms eom_terms(const Jet& jet, const ComplexMatrix& ut, const ModelParams& params) {
    const ComplexMatrix& u = jet.u;
    const ComplexMatrix& ux = jet.ux;
    const ComplexMatrix& uxx = jet.uxx;
    const ComplexMatrix ud = dagger(u), udx = dagger(ux), udxx = dagger(uxx);
    EomTerms e;
    e.time = I1 * ut;
    e.alpha1 = (I1 * params.alpha1) * (jet.uxxx + 3.0 * (ux * ud * u + u * ud * ux));
    e.alpha2 = params.alpha2 * (2.0 * (u * ud * u) + uxx);
    e.gamma = params.gamma *
              (jet.uxxxx + 2.0 * (ux * udx * u + u * udx * ux + u * udxx * u) +
               4.0 * (uxx * ud * u + u * ud * uxx) + 6.0 * (ux * ud * ux + u * ud * u * ud * u));
    return e;
}

ComplexMatrix eom_pointwise(const Jet& jet, const ComplexMatrix& ut, const ModelParams& params) {
    return eom_terms(jet, ut, params).total();
}

ComplexMatrix eom_time_derivative(const Jet& jet, const ModelParams& params) {
    const ComplexMatrix zero(jet.dim(), jet.dim());
    const EomTerms e = eom_terms(jet, zero, params);
    // i u_t = -(rest)  =>  u_t = i (rest)
    return I1 * (e.alpha1 + e.alpha2 + e.gamma);
}

cplx commutative_residual(cplx u, cplx ux, cplx uxx, cplx uxxx, cplx uxxxx, cplx ut,
                          const ModelParams& params) {
    const cplx ub = std::conj(u), uxb = std::conj(ux), uxxb = std::conj(uxx);
    const double m2 = std::norm(u);
    return I1 * ut + params.alpha2 * (uxx + 2.0 * m2 * u) +
           I1 * params.alpha1 * (uxxx + 6.0 * ux * m2) +
           params.gamma * (uxxxx + 6.0 * ub * ux * ux + 4.0 * u * (ux * uxb) + 8.0 * m2 * uxx +
                           2.0 * u * u * uxxb + 6.0 * u * m2 * m2);
}

ComplexMatrix reduced_residual(Reduction r, const Jet& jet, const ComplexMatrix& ut,
                               const ModelParams& params) {
    const ComplexMatrix& q = jet.u;
    const ComplexMatrix qs = dagger(q);
    const ComplexMatrix qsx = dagger(jet.ux), qsxx = dagger(jet.uxx);
    const ComplexMatrix cubic = q * qs * q;  // u u^dag u
    ComplexMatrix res = I1 * ut;

    auto nls_part = [&] { return params.alpha2 * (jet.uxx + cubic + cubic); };
    auto mkdv_part = [&] {
        ComplexMatrix s = jet.uxxx;
        s += 3.0 * (jet.ux * qs * q);
        s += 3.0 * (q * qs * jet.ux);
        return (I1 * params.alpha1) * s;
    };
    auto lpd_part = [&] {
        ComplexMatrix s = jet.uxxxx;
        s += 2.0 * (jet.ux * qsx * q);
        s += 2.0 * (q * qsx * jet.ux);
        s += 2.0 * (q * qsxx * q);
        s += 4.0 * (jet.uxx * qs * q);
        s += 4.0 * (q * qs * jet.uxx);
        s += 6.0 * (jet.ux * qs * jet.ux);
        s += 6.0 * (cubic * qs * q);
        return params.gamma * s;
    };

    switch (r) {
        case Reduction::nls: res += nls_part(); break;
        case Reduction::hirota: res += nls_part(); res += mkdv_part(); break;
        case Reduction::lpd: res += lpd_part(); break;
        case Reduction::mkdv: res += mkdv_part(); break;
        case Reduction::none:
            res += nls_part();
            res += mkdv_part();
            res += lpd_part();
            break;
    }
    return res;
}

double zero_curvature_defect(const Jet& jet, const ComplexMatrix& u5, cplx lambda,
                             const ModelParams& params, VpForm form) {
    // T depends on (u, u_x, u_xx, u_xxx) through products of at most four
    // factors, so along the linear shift below it is a quartic in s and the
    // five-point derivative is exact up to rounding.
    auto T_at = [&](double s) {
        Jet j{jet.u + s * jet.ux, jet.ux + s * jet.uxx, jet.uxx + s * jet.uxxx,
              jet.uxxx + s * jet.uxxxx, jet.uxxxx + s * u5};
        return lax_matrices(j, lambda, params, form).temporal();
    };
    const double e = 0.25;
    const ComplexMatrix Tx =
        (1.0 / (12.0 * e)) * (T_at(-2 * e) - 8.0 * T_at(-e) + 8.0 * T_at(e) - T_at(2 * e));
    const LaxMatrices L = lax_matrices(jet, lambda, params, form);
    const ComplexMatrix X = L.spatial();
    const ComplexMatrix T = L.temporal();
    const std::size_t m = jet.dim();
    const ComplexMatrix ut = eom_time_derivative(jet, params);
    const ComplexMatrix Xt = block2(ComplexMatrix(m, m), ut, -dagger(ut), ComplexMatrix(m, m));
    return (Xt - Tx + X * T - T * X).max_abs();
}

double zero_curvature_check(cplx lambda, const ModelParams& params, double x, double t,
                            double step, VpForm form) {
    const Seed s = seed(lambda, params);
    auto Y = [&](double xx, double tt) {
        return ComplexMatrix(2, 1, {s.phi(xx, tt), s.chi(xx, tt)});
    };
    auto d5 = [&](auto f) {
        return (1.0 / (12.0 * step)) * (f(-2 * step) - 8.0 * f(-step) + 8.0 * f(step) - f(2 * step));
    };
    const LaxMatrices L = lax_matrices(Jet::zero(1), lambda, params, form);
    const ComplexMatrix y = Y(x, t);
    const ComplexMatrix yx = d5([&](double h) { return Y(x + h, t); });
    const ComplexMatrix yt = d5([&](double h) { return Y(x, t + h); });
    const double dx = (yx - L.spatial() * y).max_abs();
    const double dt = (yt - L.temporal() * y).max_abs();
    return std::max(dx, dt);
}

Axis Axis::span(double lo, double hi, std::size_t n) {
    if (n < 2) throw DimensionError("axis needs at least two points");
    if (!(hi > lo)) throw DimensionError("axis upper bound must exceed lower bound");
    return Axis{lo, (hi - lo) / static_cast<double>(n - 1), n};
}

FieldGrid::FieldGrid(Axis x_, Axis t_, std::size_t dim_, FieldMode mode_)
    : x(x_), t(t_), dim(dim_), mode(mode_),
      values(x_.count * t_.count, ComplexMatrix(dim_, dim_)),
      valid(x_.count * t_.count, 1) {}

std::size_t FieldGrid::pole_count() const {
    return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{0}));
}

int half_width(int derivative, int order) {
    return (derivative + 1) / 2 - 1 + order / 2;
}

std::vector<double> central_weights(int derivative, int order) {
    if (order != 2 && order != 4 && order != 6)
        throw StencilError("stencil order must be 2, 4 or 6");
    const int h = half_width(derivative, order);
    const int n = 2 * h + 1;
    // Fornberg's recursion on nodes -h..h evaluated at 0.
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) z[i] = i - h;
    std::vector<std::vector<double>> c(n, std::vector<double>(derivative + 1, 0.0));
    double c1 = 1.0, c4 = z[0];
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, derivative);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = z[i];
        for (int j = 0; j < i; ++j) {
            const double c3 = z[i] - z[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][derivative];
    return w;
}

FieldGrid residual_field(const FieldGrid& grid, const PointwiseResidual& f, int order) {
    const std::vector<double> w1 = central_weights(1, order), w2 = central_weights(2, order),
                              w3 = central_weights(3, order), w4 = central_weights(4, order);
    const int hx = half_width(4, order);
    const int ht = half_width(1, order);
    const std::size_t nx = grid.x.count, nt = grid.t.count;
    const std::size_t need_x = std::max<std::size_t>(9, 2 * hx + 1);
    const std::size_t need_t = std::max<std::size_t>(9, 2 * ht + 1);
    if (nx < need_x || nt < need_t)
        throw StencilError("grid " + std::to_string(nx) + "x" + std::to_string(nt) +
                           " is too small for a stencil of order " + std::to_string(order) +
                           " (needs at least " + std::to_string(need_x) + " x-points and " +
                           std::to_string(need_t) + " t-points)");

    const double dx = grid.x.step, dt = grid.t.step;
    const Axis xi{grid.x.at(hx), dx, nx - 2 * hx};
    const Axis ti{grid.t.at(ht), dt, nt - 2 * ht};
    FieldGrid out(xi, ti, grid.dim, grid.mode);
    const std::size_t m = grid.dim;

    auto combine = [&](std::size_t it, std::size_t ix, const std::vector<double>& w, int h,
                       bool along_x, double scale) {
        ComplexMatrix s(m, m);
        for (int k = -h; k <= h; ++k) {
            const double wk = w[k + h];
            if (wk == 0.0) continue;
            const ComplexMatrix& v =
                along_x ? grid.at(it, ix + k) : grid.at(it + k, ix);
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c) s(r, c) += wk * v(r, c);
        }
        s *= scale;
        return s;
    };

    for (std::size_t it = 0; it < ti.count; ++it) {
        for (std::size_t ix = 0; ix < xi.count; ++ix) {
            const std::size_t gt = it + ht, gx = ix + hx;
            bool ok = true;
            for (int k = -hx; k <= hx && ok; ++k) ok = grid.valid[grid.index(gt, gx + k)] != 0;
            for (int k = -ht; k <= ht && ok; ++k) ok = grid.valid[grid.index(gt + k, gx)] != 0;
            const std::size_t o = out.index(it, ix);
            if (!ok) {
                out.valid[o] = 0;
                continue;
            }
            Jet j{grid.at(gt, gx),
                  combine(gt, gx, w1, half_width(1, order), true, 1.0 / dx),
                  combine(gt, gx, w2, half_width(2, order), true, 1.0 / (dx * dx)),
                  combine(gt, gx, w3, half_width(3, order), true, 1.0 / (dx * dx * dx)),
                  combine(gt, gx, w4, half_width(4, order), true, 1.0 / (dx * dx * dx * dx))};
            const ComplexMatrix ut = combine(gt, gx, w1, ht, false, 1.0 / dt);
            out.values[o] = f(j, ut);
        }
    }
    return out;
}

FieldGrid eom_residual(const FieldGrid& grid, const ModelParams& params, int order) {
    return residual_field(
        grid, [&](const Jet& j, const ComplexMatrix& ut) { return eom_pointwise(j, ut, params); },
        order);
}

ResidualStats summarize_residual(const FieldGrid& residual, int order) {
    ResidualStats s;
    s.hx = residual.x.step;
    s.ht = residual.t.step;
    s.order = order;
    double sum = 0.0;
    for (std::size_t k = 0; k < residual.values.size(); ++k) {
        if (!residual.valid[k]) {
            ++s.skipped;
            continue;
        }
        const double v = residual.values[k].max_abs();
        s.max = std::max(s.max, v);
        sum += v;
        ++s.points;
    }
    s.mean = s.points ? sum / static_cast<double>(s.points) : 0.0;
    return s;
}

ResidualStats verify_field(const FieldGrid& grid, const ModelParams& params, int order) {
    ResidualStats s = summarize_residual(eom_residual(grid, params, order), order);
    using Pick = ComplexMatrix EomTerms::*;
    const std::pair<const char*, Pick> parts[] = {{"time", &EomTerms::time},
                                                  {"alpha1", &EomTerms::alpha1},
                                                  {"alpha2", &EomTerms::alpha2},
                                                  {"gamma", &EomTerms::gamma}};
    for (const auto& [name, member] : parts) {
        const FieldGrid r = residual_field(
            grid,
            [&, member = member](const Jet& j, const ComplexMatrix& ut) {
                return eom_terms(j, ut, params).*member;
            },
            order);
        s.term_max[name] = summarize_residual(r, order).max;
    }
    return s;
}

FieldGrid subsample(const FieldGrid& grid) {
    const Axis x{grid.x.start, 2.0 * grid.x.step, (grid.x.count + 1) / 2};
    const Axis t{grid.t.start, 2.0 * grid.t.step, (grid.t.count + 1) / 2};
    FieldGrid out(x, t, grid.dim, grid.mode);
    for (std::size_t it = 0; it < t.count; ++it)
        for (std::size_t ix = 0; ix < x.count; ++ix) {
            out.values[out.index(it, ix)] = grid.at(2 * it, 2 * ix);
            out.valid[out.index(it, ix)] = grid.valid[grid.index(2 * it, 2 * ix)];
        }
    return out;
}

double convergence_order(const FieldGrid& grid, const PointwiseResidual& f, int order) {
    const FieldGrid coarse = subsample(grid);
    const FieldGrid rc = residual_field(coarse, f, order);
    const FieldGrid rf = residual_field(grid, f, order);
    const int hx = half_width(4, order), ht = half_width(1, order);
    double mc = 0.0, mf = 0.0;
    for (std::size_t it = 0; it < rc.t.count; ++it)
        for (std::size_t ix = 0; ix < rc.x.count; ++ix) {
            const std::size_t kc = rc.index(it, ix);
            // coarse interior point (it + ht, ix + hx) sits at fine index 2*(.)
            const std::size_t ft = 2 * (it + ht) - ht, fx = 2 * (ix + hx) - hx;
            if (ft >= rf.t.count || fx >= rf.x.count) continue;
            const std::size_t kf = rf.index(ft, fx);
            if (!rc.valid[kc] || !rf.valid[kf]) continue;
            mc = std::max(mc, rc.values[kc].max_abs());
            mf = std::max(mf, rf.values[kf].max_abs());
        }
    if (mf == 0.0 || mc == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::log2(mc / mf);
}

}  // namespace ncwave
