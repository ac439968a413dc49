#include "darboux.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "quasidet.hpp"

namespace ncwave {

namespace {

const cplx I1{0.0, 1.0};

PoleError pole_at(const std::string& what, double x, double t) {
    return PoleError(what + " is singular at x=" + std::to_string(x) + ", t=" + std::to_string(t),
                     x, t);
}

// Power-of-two row and column scaling of W, applied to the borders as well:
// [[R W S, R B], [C S, 0]]. The determinant ratio and the bordered
// quasideterminant are unchanged, and the singularity test on W no longer
// reacts to entries that differ by many orders of magnitude.
struct Equilibrated {
    ComplexMatrix w, b, c;
};

Equilibrated equilibrate(ComplexMatrix w, ComplexMatrix b, ComplexMatrix c) {
    const std::size_t n = w.rows();
    auto pow2 = [](double v) { return v > 0.0 && std::isfinite(v) ? std::exp2(-std::round(std::log2(v))) : 1.0; };
    for (std::size_t i = 0; i < n; ++i) {
        double m = 0.0;
        for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(w(i, j)));
        const double r = pow2(m);
        for (std::size_t j = 0; j < n; ++j) w(i, j) *= r;
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= r;
    }
    for (std::size_t j = 0; j < n; ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(w(i, j)));
        const double sc = pow2(m);
        for (std::size_t i = 0; i < n; ++i) w(i, j) *= sc;
        for (std::size_t i = 0; i < c.rows(); ++i) c(i, j) *= sc;
    }
    return {std::move(w), std::move(b), std::move(c)};
}

// Bordered block matrix [[W, B], [C, 0]] over blocks of size m.
BlockMatrix bordered(const ComplexMatrix& w, const ComplexMatrix& b, const ComplexMatrix& c,
                     std::size_t m) {
    ComplexMatrix full(w.rows() + m, w.cols() + m);
    place(full, w, 0, 0);
    place(full, b, 0, w.cols());
    place(full, c, w.rows(), 0);
    return extract(full, m);
}

}  // namespace

void SolitonScenario::validate() const {
    if (lambdas.empty()) throw DimensionError("scenario needs at least one soliton");
    const std::size_t m = dim(), N = 2 * m * n();
    if (method == Method::gramian) {
        if (Q.rows() != N || Q.cols() != N)
            throw DimensionError("Q must be " + std::to_string(N) + "x" + std::to_string(N) +
                                 " for " + std::to_string(n()) + " soliton(s), got " +
                                 std::to_string(Q.rows()) + "x" + std::to_string(Q.cols()));
        if (!Q.finite()) throw DimensionError("Q has non-finite entries");
        if (!(c1 > 0.0) || !std::isfinite(c1)) throw DimensionError("c1 must be positive");
    } else {
        if (polarizations.size() != n())
            throw DimensionError("wronskian method needs one polarization per soliton");
        for (const auto& p : polarizations)
            if (p.rows() != m || p.cols() != m)
                throw DimensionError("polarization must be " + std::to_string(m) + "x" +
                                     std::to_string(m));
    }
    for (const auto& l : lambdas)
        if (!std::isfinite(l.real()) || !std::isfinite(l.imag()))
            throw DimensionError("spectral parameter is not finite");
}

ComplexMatrix nc_q_layout(cplx q11, cplx q12, cplx q13, cplx q14, cplx q33, cplx q34) {
    return ComplexMatrix(4, 4, {q11, q12, q13, q14,  //
                                q12, q11, q14, q13,  //
                                q13, q14, q33, q34,  //
                                q14, q13, q34, q33});
}

ComplexMatrix commutative_q(cplx q1, cplx q2) { return ComplexMatrix(2, 2, {q1, q2, q2, q1}); }

ComplexMatrix block_diagonal(const std::vector<ComplexMatrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
    ComplexMatrix out(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        place(out, b, r, c);
        r += b.rows();
        c += b.cols();
    }
    return out;
}

SeedRows seed_rows(const SolitonScenario& s, double x, double t) {
    const std::size_t m = s.dim(), n = s.n();
    const double sc = 1.0 / std::sqrt(s.c1);
    SeedRows rows{ComplexMatrix(m, 2 * m * n), ComplexMatrix(m, 2 * m * n)};
    for (std::size_t j = 0; j < n; ++j) {
        const Seed sd = seed(s.lambdas[j], s.params);
        const cplx ph = sc * sd.phi(x, t), ch = sc * sd.chi(x, t);
        for (std::size_t r = 0; r < m; ++r) {
            rows.phi(r, j * 2 * m + r) = ph;
            rows.chi(r, j * 2 * m + m + r) = ch;
        }
    }
    return rows;
}

cplx exp_antiderivative(cplx kappa, cplx tau, double x) {
    if (std::abs(kappa) < 1e-12) return x * std::exp(tau);
    return std::exp(kappa * x + tau) / kappa;
}

namespace {

// Entry (a, b) of Theta or of its density. Column a belongs to soliton a/(2m);
// phi-columns pair with phi-columns of the same row slot, chi with chi.
template <class F>
ComplexMatrix theta_like(const SolitonScenario& s, double x, double t, F entry) {
    const std::size_t m = s.dim(), n = s.n(), N = 2 * m * n;
    const double s2 = 1.0 / s.c1;
    ComplexMatrix th(N, N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Seed si = seed(s.lambdas[i], s.params), sj = seed(s.lambdas[j], s.params);
            const cplx li = std::conj(si.lambda), wi = std::conj(si.t_coefficient());
            const cplx lj = sj.lambda, wj = sj.t_coefficient();
            // conj(phi_i) phi_j = exp(-i conj(zeta_i) + i zeta_j)
            const cplx kp = I1 * (li - lj), tp = (-I1 * wi + I1 * wj) * t;
            // conj(chi_i) chi_j = exp(i conj(zeta_i) - i zeta_j)
            const cplx kc = I1 * (lj - li), tc = (I1 * wi - I1 * wj) * t;
            const cplx vp = -I1 * s2 * entry(kp, tp, x);
            const cplx vc = I1 * s2 * entry(kc, tc, x);
            for (std::size_t r = 0; r < m; ++r) {
                th(i * 2 * m + r, j * 2 * m + r) = vp;
                th(i * 2 * m + m + r, j * 2 * m + m + r) = vc;
            }
        }
    return th;
}

// det([[W, B], [C, 0]]) / det(W) for a scalar border.
cplx bordered_ratio(const Equilibrated& e, double x, double t) {
    try {
        lu_factor(e.w);
    } catch (const SingularMatrixError&) {
        throw pole_at("W", x, t);
    }
    const std::size_t N = e.w.rows();
    ComplexMatrix full(N + 1, N + 1);
    place(full, e.w, 0, 0);
    place(full, e.b, 0, N);
    place(full, e.c, N, 0);
    return determinant(full) / determinant(e.w);
}

}  // namespace

ComplexMatrix theta(const SolitonScenario& s, double x, double t) {
    return theta_like(s, x, t, exp_antiderivative);
}

ComplexMatrix theta_density(const SolitonScenario& s, double x, double t) {
    ComplexMatrix d = theta_like(s, x, t, [](cplx k, cplx tau, double xx) {
        return std::exp(k * xx + tau);
    });
    return -I1 * d;
}

ComplexMatrix gramian_w(const SolitonScenario& s, double x, double t) {
    return s.Q * theta(s, x, t) + ComplexMatrix::identity(s.Q.rows());
}

cplx gramian_solution(const SolitonScenario& s, double x, double t) {
    if (s.dim() != 1) throw DimensionError("gramian_solution needs a commutative scenario");
    const SeedRows rows = seed_rows(s, x, t);
    const Equilibrated e = equilibrate(gramian_w(s, x, t), s.Q * dagger(rows.chi), rows.phi);
    return 2.0 * I1 * bordered_ratio(e, x, t);
}

cplx gramian_adjoint(const SolitonScenario& s, double x, double t) {
    if (s.dim() != 1) throw DimensionError("gramian_adjoint needs a commutative scenario");
    const SeedRows rows = seed_rows(s, x, t);
    const Equilibrated e = equilibrate(gramian_w(s, x, t), s.Q * dagger(rows.phi), rows.chi);
    return 2.0 * I1 * bordered_ratio(e, x, t);
}

ComplexMatrix quasi_gramian_solution(const SolitonScenario& s, double x, double t) {
    const std::size_t m = s.dim();
    const SeedRows rows = seed_rows(s, x, t);
    const Equilibrated e = equilibrate(gramian_w(s, x, t), s.Q * dagger(rows.chi), rows.phi);
    const BlockMatrix b = bordered(e.w, e.b, e.c, m);
    const std::size_t last = b.block_rows();
    try {
        return 2.0 * I1 * quasideterminant(b, {last, last});
    } catch (const SingularMatrixError&) {
        throw pole_at("W", x, t);
    }
}

cplx one_soliton_closed_form(cplx lambda, double q1, double q2, double c1,
                             const ModelParams& p, double x, double t) {
    const double lR = lambda.real(), lI = lambda.imag();
    if (lI == 0.0) throw DimensionError("closed form needs a non-real spectral parameter");
    const double xi1 = (8.0 * (std::pow(lR, 4) - 6.0 * lR * lR * lI * lI + std::pow(lI, 4)) * p.gamma +
                        2.0 * (-lR * lR + lI * lI) * p.alpha2 +
                        4.0 * (-std::pow(lR, 3) + 3.0 * lR * lI * lI) * p.alpha1) * t -
                       lR * x;
    const double xi2 = 8.0 * (8.0 * (-std::pow(lR, 3) + lR * lI * lI) * p.gamma + lR * p.alpha2 +
                              (-lI * lI + 3.0 * lR * lR) * p.alpha1) * lI * t +
                       2.0 * x * lI;
    const cplx num = 8.0 * I1 * c1 * q2 * lI * lI * std::exp(2.0 * I1 * xi1);
    const cplx den = 4.0 * I1 * lI * c1 * q1 * std::cosh(xi2) - 4.0 * lI * lI * c1 * c1 + q1 * q1 - q2 * q2;
    if (std::abs(den) < 1e-300) throw pole_at("closed-form denominator", x, t);
    return num / den;
}

EigenPair eigen_pair(cplx lambda, const ComplexMatrix& P, const ModelParams& params, double x,
                     double t) {
    const std::size_t m = P.rows();
    const Seed sd = seed(lambda, params);
    const cplx ph = sd.phi(x, t), ch = sd.chi(x, t);
    const ComplexMatrix Id = ComplexMatrix::identity(m);
    ComplexMatrix Y(2 * m, 2 * m);
    place(Y, ph * Id, 0, 0);
    place(Y, ch * P, m, 0);
    place(Y, -std::conj(ch) * dagger(P), 0, m);
    place(Y, std::conj(ph) * Id, m, m);
    ComplexMatrix L(2 * m, 2 * m);
    for (std::size_t r = 0; r < m; ++r) {
        L(r, r) = lambda;
        L(m + r, m + r) = std::conj(lambda);
    }
    return {Y, L};
}

namespace {

ComplexMatrix wronskian_readout(const std::vector<cplx>& lambdas,
                                const std::vector<ComplexMatrix>& pols, const ModelParams& params,
                                double x, double t, bool adjoint) {
    const std::size_t n = lambdas.size();
    if (n == 0 || pols.size() != n)
        throw DimensionError("quasi-Wronskian needs one polarization per spectral parameter");
    const std::size_t m = pols.front().rows();
    const std::size_t N = 2 * m * n;
    ComplexMatrix body(N, N), row(m, N), f(N, m);
    for (std::size_t j = 0; j < n; ++j) {
        const EigenPair e = eigen_pair(lambdas[j], pols[j], params, x, t);
        ComplexMatrix yl = e.Y;
        for (std::size_t i = 0; i < n; ++i) {
            place(body, yl, i * 2 * m, j * 2 * m);
            yl = yl * e.Lambda;
        }
        place(row, submatrix(yl, adjoint ? m : 0, 0, m, 2 * m), 0, j * 2 * m);
    }
    place(f, ComplexMatrix::identity(m), adjoint ? N - 2 * m : N - m, 0);
    try {
        return 2.0 * I1 * quasideterminant_bordered(body, f, row, ComplexMatrix(m, m));
    } catch (const SingularMatrixError&) {
        throw pole_at("quasi-Wronskian body", x, t);
    }
}

}  // namespace

ComplexMatrix quasi_wronskian_solution(const std::vector<cplx>& lambdas,
                                       const std::vector<ComplexMatrix>& pols,
                                       const ModelParams& params, double x, double t) {
    return wronskian_readout(lambdas, pols, params, x, t, false);
}

ComplexMatrix quasi_wronskian_adjoint(const std::vector<cplx>& lambdas,
                                      const std::vector<ComplexMatrix>& pols,
                                      const ModelParams& params, double x, double t) {
    return wronskian_readout(lambdas, pols, params, x, t, true);
}

cplx one_soliton_darboux(cplx lambda, cplx p, const ModelParams& params, double x, double t) {
    const Seed sd = seed(lambda, params);
    const cplx ph = sd.phi(x, t), ch = sd.chi(x, t);
    return 4.0 * lambda.imag() * std::conj(p) * ph * std::conj(ch) /
           (std::norm(ph) + std::norm(p) * std::norm(ch));
}

ComplexMatrix evaluate(const SolitonScenario& s, double x, double t) {
    if (s.method == Method::wronskian)
        return quasi_wronskian_solution(s.lambdas, s.polarizations, s.params, x, t);
    if (s.dim() == 1) return ComplexMatrix::scalar(gramian_solution(s, x, t));
    return quasi_gramian_solution(s, x, t);
}

ComplexMatrix darboux_apply_direct(const DarbouxMatrix& d, cplx lambda, const ComplexMatrix& phi) {
    return lambda * phi - d.Y * d.Lambda * solve(d.Y, phi);
}

ComplexMatrix darboux_apply(const DarbouxMatrix& d, cplx lambda, const ComplexMatrix& phi) {
    return quasideterminant_bordered(d.Y, phi, d.Y * d.Lambda, lambda * phi);
}

ComplexMatrix darboux_iterated(const std::vector<DarbouxMatrix>& steps, cplx lambda,
                               const ComplexMatrix& phi) {
    const std::size_t n = steps.size();
    if (n == 0) return phi;
    const std::size_t N = phi.rows();
    std::size_t width = 0;
    for (const auto& s : steps) {
        if (s.Y.rows() != N) throw DimensionError("darboux_iterated: eigenfunction height mismatch");
        width += s.Y.cols();
    }
    if (width != n * N) throw DimensionError("darboux_iterated: body must be square");
    ComplexMatrix body(n * N, n * N), col(n * N, phi.cols()), row(N, n * N);
    std::size_t c0 = 0;
    for (const auto& s : steps) {
        ComplexMatrix yl = s.Y;
        for (std::size_t i = 0; i < n; ++i) {
            place(body, yl, i * N, c0);
            yl = yl * s.Lambda;
        }
        place(row, yl, 0, c0);
        c0 += s.Y.cols();
    }
    cplx lp = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        place(col, lp * phi, i * N, 0);
        lp *= lambda;
    }
    return quasideterminant_bordered(body, col, row, lp * phi);
}

ComplexMatrix darboux_sequential(const std::vector<DarbouxMatrix>& steps, cplx lambda,
                                 const ComplexMatrix& phi) {
    std::vector<ComplexMatrix> ys;
    for (const auto& s : steps) ys.push_back(s.Y);
    ComplexMatrix cur = phi;
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const DarbouxMatrix d{ys[k], steps[k].Lambda};
        const ComplexMatrix sigma = d.Y * d.Lambda * inverse(d.Y);
        cur = lambda * cur - sigma * cur;
        for (std::size_t j = k + 1; j < steps.size(); ++j)
            ys[j] = ys[j] * steps[j].Lambda - sigma * ys[j];
    }
    return cur;
}

}  // namespace ncwave
