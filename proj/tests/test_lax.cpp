#include <doctest.h>

#include <functional>

#include "ncwave/darboux.hpp"
#include "ncwave/error.hpp"
#include "ncwave/lax.hpp"
#include "ncwave/mi.hpp"
#include "support.hpp"

using namespace ncwave;
using namespace testsupport;

namespace {

const cplx I1{0.0, 1.0};

Jet random_jet(std::size_t m) {
    return Jet{random_matrix(m, m), random_matrix(m, m), random_matrix(m, m), random_matrix(m, m),
               random_matrix(m, m)};
}

// Second transcription of the temporal matrix B, written entry by entry from
// the printed definitions and kept apart from lax_matrices.
ComplexMatrix b_reference(const Jet& j, cplx lam, const ModelParams& p) {
    const std::size_t m = j.dim();
    const ComplexMatrix Id = ComplexMatrix::identity(m);
    const ComplexMatrix U = j.u, Ux = j.ux, Uxx = j.uxx;
    const ComplexMatrix S = dagger(U), Sx = dagger(Ux), Sxx = dagger(Uxx);
    const double a1 = p.alpha1, a2 = p.alpha2;
    const cplx r1 = -4.0 * I1 * a1 * lam * lam * lam - 2.0 * I1 * lam * lam * a2;
    const cplx r2 = I1 * (2.0 * lam * a1 + a2);
    ComplexMatrix top_left = r1 * Id;
    top_left += r2 * (U * S);
    top_left -= a1 * (Ux * S);
    top_left += a1 * (U * Sx);
    ComplexMatrix bottom_right = -r1 * Id;
    bottom_right -= r2 * (S * U);
    bottom_right += a1 * (S * Ux);
    bottom_right -= a1 * (Sx * U);
    ComplexMatrix a2m = (4.0 * lam * lam * a1 + 2.0 * lam * a2) * U;
    a2m += (2.0 * lam * I1 * a1 + I1 * a2) * Ux;
    a2m -= (2.0 * a1) * (U * S * U);
    a2m -= a1 * Uxx;
    ComplexMatrix a1m = (-4.0 * lam * lam * a1 - 2.0 * lam * a2) * S;
    a1m += (2.0 * lam * I1 * a1 + I1 * a2) * Sx;
    a1m += (2.0 * a1) * (S * U * S);
    a1m += a1 * Sxx;
    ComplexMatrix B(2 * m, 2 * m);
    place(B, top_left, 0, 0);
    place(B, a2m, 0, m);
    place(B, a1m, m, 0);
    place(B, bottom_right, m, m);
    return B;
}

// Faithful residual transcription with a switch that swaps the factor order
// of exactly one product.
ComplexMatrix residual_variant(const Jet& j, const ComplexMatrix& ut, const ModelParams& p, int swap) {
    const ComplexMatrix& u = j.u;
    const ComplexMatrix& a = j.ux;
    const ComplexMatrix& b = j.uxx;
    const ComplexMatrix s = dagger(u), sx = dagger(a), sxx = dagger(b);
    auto pr = [&](int id, const ComplexMatrix& x, const ComplexMatrix& y, const ComplexMatrix& z) {
        return swap == id ? y * x * z : x * y * z;
    };
    ComplexMatrix r = I1 * ut;
    r += I1 * p.alpha1 * (j.uxxx + 3.0 * (pr(1, a, s, u) + pr(2, u, s, a)));
    r += p.alpha2 * (2.0 * pr(3, u, s, u) + b);
    ComplexMatrix g = j.uxxxx;
    g += 2.0 * (pr(4, a, sx, u) + pr(5, u, sx, a) + pr(6, u, sxx, u));
    g += 4.0 * (pr(7, b, s, u) + pr(8, u, s, b));
    g += 6.0 * (pr(9, a, s, a) + (swap == 10 ? u * s * u * u * s : u * s * u * s * u));
    r += p.gamma * g;
    return r;
}

}  // namespace

TEST_CASE("seed: trivial and cross-checked values") {
    const ModelParams p{1.5, 1.0, 1.0};
    const Seed s0 = seed(0.0, p);
    CHECK(std::abs(s0.zeta(2.0, 3.0)) == 0.0);
    CHECK(std::abs(s0.phi(2.0, 3.0) - 1.0) == 0.0);
    CHECK(std::abs(s0.chi(2.0, 3.0) - 1.0) == 0.0);

    CHECK(std::abs(seed(0.5 * I1, p).zeta(1.0, 0.0) - (-0.5 * I1)) < 1e-15);

    const cplx l{0.1, 0.5};
    const double x = 0.3, t = 0.2;
    // expanded polynomial form: -l x + (8 g l^4 - 4 a1 l^3 - 2 a2 l^2) t
    const cplx l2 = l * l;
    const cplx ref = -l * x + (8.0 * p.gamma * l2 * l2 - 4.0 * p.alpha1 * l2 * l - 2.0 * p.alpha2 * l2) * t;
    const Seed s = seed(l, p);
    CHECK(std::abs(s.zeta(x, t) - ref) < 1e-15);
    CHECK(std::abs(s.phi(x, t) * s.chi(x, t) - 1.0) < 1e-15);
}

TEST_CASE("lax matrices at zero field") {
    const ModelParams p{0.7, 1.3, 0.9};
    const cplx l{0.3, -0.4};
    const LaxMatrices L = lax_matrices(Jet::zero(2), l, p, VpForm::displayed);
    CHECK(L.U.max_abs() == 0.0);
    CHECK(L.Vp.max_abs() == 0.0);
    ComplexMatrix expect(4, 4);
    expect(0, 0) = expect(1, 1) = L.rho1;
    expect(2, 2) = expect(3, 3) = -L.rho1;
    CHECK(max_diff(L.B, expect) < 1e-15);

    // With the rho terms the zero-field potential carries the quartic phase.
    const LaxMatrices C = lax_matrices(Jet::zero(1), l, p, VpForm::complete);
    CHECK(std::abs(C.Vp(0, 0) - p.gamma * 8.0 * I1 * std::pow(l, 4)) < 1e-14);
    CHECK(std::abs(C.Vp(1, 1) + p.gamma * 8.0 * I1 * std::pow(l, 4)) < 1e-14);
}

TEST_CASE("A2 at a unit scalar field") {
    Jet j = Jet::zero(1);
    j.u(0, 0) = 1.0;
    const LaxMatrices L = lax_matrices(j, 1.0, {1.0, 1.0, 1.0});
    CHECK(std::abs(L.A2(0, 0) - cplx(4.0, 0.0)) < 1e-15);
}

TEST_CASE("B matches a second transcription on random matrix jets") {
    for (int trial = 0; trial < 20; ++trial) {
        const Jet j = random_jet(2);
        const cplx l(uniform(-1, 1), uniform(-1, 1));
        const ModelParams p{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
        CHECK(max_diff(lax_matrices(j, l, p).B, b_reference(j, l, p)) < 1e-12);
    }
    Jet bad = random_jet(2);
    bad.ux = random_matrix(3, 3);
    CHECK_THROWS_AS(lax_matrices(bad, 1.0, {}), DimensionError);
}

TEST_CASE("zero curvature on random jets holds with the rho terms and fails without") {
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t m = trial % 2 ? 2 : 1;
        const Jet j = random_jet(m);
        const ComplexMatrix u5 = random_matrix(m, m);
        const cplx l(uniform(-1, 1), uniform(-1, 1));
        const ModelParams p{uniform(-2, 2), uniform(-2, 2), uniform(0.5, 2)};
        CHECK(zero_curvature_defect(j, u5, l, p, VpForm::complete) < 1e-9);
        CHECK(zero_curvature_defect(j, u5, l, p, VpForm::displayed) > 1e-3);
    }
    // gamma = 0 removes Vp entirely, so both forms agree.
    const Jet j = random_jet(2);
    CHECK(zero_curvature_defect(j, random_matrix(2, 2), {0.2, 0.3}, {1.1, 0.4, 0.0}, VpForm::displayed) < 1e-9);
}

TEST_CASE("zero_curvature_check on the seed eigenfunctions") {
    const ModelParams p{1.5, 1.0, 1.0};
    CHECK(zero_curvature_check(0.0, p, 0.4, 0.3) < 1e-12);
    CHECK(zero_curvature_check(0.5 * I1, p, 0.4, 0.3) <= 1e-7);
    CHECK(zero_curvature_check({0.1, 0.5}, p, -1.2, 0.7) <= 1e-7);
    CHECK(zero_curvature_check({0.1, 0.5}, p, -1.2, 0.7, 1e-4, VpForm::displayed) > 1e-3);
}

TEST_CASE("central weights") {
    const auto w4 = central_weights(4, 2);
    const double ref4[] = {1, -4, 6, -4, 1};
    for (int i = 0; i < 5; ++i) CHECK(w4[i] == doctest::Approx(ref4[i]).epsilon(1e-13));
    const auto w1 = central_weights(1, 2);
    CHECK(w1[0] == doctest::Approx(-0.5));
    CHECK(w1[1] == doctest::Approx(0.0));
    CHECK(w1[2] == doctest::Approx(0.5));
    const auto w1_4 = central_weights(1, 4);
    REQUIRE(w1_4.size() == 5);
    CHECK(w1_4[0] == doctest::Approx(1.0 / 12));
    CHECK(w1_4[1] == doctest::Approx(-8.0 / 12));
    CHECK(half_width(4, 6) == 4);
    CHECK_THROWS_AS(central_weights(1, 3), StencilError);
}

TEST_CASE("eom_residual: zero field and small grids") {
    const FieldGrid z = sample([](double, double) { return ComplexMatrix(2, 2); }, Axis::span(-1, 1, 11),
                               Axis::span(0, 1, 11), 2);
    const FieldGrid r = eom_residual(z, {1.5, 1, 1});
    CHECK(summarize_residual(r, 2).max == 0.0);
    CHECK(r.x.count == 7);
    CHECK(r.t.count == 9);

    const FieldGrid small = sample([](double, double) { return ComplexMatrix(1, 1); }, Axis::span(-1, 1, 8),
                                   Axis::span(0, 1, 20), 1);
    CHECK_THROWS_AS(eom_residual(small, {}), StencilError);
}

TEST_CASE("plane wave: residual is governed by the time stencil") {
    const ModelParams p{1.5, 1.0, 1.0};
    const double c = 0.5;
    auto f = [&](double x, double t) { return ComplexMatrix::scalar(plane_wave(c, p, x, t)); };
    const FieldGrid g = sample(f, Axis::span(-1.0, 1.0, 11), Axis::span(0.0, 1e-2, 11), 1);
    CHECK(summarize_residual(eom_residual(g, p), 2).max <= 1e-6);
}

TEST_CASE("commutative consistency: matrix transcription equals the conjugate form") {
    for (int trial = 0; trial < 50; ++trial) {
        const Jet j = random_jet(1);
        const ComplexMatrix ut = random_matrix(1, 1);
        const ModelParams p{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
        const cplx a = eom_pointwise(j, ut, p)(0, 0);
        const cplx b = commutative_residual(j.u(0, 0), j.ux(0, 0), j.uxx(0, 0), j.uxxx(0, 0), j.uxxxx(0, 0),
                                            ut(0, 0), p);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("reduction transcriptions agree with the full operator in their limits") {
    for (int trial = 0; trial < 20; ++trial) {
        const Jet j = random_jet(2);
        const ComplexMatrix ut = random_matrix(2, 2);
        const ModelParams full{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
        for (Reduction r : {Reduction::nls, Reduction::hirota, Reduction::lpd, Reduction::mkdv}) {
            const ModelParams p = apply_reduction(full, r);
            CHECK(satisfies_reduction(p, r));
            CHECK(max_diff(eom_pointwise(j, ut, p), reduced_residual(r, j, ut, p)) <= 1e-12 * 50);
        }
        CHECK(max_diff(eom_pointwise(j, ut, full), reduced_residual(Reduction::none, j, ut, full)) <= 1e-12 * 50);
    }
    CHECK(apply_reduction({1, 2, 3}, Reduction::nls).alpha2 == 2.0);
    CHECK(apply_reduction({1, 2, 3}, Reduction::lpd).gamma == 3.0);
    CHECK_FALSE(parse_reduction("kdv").has_value());
}

TEST_CASE("operator ordering is faithful") {
    const Jet j = random_jet(2);
    const ComplexMatrix ut = random_matrix(2, 2);
    const ModelParams p{1.3, 0.8, 1.1};
    const ComplexMatrix ref = eom_pointwise(j, ut, p);
    CHECK(max_diff(residual_variant(j, ut, p, 0), ref) < 1e-12);
    for (int swap = 1; swap <= 10; ++swap) {
        CAPTURE(swap);
        CHECK(max_diff(residual_variant(j, ut, p, swap), ref) > 1e-6);
    }
}

TEST_CASE("stencil convergence on an exact soliton") {
    const ModelParams p{1.5, 1.0, 1.0};
    const cplx l{0.1, 0.5};
    auto f = [&](double x, double t) { return ComplexMatrix::scalar(one_soliton_darboux(l, 1.0, p, x, t)); };
    const FieldGrid g = sample(f, Axis::span(-4, 4, 321), Axis::span(-0.2, 0.2, 81), 1);
    const PointwiseResidual op = [&](const Jet& j, const ComplexMatrix& ut) { return eom_pointwise(j, ut, p); };
    const double order2 = convergence_order(g, op, 2);
    CHECK(order2 >= 1.9);
    CHECK(order2 <= 2.1);
    const double order4 = convergence_order(g, op, 4);
    CHECK(order4 >= 3.8);
    const double r2 = summarize_residual(residual_field(g, op, 2), 2).max;
    const double r6 = summarize_residual(residual_field(g, op, 6), 6).max;
    CHECK(r6 < r2 * 1e-3);
}

TEST_CASE("subsample keeps every other point") {
    const FieldGrid g = sample([](double x, double t) { return ComplexMatrix::scalar(cplx(x, t)); },
                               Axis::span(0, 1, 11), Axis::span(0, 2, 5), 1);
    const FieldGrid s = subsample(g);
    CHECK(s.x.count == 6);
    CHECK(s.t.count == 3);
    CHECK(s.at(1, 2)(0, 0) == g.at(2, 4)(0, 0));
}
