#include <cmath>
#include <numbers>

#include <doctest.h>
#include "ncwave/error.hpp"
#include "ncwave/lax.hpp"
#include "ncwave/mi.hpp"
#include "support.hpp"

using namespace ncwave;
using namespace testsupport;

namespace {

const ModelParams kFig{1.5, 1.0, 1.0};

ModelParams random_params() { return {uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)}; }

// Eigenvalues of [[0, a], [b, 0]] from the characteristic polynomial.
double max_real_eigenvalue(double a, double b) {
    const cplx r = std::sqrt(cplx(a * b, 0.0));
    return std::max(r.real(), (-r).real());
}

}  // namespace

TEST_CASE("plane wave values") {
    CHECK(plane_wave(0.7, kFig, 3.0, 0.0) == cplx(0.7, 0.0));
    CHECK(plane_wave(0.0, kFig, 1.0, 2.0) == cplx(0.0, 0.0));
    const cplx v = plane_wave(1.0, {0.0, 1.0, 1.0}, 0.0, std::numbers::pi);
    CHECK(std::abs(v - 1.0) < 1e-13);
    CHECK(std::abs(plane_wave(0.5, kFig, -4.0, 1.3) - plane_wave(0.5, kFig, 9.0, 1.3)) == 0.0);
}

TEST_CASE("plane wave solves the equation of motion") {
    for (int trial = 0; trial < 10; ++trial) {
        const double c = uniform(0.1, 1.5);
        const ModelParams p = random_params();
        auto f = [&](double x, double t) { return ComplexMatrix::scalar(plane_wave(c, p, x, t)); };
        const FieldGrid g = sample(f, Axis::span(-1.0, 1.0, 11), Axis::span(0.0, 5e-6, 11), 1);
        CHECK(summarize_residual(eom_residual(g, p), 2).max <= 1e-8);
    }
}

TEST_CASE("mi_system: substitutions") {
    const MiSystem s0 = mi_system(0.0, 0.5, kFig);
    CHECK(s0.beta == 0.0);
    CHECK(s0.a == 0.0);
    CHECK(s0.b == doctest::Approx(2 * 0.25 * (12 * 0.25 + 2)).epsilon(1e-15));

    // NLS limit by hand: beta = k^2/2, a = beta, b = -beta + 4 c^2
    const ModelParams nls{0.0, 1.0, 0.0};
    for (double k : {-2.0, -0.3, 0.7, 1.9}) {
        const MiSystem s = mi_system(k, 1.0, nls);
        CHECK(s.beta == doctest::Approx(k * k / 2).epsilon(1e-15));
        CHECK(s.a == doctest::Approx(k * k / 2).epsilon(1e-15));
        CHECK(s.b == doctest::Approx(-k * k / 2 + 4.0).epsilon(1e-15));
        const auto m = s.matrix();
        CHECK(m[0][0] == 0.0);
        CHECK(m[1][1] == 0.0);
    }

    // zero background is a pure rotation
    for (int trial = 0; trial < 20; ++trial) {
        const double k = uniform(-3, 3);
        const MiSystem s = mi_system(k, 0.0, random_params());
        CHECK(s.a == doctest::Approx(s.beta));
        CHECK(s.b == doctest::Approx(-s.beta));
        CHECK(growth_rate_numeric(k, 0.0, random_params()) == 0.0);
    }
}

TEST_CASE("growth_rate_numeric matches the characteristic polynomial") {
    for (int trial = 0; trial < 200; ++trial) {
        const double k = uniform(-3, 3), c = uniform(0, 1.5);
        const ModelParams p = random_params();
        const MiSystem s = mi_system(k, c, p);
        CHECK(growth_rate_numeric(k, c, p) == doctest::Approx(max_real_eigenvalue(s.a, s.b)).epsilon(1e-14));
        if (s.a * s.b < 0) CHECK(growth_rate_numeric(k, c, p) == 0.0);
    }
}

TEST_CASE("growth_rate_closed: zero wavenumber and c = 0") {
    for (int trial = 0; trial < 10; ++trial) {
        const ModelParams p = random_params();
        CHECK(growth_rate_closed(0.0, uniform(0, 2), p) == cplx(0.0, 0.0));
    }
    // c = 0: radicand is k^3 (a2 - 2 a1 k - 2 g k^2)^2 >= 0 for k > 0
    const ModelParams p{0.3, 1.0, 0.2};
    for (double k : {0.5, 1.0, 2.0}) {
        const double f = k * k * (p.alpha2 - 2 * p.alpha1 * k - 2 * p.gamma * k * k);
        const cplx w = growth_rate_closed(k, 0.0, p);
        CHECK(std::abs(w - std::abs(k) / 2 * std::sqrt(cplx(f * f / k, 0.0))) < 1e-13);
        CHECK(growth_rate_numeric(k, 0.0, p) == 0.0);
    }
}

TEST_CASE("closed and eigenvalue routes: exact algebraic relation") {
    // The displayed closed form satisfies omega^2 = -k a b identically,
    // so the routes coincide only where -k = 1 or ab = 0.
    for (int trial = 0; trial < 200; ++trial) {
        const double k = uniform(-3, 3), c = uniform(0, 1.5);
        const ModelParams p = random_params();
        const MiSystem s = mi_system(k, c, p);
        const cplx w = growth_rate_closed(k, c, p);
        const double scale = std::max(1.0, std::abs(k * s.a * s.b));
        CHECK(std::abs(w * w - (-k * s.a * s.b)) <= 1e-11 * scale);
    }
    for (int trial = 0; trial < 50; ++trial) {
        const double c = uniform(0, 1.5);
        const ModelParams p = random_params();
        CHECK(std::abs(growth_rate_closed(-1.0, c, p).real() - growth_rate_numeric(-1.0, c, p)) < 1e-10);
    }
}

TEST_CASE("unstable_band: NLS limit and empty cases") {
    const ModelParams nls{0.0, 1.0, 0.0};
    const auto bands = unstable_band(1.0, nls, 4.0, 401);
    REQUIRE(bands.size() == 2);
    const double edge = 2.0 * std::sqrt(2.0);
    CHECK(std::abs(bands[0].lo + edge) < 1e-7);
    CHECK(std::abs(bands[0].hi) < 1e-7);
    CHECK(std::abs(bands[1].lo) < 1e-7);
    CHECK(std::abs(bands[1].hi - edge) < 1e-7);

    CHECK(unstable_band(0.0, kFig, 3.0, 121).empty());

    CHECK_THROWS_AS(unstable_band(1.0, nls, 0.0, 200), DimensionError);
    CHECK_THROWS_AS(unstable_band(1.0, nls, 3.0, 99), DimensionError);
}

TEST_CASE("unstable_band: interior points grow and edges are sign changes") {
    const auto bands = unstable_band(0.5, kFig, 3.0, 121);
    REQUIRE_FALSE(bands.empty());
    for (const Band& b : bands) {
        CHECK(b.lo < b.hi);
        CHECK(growth_rate_numeric(0.5 * (b.lo + b.hi), 0.5, kFig) > 0.0);
        if (b.lo > -3.0) CHECK(growth_rate_numeric(b.lo - 1e-6, 0.5, kFig) <= 1e-12);
        if (b.hi < 3.0) CHECK(growth_rate_numeric(b.hi + 1e-6, 0.5, kFig) <= 1e-12);
    }
}

TEST_CASE("linearized evolution") {
    const MiSystem s = mi_system(0.8, 0.5, kFig);
    CHECK(linearized_residual(s, {0.0, 0.0}, 1.0) == 0.0);
    const auto z = propagate(s, {0.0, 0.0}, 2.0);
    CHECK(z[0] == cplx(0.0));
    CHECK(z[1] == cplx(0.0));

    for (int trial = 0; trial < 20; ++trial) {
        const MiSystem r = mi_system(uniform(-1.5, 1.5), uniform(0, 1), kFig);
        const std::array<cplx, 2> y0{cplx(uniform(-1, 1), uniform(-1, 1)), cplx(uniform(-1, 1), uniform(-1, 1))};
        const auto y1 = propagate(r, y0, 1.0);
        const double scale = std::max({1.0, std::abs(y1[0]), std::abs(y1[1])});
        CHECK(linearized_residual(r, y0, 1.0) <= 1e-8 * scale);
    }

    // eigenvector (a, sqrt(ab)) grows at sqrt(ab)
    REQUIRE(s.a * s.b > 0);
    const double rate = std::sqrt(s.a * s.b);
    const std::array<cplx, 2> v{s.a, rate};
    const auto y = propagate(s, v, 1.5);
    CHECK(std::abs(y[0] - std::exp(rate * 1.5) * v[0]) < 1e-12 * std::exp(rate * 1.5));
    CHECK(std::abs(y[1] - std::exp(rate * 1.5) * v[1]) < 1e-12 * std::exp(rate * 1.5));
}

TEST_CASE("growth vanishes continuously as the background amplitude goes to zero") {
    const ModelParams p{0.4, 1.0, 0.3};
    for (double k : {-1.2, 0.3, 0.9}) {
        double prev = growth_rate_numeric(k, 0.2, p);
        for (double c : {0.1, 0.05, 0.01, 0.001}) {
            const double g = growth_rate_numeric(k, c, p);
            CHECK(g <= prev + 1e-12);
            prev = g;
        }
        const MiSystem s = mi_system(k, 0.0, p);
        CHECK(s.a * s.b <= 0.0);
        CHECK(growth_rate_numeric(k, 1e-6, p) < 1e-5);
    }
}
