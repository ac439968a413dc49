#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncalgebra.hpp"

namespace ncwave {

struct ModelParams {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double gamma = 0.0;
};

/// Named parameter limits of the hierarchy.
enum class Reduction { none, nls, hirota, lpd, mkdv };

std::optional<Reduction> parse_reduction(const std::string& name);
std::string reduction_name(Reduction r);
/// Zero the coefficients that the limit removes.
ModelParams apply_reduction(ModelParams p, Reduction r);
bool satisfies_reduction(const ModelParams& p, Reduction r);

/// Seed eigenfunctions phi = exp(i zeta), chi = exp(-i zeta) of the zero
/// background, zeta = -lambda x + 2 lambda^2 (4 gamma lambda^2 - 2 lambda alpha1 - alpha2) t.
struct Seed {
    cplx lambda;
    ModelParams params;

    cplx t_coefficient() const;
    cplx zeta(double x, double t) const;
    cplx phi(double x, double t) const;
    cplx chi(double x, double t) const;
};

Seed seed(cplx lambda, const ModelParams& params);

/// Values of u and its x-derivatives at one point. All entries share one
/// square shape (1x1 in the commutative case).
struct Jet {
    ComplexMatrix u, ux, uxx, uxxx, uxxxx;

    static Jet zero(std::size_t m);
    std::size_t dim() const { return u.rows(); }
};

/// Which temporal potential to build. `complete` adds the rho3..rho6 terms to
/// the diagonal and off-diagonal blocks of Vp; `displayed` omits them.
enum class VpForm { complete, displayed };

struct LaxMatrices {
    cplx lambda;
    cplx rho1, rho2;
    ComplexMatrix J;   // diag(-I, I)
    ComplexMatrix U;   // [[0, u], [-u^dag, 0]]
    ComplexMatrix B;
    ComplexMatrix A1, A2;
    ComplexMatrix V1, V2, V3, V4;
    ComplexMatrix rho3, rho4, rho5, rho6;
    ComplexMatrix Vp;  // gamma [[V1 (+rho3), V2 (+rho5)], [V3 (+rho6), V4 (+rho4)]]

    /// i lambda J + U
    ComplexMatrix spatial() const;
    /// B + Vp
    ComplexMatrix temporal() const;
};

LaxMatrices lax_matrices(const Jet& jet, cplx lambda, const ModelParams& params,
                         VpForm form = VpForm::complete);

/// Terms of the equation of motion at a point; the residual is their sum.
struct EomTerms {
    ComplexMatrix time;    // i u_t
    ComplexMatrix alpha1;  // i (u_xxx + 3(u_x u^dag u + u u^dag u_x)) alpha1
    ComplexMatrix alpha2;  // (2 u u^dag u + u_xx) alpha2
    ComplexMatrix gamma;   // fourth-order group times gamma

    ComplexMatrix total() const;
};

EomTerms eom_terms(const Jet& jet, const ComplexMatrix& ut, const ModelParams& params);
ComplexMatrix eom_pointwise(const Jet& jet, const ComplexMatrix& ut, const ModelParams& params);
/// u_t implied by the equation of motion.
ComplexMatrix eom_time_derivative(const Jet& jet, const ModelParams& params);

/// Scalar commutative equation written with conjugates instead of adjoints.
cplx commutative_residual(cplx u, cplx ux, cplx uxx, cplx uxxx, cplx uxxxx, cplx ut,
                          const ModelParams& params);

/// Residuals of the reduced equations, transcribed separately from
/// eom_pointwise. `params` supplies only the surviving coefficients.
ComplexMatrix reduced_residual(Reduction r, const Jet& jet, const ComplexMatrix& ut,
                               const ModelParams& params);

/// Max-norm deviation of X_t - T_x + [X, T] for a jet carrying u..u_xxxxx
/// (the fifth derivative is passed separately), with u_t taken from the
/// equation of motion.
double zero_curvature_defect(const Jet& jet, const ComplexMatrix& u5, cplx lambda,
                             const ModelParams& params, VpForm form = VpForm::complete);

/// Finite-difference check of the seed column (phi, chi) against
/// Y_x = X Y and Y_t = T Y at u = 0. Returns the larger max-norm deviation.
double zero_curvature_check(cplx lambda, const ModelParams& params, double x, double t,
                            double step = 1e-4, VpForm form = VpForm::complete);

/// Uniformly spaced sample points start + i * step.
struct Axis {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 1;

    static Axis span(double lo, double hi, std::size_t n);
    double at(std::size_t i) const { return start + static_cast<double>(i) * step; }
    double end() const { return at(count - 1); }
};

enum class FieldMode { commutative, noncommutative };

/// Sampled field over (t, x), stored t-major. Points where the solution
/// formula hit a pole carry valid = 0.
struct FieldGrid {
    Axis x, t;
    std::size_t dim = 1;
    FieldMode mode = FieldMode::commutative;
    std::vector<ComplexMatrix> values;
    std::vector<std::uint8_t> valid;

    FieldGrid() = default;
    FieldGrid(Axis x, Axis t, std::size_t dim, FieldMode mode);

    std::size_t index(std::size_t it, std::size_t ix) const { return it * x.count + ix; }
    const ComplexMatrix& at(std::size_t it, std::size_t ix) const { return values[index(it, ix)]; }
    std::size_t pole_count() const;
};

/// Central finite-difference weights for the given derivative and even
/// accuracy order, offsets -h..h with h = half_width(derivative, order).
std::vector<double> central_weights(int derivative, int order);
int half_width(int derivative, int order);

using PointwiseResidual = std::function<ComplexMatrix(const Jet&, const ComplexMatrix& ut)>;

/// Apply a pointwise residual on interior points where every stencil fits.
/// Stencil orders 2, 4 and 6 are supported. Throws StencilError when the
/// grid is too small.
FieldGrid residual_field(const FieldGrid& grid, const PointwiseResidual& f, int order = 2);
FieldGrid eom_residual(const FieldGrid& grid, const ModelParams& params, int order = 2);

struct ResidualStats {
    double max = 0.0;
    double mean = 0.0;
    std::size_t points = 0;
    std::size_t skipped = 0;
    double hx = 0.0;
    double ht = 0.0;
    int order = 2;
    std::map<std::string, double> term_max;
};

ResidualStats summarize_residual(const FieldGrid& residual, int order);

/// Residual statistics including a per-term breakdown of the equation of
/// motion.
ResidualStats verify_field(const FieldGrid& grid, const ModelParams& params, int order = 2);

/// Observed convergence order: compares the residual of `grid` with that of
/// the grid subsampled by two at common interior points.
double convergence_order(const FieldGrid& grid, const PointwiseResidual& f, int order = 2);

/// Every other sample along both axes.
FieldGrid subsample(const FieldGrid& grid);

}  // namespace ncwave
