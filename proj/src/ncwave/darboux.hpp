#pragma once

#include <cstddef>
#include <vector>

#include "lax.hpp"
#include "ncalgebra.hpp"

namespace ncwave {

/// Gramian: W = Q Theta + I with bordered quasideterminant readout.
/// Wronskian: iterated Darboux transformation with polarisation matrices.
enum class Method { gramian, wronskian };

struct SolitonScenario {
    FieldMode mode = FieldMode::commutative;
    Method method = Method::gramian;
    ModelParams params;
    std::vector<cplx> lambdas;
    /// Gramian constant, (2 m n) x (2 m n) with m = dim().
    ComplexMatrix Q = ComplexMatrix(2, 2);
    double c1 = 1.0;
    /// Wronskian polarisations, one m x m matrix per soliton.
    std::vector<ComplexMatrix> polarizations;

    std::size_t dim() const { return mode == FieldMode::commutative ? 1 : 2; }
    std::size_t n() const { return lambdas.size(); }
    /// Throws DimensionError describing the first inconsistency.
    void validate() const;
};

/// Q in the 4x4 layout used for one noncommutative soliton:
/// rows (q11 q12 q13 q14), (q12 q11 q14 q13), (q13 q14 q33 q34), (q14 q13 q34 q33).
ComplexMatrix nc_q_layout(cplx q11, cplx q12, cplx q13, cplx q14, cplx q33, cplx q34);
/// Commutative one-soliton Q = [[q1, q2], [q2, q1]].
ComplexMatrix commutative_q(cplx q1, cplx q2);
ComplexMatrix block_diagonal(const std::vector<ComplexMatrix>& blocks);

/// Seed border rows. Columns are grouped per soliton as m phi-columns then m
/// chi-columns; phi_row carries phi_j I_m on the phi-columns and chi_row
/// carries chi_j I_m on the chi-columns. Both seeds are scaled by 1/sqrt(c1).
struct SeedRows {
    ComplexMatrix phi;  // m x 2mn
    ComplexMatrix chi;  // m x 2mn
};
SeedRows seed_rows(const SolitonScenario& s, double x, double t);

/// Antiderivative of exp(kappa x + tau) in x, switching to x exp(tau) when
/// |kappa| < 1e-12.
cplx exp_antiderivative(cplx kappa, cplx tau, double x);

/// Theta = i * antiderivative of Xi^dag J Xi, (2mn) x (2mn).
ComplexMatrix theta(const SolitonScenario& s, double x, double t);
/// Xi^dag J Xi, the x-derivative of Theta / i.
ComplexMatrix theta_density(const SolitonScenario& s, double x, double t);
ComplexMatrix gramian_w(const SolitonScenario& s, double x, double t);

/// Commutative Gramian solution via the determinant ratio
/// 2i det([[W, Q chi^dag], [phi, 0]]) / det(W). Throws PoleError.
cplx gramian_solution(const SolitonScenario& s, double x, double t);
/// Companion formula with the roles of phi and chi exchanged.
cplx gramian_adjoint(const SolitonScenario& s, double x, double t);

/// m x m quasi-Gramian solution 2i |[[W, Q chi^dag], [phi, 0]]| expanded at
/// the zero corner. Throws PoleError.
ComplexMatrix quasi_gramian_solution(const SolitonScenario& s, double x, double t);

/// Explicit one-soliton formula in terms of (lambda, q1, q2, c1).
cplx one_soliton_closed_form(cplx lambda, double q1, double q2, double c1,
                             const ModelParams& params, double x, double t);

/// Eigenfunction pair for one spectral parameter: Y = [v, w] with
/// v = (phi I; chi P), w = (-conj(chi) P^dag; conj(phi) I) and
/// Lambda = diag(lambda I, conj(lambda) I).
struct EigenPair {
    ComplexMatrix Y;
    ComplexMatrix Lambda;
};
EigenPair eigen_pair(cplx lambda, const ComplexMatrix& polarization, const ModelParams& params,
                     double x, double t);

/// n-fold quasi-Wronskian solution on the zero seed:
/// 2i |[[Xi_hat, f_2n], [top rows of Y Lambda^n, 0]]|. Throws PoleError.
ComplexMatrix quasi_wronskian_solution(const std::vector<cplx>& lambdas,
                                       const std::vector<ComplexMatrix>& polarizations,
                                       const ModelParams& params, double x, double t);
/// The u^dag companion built from the bottom rows and f_{2n-1}.
ComplexMatrix quasi_wronskian_adjoint(const std::vector<cplx>& lambdas,
                                      const std::vector<ComplexMatrix>& polarizations,
                                      const ModelParams& params, double x, double t);

/// One-soliton Darboux solution in explicit form,
/// 4 lambda_I conj(p) phi conj(chi) / (|phi|^2 + |p|^2 |chi|^2).
cplx one_soliton_darboux(cplx lambda, cplx p, const ModelParams& params, double x, double t);

/// Dispatch on scenario mode and method; returns an m x m value.
ComplexMatrix evaluate(const SolitonScenario& s, double x, double t);

struct DarbouxMatrix {
    ComplexMatrix Y;
    ComplexMatrix Lambda;
};

/// lambda phi - Y Lambda Y^-1 phi evaluated directly.
ComplexMatrix darboux_apply_direct(const DarbouxMatrix& d, cplx lambda, const ComplexMatrix& phi);
/// Same value as the quasideterminant |[[Y, phi], [Y Lambda, lambda phi]]|.
ComplexMatrix darboux_apply(const DarbouxMatrix& d, cplx lambda, const ComplexMatrix& phi);

/// n-fold transformation of phi by the eigenfunction blocks Y_1..Y_n as one
/// quasideterminant of the iterated matrix.
ComplexMatrix darboux_iterated(const std::vector<DarbouxMatrix>& steps, cplx lambda,
                               const ComplexMatrix& phi);
/// The same transformation applied one step at a time, transforming the
/// remaining eigenfunctions along the way.
ComplexMatrix darboux_sequential(const std::vector<DarbouxMatrix>& steps, cplx lambda,
                                 const ComplexMatrix& phi);

}  // namespace ncwave
