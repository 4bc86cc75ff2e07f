/**
 * @file kargaev.hpp
 * @brief Fixed-point construction of a translation set of unbounded density.
 *
 * Solves alpha + F(R alpha) = beta, beta_n = (-1)^n r, by Banach iteration on
 * the window |n| <= N, where
 *
 *   (R alpha)(t) = sum_n e^{2 pi i n t} alpha_n (chi_hat_{n^2+1}(-alpha_n t) - 1)
 *
 * on I = [-1/2, 1/2] and F takes Fourier coefficients on I. The solution
 * spreads n^2 + 1 unit masses near each integer n so that the Fourier
 * transform of the resulting Dirac comb equals delta_0 - delta_0''/(4 pi^2)
 * on (-1/2, 1/2). A Schwartz function with transform -2 pi^2 t^2 phi_hat(t)
 * then tiles at level phi_hat(0).
 */

#pragma once

#include "tiling/core.hpp"

#include <vector>

namespace tiling::kargaev {

struct SolveOptions {
    double tol = 1e-12;
    int maxIter = 200;
    /// Relative band for |alpha_n| around r.
    double eps = 0.5;
};

struct SolveReport {
    double r = 0.0;
    SeqWindow alpha;
    int iterations = 0;
    /// sup |alpha + F(R alpha) - beta| recomputed after the last step.
    double finalResidual = 0.0;
    /// |alpha^{m+1} - alpha^m| / |alpha^m - alpha^{m-1}|.
    std::vector<double> contractionRatios;
};

/// Grid template on I = [-1/2, 1/2] with max(8N + 1, 4097) nodes.
GridFunction unit_interval_grid(int N);

/// beta_n = (-1)^n r.
SeqWindow alternating_sequence(int N, double r);

/// Samples of R alpha on the nodes of `grid`, which must cover [-1/2, 1/2].
GridFunction apply_R(const SeqWindow& alpha, const GridFunction& grid);

/// Fourier coefficients on I for |n| <= N by composite Simpson quadrature.
/// The grid must be Hermitian-symmetric and have at least 8N nodes.
SeqWindow fourier_coeffs(const GridFunction& psi, int N);

/// sup |alpha + F(R alpha) - beta| on the grid template.
double fixed_point_residual(const SeqWindow& alpha, const SeqWindow& beta, const GridFunction& grid);

/// Banach iteration alpha <- beta - F(R alpha) from alpha = beta.
SolveReport solve_alpha(double r, int N, const SolveOptions& options = {});

/// Tries r = rStart, rStart/2, ... until solve_alpha succeeds.
SolveReport solve_alpha_auto(int N, const SolveOptions& options = {}, double rStart = 0.1,
                             int maxHalvings = 20);

/// Union over |n| <= N of { n + 2 j alpha_n / ((n^2+1)(n^2+2)) : 1 <= j <= n^2+1 },
/// on the window [-N-1, N+1].
PointSet build_lambda(const SeqWindow& alpha);

/// Points of Lambda_n, in increasing j.
std::vector<double> cluster_points(int n, double alpha_n);

struct TilerOptions {
    /// Sharpness of the bump phi_hat(t) = w g(t/a).
    double sharpness = 8.0;
    std::size_t samples = kDefaultFourierSamples;
};

/// f = phi''/2 with phi_hat(t) = w g(t/a); f_hat(t) = -2 pi^2 t^2 phi_hat(t).
/// The factor 1/2 is 1/(c_2 2! (-2 pi i)^2) with c_2 = -1/(4 pi^2).
BandlimitedFunction build_schwartz_tiler(double w, double a, const TilerOptions& options = {});

/// c_2 * 2! * (-2 pi i)^2 for c_2 = -1/(4 pi^2).
cplx tiler_normalization();

}  // namespace tiling::kargaev
