/**
 * @file interp.hpp
 * @brief Interpolation on a sparse node set by functions supported in Omega.
 *
 * Given nodes s_j and values c_j, builds
 *
 *   f(x) = sum_j b_j Phi_{r_j}(x - tau_j) e^{2 pi i s_j x},
 *
 * with Phi_r(x) = Phi(x/r)/r a unit-mass bump on [-r, r]. Radii are chosen so
 * the off-diagonal row sums of A_{kj} = f_j_hat(s_k) stay below eps < 1, which
 * makes A - I a contraction in l^1 and lets a Neumann iteration solve
 * A b = c. The centers tau_j place each support inside Omega; they do not
 * affect the row sums.
 */

#pragma once

#include "tiling/core.hpp"

#include <span>
#include <vector>

namespace tiling::interp {

/// Finite, sorted, disjoint union of closed intervals.
class OmegaSpec {
public:
    OmegaSpec() = default;
    explicit OmegaSpec(std::vector<Interval> intervals);

    const std::vector<Interval>& intervals() const { return intervals_; }
    bool contains(const Interval& iv) const;

private:
    std::vector<Interval> intervals_;
};

/// Phi(x) = g(x) / integral g, supported on [-1, 1], with its Fourier
/// transform tabulated by trapezoid quadrature.
class BumpTransform {
public:
    explicit BumpTransform(SmoothBump bump = {}, std::size_t samples = kDefaultFourierSamples);

    double profile(double x) const;
    /// Phi_hat(t); real because Phi is even. Returns 0 beyond the quadrature's
    /// resolved band, where |Phi_hat| is below double precision.
    double transform(double t) const;
    double resolved_band() const { return resolvedBand_; }

private:
    SmoothBump bump_;
    double mass_ = 1.0;
    double resolvedBand_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> weightedSamples_;
};

struct RadiiChoice {
    std::vector<double> radii;
    /// sum_{k != j} |Phi_hat(r_j (s_k - s_j))| at the chosen r_j.
    std::vector<double> rowSums;
    double rowSumBound = 0.0;
};

/// Off-diagonal row sum for node j at radius r.
double row_sum(std::span<const double> nodes, std::size_t j, double r, const BumpTransform& phi);

/// Least-squares slope of log #(S cap (-r, r)) against log r.
double fitted_growth_exponent(std::span<const double> nodes);

/// Smallest r_j = rBase 2^m with row sum <= eps, for each node.
RadiiChoice choose_radii(std::span<const double> nodes, const BumpTransform& phi, double eps, int p,
                         double rBase = 1.0);

/// Greedy left-to-right placement of I_j = [tau_j - r_j, tau_j + r_j] inside
/// Omega with gaps >= 1. Returns the centers.
std::vector<double> place_supports(std::span<const double> nodes, const OmegaSpec& omega,
                                   std::span<const double> radii);

struct InterpolationSystem {
    std::vector<double> nodes;
    std::vector<double> radii;
    std::vector<double> centers;
    double rowSumBound = 0.0;
    std::vector<cplx> values;

    std::size_t size() const { return nodes.size(); }
    Interval support(std::size_t j) const { return {centers[j] - radii[j], centers[j] + radii[j]}; }

    /// Throws unless sizes agree, nodes increase, M < 1 and supports are
    /// separated by at least 1.
    void validate() const;
};

/// f_j_hat(t) = Phi_hat(r_j (t - s_j)) e^{-2 pi i tau_j (t - s_j)}.
cplx basis_transform(const InterpolationSystem& system, const BumpTransform& phi, std::size_t j,
                     double t);

/// Assembles nodes, radii and centers for the given values.
InterpolationSystem build_system(std::vector<double> nodes, std::vector<cplx> values,
                                 const OmegaSpec& omega, const BumpTransform& phi, double eps, int p);

struct NeumannOptions {
    double tol = 1e-13;
    int maxIter = 10000;
};

struct CoefficientSolution {
    std::vector<cplx> b;
    int iterations = 0;
    /// l^1 norm of b^{m+1} - b^m per step.
    std::vector<double> stepNorms;
    /// ||A b - c||_1.
    double residual = 0.0;
};

/// Dense off-diagonal part of A.
std::vector<std::vector<cplx>> off_diagonal(const InterpolationSystem& system, const BumpTransform& phi);

/// Neumann iteration b <- c - (A - I) b.
CoefficientSolution solve_coeffs(const InterpolationSystem& system, const BumpTransform& phi,
                                 const NeumannOptions& options = {});

class SparseSupportFunction {
public:
    SparseSupportFunction(InterpolationSystem system, std::vector<cplx> coefficients,
                          BumpTransform phi);

    const InterpolationSystem& system() const { return system_; }
    const std::vector<cplx>& coefficients() const { return b_; }

    cplx eval(double x) const;
    cplx operator()(double x) const { return eval(x); }
    cplx transform(double t) const;

    /// True when x lies in some support interval I_j.
    bool in_support(double x) const;

private:
    InterpolationSystem system_;
    std::vector<cplx> b_;
    BumpTransform phi_;
};

SparseSupportFunction synthesize_interpolant(const InterpolationSystem& system,
                                             const std::vector<cplx>& b,
                                             const BumpTransform& phi);

}  // namespace tiling::interp
