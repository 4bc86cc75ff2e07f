/**
 * @file verify.hpp
 * @brief Checks of tiling, density and spectral properties.
 */

#pragma once

#include "tiling/core.hpp"
#include "tiling/interp.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace tiling::verify {

using ComplexFunction = std::function<cplx(double)>;

// ---------------------------------------------------------------------------
// Tiling sums

struct TilingSumOptions {
    /// Minimum distance from the evaluation interval to the window edge, as a
    /// fraction of the window half-width.
    double marginFraction = 0.25;
    bool includeTailBound = true;
};

struct TilingSumResult {
    GridFunction sums;
    /// Mean of the sums over the grid.
    cplx level;
    /// sup |sum - level| on the grid.
    double measuredDeviation = 0.0;
    /// Estimated contribution of translates outside the window.
    double tailBound = 0.0;
    /// measuredDeviation + tailBound.
    double maxDeviation = 0.0;
};

/// Samples sum_{lambda} f(x - lambda) on the nodes of `xs`. Each sum runs in
/// order of increasing |x - lambda| with compensated accumulation.
TilingSumResult tiling_sum(const ComplexFunction& f, const PointSet& lambda, const GridFunction& xs,
                           const TilingSumOptions& options = {});
TilingSumResult tiling_sum(const BandlimitedFunction& f, const PointSet& lambda, const GridFunction& xs,
                           const TilingSumOptions& options = {});
TilingSumResult tiling_sum(const interp::SparseSupportFunction& f, const PointSet& lambda,
                           const GridFunction& xs, const TilingSumOptions& options = {});

// ---------------------------------------------------------------------------
// Density

struct UniformDensityEstimate {
    double r = 0.0;
    /// min and max over placements x of #(Lambda cap [x, x+r)) / r.
    double minDensity = 0.0;
    double maxDensity = 0.0;
};

struct DensityReport {
    /// sup_x #(Lambda cap [x, x+1)) over unit intervals inside the window.
    std::size_t maxPerUnit = 0;
    std::vector<UniformDensityEstimate> uniformDensityEstimates;
    /// Least-squares slope of centered counts #(Lambda cap [c - r/2, c + r/2)) against r.
    double density = 0.0;
    /// Largest |count - fit| of that regression, the o(r) term.
    double densityResidual = 0.0;
    double maxGap = 0.0;
    double minGap = 0.0;
    /// Least-squares slope of log #(Lambda cap (c - r, c + r)) against log r.
    double growthExponent = 0.0;
};

DensityReport density_report(const PointSet& lambda);

// ---------------------------------------------------------------------------
// Test functions and pairings

/// psi(x) = amplitude g((x - shift)/width) (1 + slope (x - shift)) cos(2 pi frequency (x - shift))
/// with g the smooth bump of the given sharpness; supported in
/// [shift - width, shift + width].
struct TestFunctionSpec {
    double width = 0.39;
    double shift = 0.0;
    double sharpness = 8.0;
    double slope = 0.0;
    double frequency = 0.0;
    double amplitude = 1.0;
};

class TestFunction {
public:
    explicit TestFunction(TestFunctionSpec spec, std::size_t samples = kDefaultFourierSamples);

    const TestFunctionSpec& spec() const { return spec_; }
    Interval support() const { return {spec_.shift - spec_.width, spec_.shift + spec_.width}; }

    double value(double x) const;
    /// Exact second derivative (forward-mode differentiation of the profile).
    double second_derivative(double x) const;
    /// psi_hat(xi) = integral psi(x) e^{-2 pi i xi x} dx by trapezoid quadrature.
    cplx transform(double xi) const;

private:
    TestFunctionSpec spec_;
    detail::ExponentialSum dual_;
};

struct PairingResult {
    cplx value;
    /// Estimated contribution of Lambda outside its window.
    double tailBound = 0.0;
};

/// sum_{lambda} psi_hat(lambda).
PairingResult pair_with_test_function(const PointSet& lambda, const TestFunction& psi);

// ---------------------------------------------------------------------------
// Periodic structures

/// Atoms k/a_j with weight (1/a_j) e^{-2 pi i k b_j / a_j} for |k/a_j| <= tmax,
/// merged at coinciding locations; cancelled atoms are dropped.
SpectrumMeasure periodic_spectrum(const PeriodicStructure& ps, double tmax);

struct TilingVerdict {
    bool tiles = false;
    cplx level;
    std::optional<SpectrumAtom> firstFailure;
    double firstFailureValue = 0.0;
};

/// f tiles with the structure iff fhat vanishes on the nonzero spectrum atoms.
TilingVerdict periodic_tiling_check(const ComplexFunction& fhat, const PeriodicStructure& ps, double tmax,
                                    double tol = 1e-10);

std::optional<PeriodicStructure> detect_periodic_structure(const PointSet& lambda, int maxProgressions,
                                                           double tol);

// ---------------------------------------------------------------------------
// Cyclic groups

struct CyclicInstance {
    int modulus = 1;
    std::vector<cplx> f;
    std::vector<int> lambda;

    void validate() const;
};

struct CyclicVerdict {
    bool directTiles = false;
    bool spectralTiles = false;
    std::optional<cplx> directLevel;
    /// DFT(f)[0] DFT(1_lambda)[0] / N.
    cplx spectralLevel;
};

CyclicVerdict cyclic_tiling_check(const CyclicInstance& inst);

struct CyclicCensus {
    int modulus = 0;
    int maxF = 0;
    int maxL = 0;
    std::size_t pairs = 0;
    std::size_t agreements = 0;
    std::size_t disagreements = 0;
    std::size_t tilings = 0;
};

/// All indicator f with at most maxF ones against all lambda with at most
/// maxL elements, including the empty sets.
CyclicCensus cyclic_census(int modulus, int maxF, int maxL);

}  // namespace tiling::verify
