/**
 * @file core.hpp
 * @brief Shared domain types for translational tilings of the real line.
 *
 * Point sets, real sequence windows, grid samples, pure point spectra and
 * band-limited functions. A band-limited function is stored on the Fourier
 * side only; every spatial value is a quadrature of its transform.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiling {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Default number of Fourier-side samples for band-limited functions.
inline constexpr std::size_t kDefaultFourierSamples = 4097;

/// Raised when an operation's domain contract is violated. `kind()` names
/// the case ("point-outside-window", "non-contraction", ...).
class DomainError : public std::runtime_error {
public:
    DomainError(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double center() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return x >= lo && x <= hi; }
    bool contains(const Interval& other) const { return other.lo >= lo && other.hi <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// ---------------------------------------------------------------------------
// PointSet

/// Finite, strictly increasing truncation of a translation set to a window.
class PointSet {
public:
    PointSet() = default;

    const std::vector<double>& points() const { return points_; }
    const Interval& window() const { return window_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    double operator[](std::size_t i) const { return points_[i]; }

    /// Smallest gap between consecutive points; +inf for fewer than two points.
    double min_gap() const;

    /// Number of points in the half-open interval [lo, hi).
    std::size_t count_in(double lo, double hi) const;

    /// Translate points and window by `shift`.
    PointSet shifted(double shift) const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    friend struct PointSetValidation validate_point_set(std::span<const double>, Interval);

    PointSet(std::vector<double> points, Interval window)
        : points_(std::move(points)), window_(window) {}

    std::vector<double> points_;
    Interval window_;
};

struct PointSetValidation {
    PointSet set;
    double minGap = std::numeric_limits<double>::infinity();
    std::vector<std::string> warnings;
};

/// Points closer than this are merged into one.
inline constexpr double kDuplicateTolerance = 1e-12;

/// Sorts and deduplicates `points`, rejecting non-finite values and values
/// outside `window`.
PointSetValidation validate_point_set(std::span<const double> points, Interval window);

// ---------------------------------------------------------------------------
// SeqWindow

/// Real sequence alpha_n restricted to -N <= n <= N.
class SeqWindow {
public:
    SeqWindow() = default;
    explicit SeqWindow(int N, double fill = 0.0);
    SeqWindow(int N, std::vector<double> values);

    int N() const { return N_; }
    std::size_t size() const { return values_.size(); }

    double operator[](int n) const { return values_[static_cast<std::size_t>(n + N_)]; }
    double& operator[](int n) { return values_[static_cast<std::size_t>(n + N_)]; }

    const std::vector<double>& values() const { return values_; }

    double sup_norm() const;

    friend bool operator==(const SeqWindow&, const SeqWindow&) = default;

private:
    int N_ = 0;
    std::vector<double> values_ = std::vector<double>(1, 0.0);
};

double sup_distance(const SeqWindow& a, const SeqWindow& b);

// ---------------------------------------------------------------------------
// GridFunction

/// Complex samples on M uniform nodes of a closed interval. Nodes are
/// generated symmetrically about the midpoint so that mirrored nodes are
/// exact negatives on a symmetric interval.
class GridFunction {
public:
    GridFunction(Interval interval, std::size_t M);
    GridFunction(Interval interval, std::vector<cplx> samples);

    static GridFunction sample(Interval interval, std::size_t M,
                               const std::function<cplx(double)>& fn);

    const Interval& interval() const { return interval_; }
    std::size_t size() const { return samples_.size(); }
    double node(std::size_t i) const;
    double spacing() const { return interval_.length() / static_cast<double>(size() - 1); }

    const std::vector<cplx>& samples() const { return samples_; }
    std::vector<cplx>& samples() { return samples_; }
    cplx operator[](std::size_t i) const { return samples_[i]; }
    cplx& operator[](std::size_t i) { return samples_[i]; }

    double sup_norm() const;

    /// Largest |psi(-t) - conj(psi(t))| over mirrored nodes. Requires an
    /// interval symmetric about zero.
    double hermitian_defect() const;

private:
    Interval interval_;
    std::vector<cplx> samples_;
};

// ---------------------------------------------------------------------------
// Spectra and periodic structures

struct SpectrumAtom {
    double location = 0.0;
    cplx weight{};
    int derivativeOrder = 0;
};

/// Pure point measure; atoms of equal derivative order have strictly
/// increasing locations and nonzero weights.
class SpectrumMeasure {
public:
    SpectrumMeasure() = default;
    explicit SpectrumMeasure(std::vector<SpectrumAtom> atoms);

    const std::vector<SpectrumAtom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    /// Weight of the order-0 atom at `location` (within `tol`), or zero.
    cplx weight_at(double location, double tol = 1e-12) const;

private:
    std::vector<SpectrumAtom> atoms_;
};

struct Progression {
    double period = 1.0;
    double offset = 0.0;

    friend bool operator==(const Progression&, const Progression&) = default;
};

/// Finite disjoint union of arithmetic progressions period*Z + offset.
class PeriodicStructure {
public:
    PeriodicStructure() = default;
    explicit PeriodicStructure(std::vector<Progression> progressions);

    const std::vector<Progression>& progressions() const { return progressions_; }
    std::size_t size() const { return progressions_.size(); }

    /// Sum of 1/period, the density of the union and the mass of the
    /// spectrum atom at the origin.
    double density() const;

    /// Points of the union inside `window`, sorted.
    std::vector<double> points_in(Interval window) const;

private:
    std::vector<Progression> progressions_;
};

// ---------------------------------------------------------------------------
// Smooth bump and band-limited functions

/// g(u) = exp(s (1 - 1/(1 - u^2))) on |u| < 1, zero elsewhere, g(0) = 1.
/// Sharpness s = 1 is the standard bump.
struct SmoothBump {
    double sharpness = 1.0;

    double operator()(double u) const;
};

namespace detail {

/// Evaluates sum_k c_k exp(2 pi i t_k x) over uniform nodes t_k = t0 + k h,
/// in index order.
class ExponentialSum {
public:
    ExponentialSum() = default;
    ExponentialSum(double t0, double h, std::vector<cplx> coefficients);

    cplx operator()(double x) const;

    const std::vector<cplx>& coefficients() const { return coefficients_; }

private:
    double t0_ = 0.0;
    double h_ = 0.0;
    std::vector<cplx> coefficients_;
    std::size_t first_ = 0;
    std::size_t last_ = 0;
};

}  // namespace detail

/// Real-valued Schwartz function with Fourier transform supported in
/// [-a, a], stored as samples of phi_hat on a uniform grid. The represented
/// function is factor * phi^{(m)}:
///
///   f(x) = Re factor * integral (2 pi i t)^m phi_hat(t) e^{2 pi i t x} dt
///
/// where the integral is the composite trapezoid rule on the sample grid.
class BandlimitedFunction {
public:
    BandlimitedFunction(double bandRadius, std::vector<cplx> ftSamples, int derivOrder = 0,
                        cplx factor = 1.0);

    /// Samples `profile` on the grid of [-bandRadius, bandRadius].
    static BandlimitedFunction from_profile(double bandRadius,
                                            const std::function<cplx(double)>& profile,
                                            std::size_t samples = kDefaultFourierSamples,
                                            int derivOrder = 0, cplx factor = 1.0);

    double band_radius() const { return bandRadius_; }
    int deriv_order() const { return derivOrder_; }
    cplx factor() const { return factor_; }
    const std::vector<cplx>& ft_samples() const { return ftSamples_; }
    std::size_t sample_count() const { return ftSamples_.size(); }

    double node(std::size_t i) const;
    double spacing() const;
    double quadrature_weight(std::size_t i) const;

    /// Full complex inversion integral, before taking the real part.
    cplx eval_complex(double x) const;

    /// The represented real function.
    double eval(double x) const { return eval_complex(x).real(); }
    double operator()(double x) const { return eval(x); }

    /// Fourier transform of the represented function,
    /// factor (2 pi i t)^m phi_hat(t), linear between samples and zero
    /// outside [-a, a]. Exact at grid nodes.
    cplx transform(double t) const;

    /// Same function with derivative order m + order.
    BandlimitedFunction derivative(int order = 1) const;

private:
    double bandRadius_;
    std::vector<cplx> ftSamples_;
    int derivOrder_;
    cplx factor_;
    detail::ExponentialSum sum_;
};

}  // namespace tiling
