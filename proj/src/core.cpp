#include "tiling/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tiling {

namespace {

// Node i of an M-point uniform grid on [lo, hi], symmetric about the midpoint.
double symmetric_node(const Interval& iv, std::size_t i, std::size_t M) {
    const double offset = 2.0 * static_cast<double>(i) - static_cast<double>(M - 1);
    return iv.center() + offset * (iv.length() / (2.0 * static_cast<double>(M - 1)));
}

std::string format_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// PointSet

double PointSet::min_gap() const {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < points_.size(); ++i) {
        gap = std::min(gap, points_[i] - points_[i - 1]);
    }
    return gap;
}

std::size_t PointSet::count_in(double lo, double hi) const {
    if (!(hi > lo)) return 0;
    const auto first = std::lower_bound(points_.begin(), points_.end(), lo);
    const auto last = std::lower_bound(points_.begin(), points_.end(), hi);
    return static_cast<std::size_t>(last - first);
}

PointSet PointSet::shifted(double shift) const {
    std::vector<double> pts(points_);
    for (double& p : pts) p += shift;
    return PointSet(std::move(pts), Interval{window_.lo + shift, window_.hi + shift});
}

PointSetValidation validate_point_set(std::span<const double> points, Interval window) {
    if (!std::isfinite(window.lo) || !std::isfinite(window.hi) || window.hi < window.lo) {
        throw DomainError("invalid-window", "window must be a finite interval with lo <= hi");
    }
    std::vector<double> sorted(points.begin(), points.end());
    for (double p : sorted) {
        if (!std::isfinite(p)) {
            throw DomainError("non-finite-point", "point set contains a non-finite coordinate");
        }
        if (!window.contains(p)) {
            throw DomainError("point-outside-window",
                              "point outside window: " + format_double(p) + " not in [" +
                                  format_double(window.lo) + ", " + format_double(window.hi) + "]");
        }
    }
    std::sort(sorted.begin(), sorted.end());

    PointSetValidation out;
    std::vector<double> unique;
    unique.reserve(sorted.size());
    std::size_t merged = 0;
    for (double p : sorted) {
        if (!unique.empty() && p - unique.back() <= kDuplicateTolerance) {
            ++merged;
            continue;
        }
        unique.push_back(p);
    }
    if (merged > 0) {
        out.warnings.push_back("merged " + std::to_string(merged) + " duplicate point(s)");
    }
    out.set = PointSet(std::move(unique), window);
    out.minGap = out.set.min_gap();
    return out;
}

// ---------------------------------------------------------------------------
// SeqWindow

SeqWindow::SeqWindow(int N, double fill) : N_(N) {
    if (N < 0) throw DomainError("invalid-window", "sequence window half-width must be >= 0");
    values_.assign(static_cast<std::size_t>(2 * N + 1), fill);
}

SeqWindow::SeqWindow(int N, std::vector<double> values) : N_(N), values_(std::move(values)) {
    if (N < 0) throw DomainError("invalid-window", "sequence window half-width must be >= 0");
    if (values_.size() != static_cast<std::size_t>(2 * N + 1)) {
        throw DomainError("invalid-sequence", "sequence window must hold exactly 2N+1 values");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw DomainError("invalid-sequence", "sequence values must be finite");
    }
}

double SeqWindow::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double sup_distance(const SeqWindow& a, const SeqWindow& b) {
    if (a.N() != b.N()) throw DomainError("invalid-sequence", "sequence windows differ in size");
    double m = 0.0;
    for (int n = -a.N(); n <= a.N(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
    return m;
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction::GridFunction(Interval interval, std::size_t M)
    : GridFunction(interval, std::vector<cplx>(M)) {}

GridFunction::GridFunction(Interval interval, std::vector<cplx> samples)
    : interval_(interval), samples_(std::move(samples)) {
    if (samples_.size() < 2) throw DomainError("invalid-grid", "grid needs at least 2 samples");
    if (!(interval_.hi > interval_.lo)) throw DomainError("invalid-grid", "grid interval is empty");
}

GridFunction GridFunction::sample(Interval interval, std::size_t M,
                                  const std::function<cplx(double)>& fn) {
    GridFunction g(interval, M);
    for (std::size_t i = 0; i < M; ++i) g.samples_[i] = fn(g.node(i));
    return g;
}

double GridFunction::node(std::size_t i) const { return symmetric_node(interval_, i, size()); }

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (const cplx& v : samples_) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::hermitian_defect() const {
    if (std::abs(interval_.lo + interval_.hi) > 1e-15 * interval_.length()) {
        throw DomainError("invalid-grid", "hermitian symmetry needs an interval symmetric about 0");
    }
    const std::size_t M = size();
    double d = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        d = std::max(d, std::abs(samples_[M - 1 - i] - std::conj(samples_[i])));
    }
    return d;
}

// ---------------------------------------------------------------------------
// SpectrumMeasure / PeriodicStructure

SpectrumMeasure::SpectrumMeasure(std::vector<SpectrumAtom> atoms) : atoms_(std::move(atoms)) {
    std::stable_sort(atoms_.begin(), atoms_.end(), [](const SpectrumAtom& a, const SpectrumAtom& b) {
        if (a.derivativeOrder != b.derivativeOrder) return a.derivativeOrder < b.derivativeOrder;
        return a.location < b.location;
    });
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const auto& a = atoms_[i];
        if (a.derivativeOrder < 0) throw DomainError("invalid-spectrum", "negative derivative order");
        if (a.weight == cplx{}) throw DomainError("invalid-spectrum", "spectrum atoms need nonzero weight");
        if (i > 0 && atoms_[i - 1].derivativeOrder == a.derivativeOrder &&
            !(atoms_[i - 1].location < a.location)) {
            throw DomainError("invalid-spectrum", "atom locations must be strictly increasing");
        }
    }
}

cplx SpectrumMeasure::weight_at(double location, double tol) const {
    for (const auto& a : atoms_) {
        if (a.derivativeOrder == 0 && std::abs(a.location - location) <= tol) return a.weight;
    }
    return {};
}

PeriodicStructure::PeriodicStructure(std::vector<Progression> progressions)
    : progressions_(std::move(progressions)) {
    double maxPeriod = 0.0;
    for (const auto& p : progressions_) {
        if (!(p.period > 0.0) || !std::isfinite(p.period) || !std::isfinite(p.offset)) {
            throw DomainError("invalid-structure", "progression periods must be positive and finite");
        }
        maxPeriod = std::max(maxPeriod, p.period);
    }
    // Disjointness is checked on a finite window.
    const double L = 64.0 * maxPeriod;
    std::vector<std::pair<double, std::size_t>> pts;
    for (std::size_t j = 0; j < progressions_.size(); ++j) {
        const auto& p = progressions_[j];
        const auto kmin = static_cast<long long>(std::ceil((-L - p.offset) / p.period));
        const auto kmax = static_cast<long long>(std::floor((L - p.offset) / p.period));
        for (long long k = kmin; k <= kmax; ++k) {
            pts.emplace_back(p.period * static_cast<double>(k) + p.offset, j);
        }
    }
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].first - pts[i - 1].first <= 1e-9 * (1.0 + std::abs(pts[i].first))) {
            throw DomainError("invalid-structure", "progressions are not pairwise disjoint");
        }
    }
}

double PeriodicStructure::density() const {
    double d = 0.0;
    for (const auto& p : progressions_) d += 1.0 / p.period;
    return d;
}

std::vector<double> PeriodicStructure::points_in(Interval window) const {
    std::vector<double> pts;
    for (const auto& p : progressions_) {
        const auto kmin = static_cast<long long>(std::ceil((window.lo - p.offset) / p.period));
        const auto kmax = static_cast<long long>(std::floor((window.hi - p.offset) / p.period));
        for (long long k = kmin; k <= kmax; ++k) {
            const double x = p.period * static_cast<double>(k) + p.offset;
            if (window.contains(x)) pts.push_back(x);
        }
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

// ---------------------------------------------------------------------------
// Bump and band-limited functions

double SmoothBump::operator()(double u) const {
    const double q = 1.0 - u * u;
    if (!(q > 0.0)) return 0.0;
    return std::exp(sharpness * (1.0 - 1.0 / q));
}

namespace detail {

ExponentialSum::ExponentialSum(double t0, double h, std::vector<cplx> coefficients)
    : t0_(t0), h_(h), coefficients_(std::move(coefficients)) {
    first_ = 0;
    last_ = coefficients_.size();
    while (first_ < last_ && coefficients_[first_] == cplx{}) ++first_;
    while (last_ > first_ && coefficients_[last_ - 1] == cplx{}) --last_;
}

cplx ExponentialSum::operator()(double x) const {
    // The rotation e^{2 pi i h x} is applied by recurrence and the phase is
    // recomputed exactly every kReseed steps to bound drift.
    constexpr std::size_t kReseed = 64;
    const double w = kTwoPi * x;
    const double rc = std::cos(w * h_);
    const double rs = std::sin(w * h_);
    double sr = 0.0;
    double si = 0.0;
    double ec = 1.0;
    double es = 0.0;
    for (std::size_t k = first_; k < last_; ++k) {
        if ((k - first_) % kReseed == 0) {
            const double phase = w * (t0_ + static_cast<double>(k) * h_);
            ec = std::cos(phase);
            es = std::sin(phase);
        }
        const double cr = coefficients_[k].real();
        const double ci = coefficients_[k].imag();
        sr += cr * ec - ci * es;
        si += cr * es + ci * ec;
        const double nc = ec * rc - es * rs;
        es = ec * rs + es * rc;
        ec = nc;
    }
    return {sr, si};
}

}  // namespace detail

BandlimitedFunction::BandlimitedFunction(double bandRadius, std::vector<cplx> ftSamples,
                                         int derivOrder, cplx factor)
    : bandRadius_(bandRadius), ftSamples_(std::move(ftSamples)), derivOrder_(derivOrder),
      factor_(factor) {
    if (!(bandRadius_ > 0.0) || !std::isfinite(bandRadius_)) {
        throw DomainError("invalid-bandlimited", "band radius must be positive");
    }
    if (derivOrder_ < 0) throw DomainError("invalid-bandlimited", "derivative order must be >= 0");
    const std::size_t M = ftSamples_.size();
    if (M < 3) throw DomainError("invalid-bandlimited", "need at least 3 Fourier samples");

    double scale = 0.0;
    for (const cplx& v : ftSamples_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw DomainError("invalid-bandlimited", "Fourier samples must be finite");
        }
        scale = std::max(scale, std::abs(v));
    }
    const double tol = 1e-12 * scale;
    if (std::abs(ftSamples_.front()) > tol || std::abs(ftSamples_.back()) > tol) {
        throw DomainError("invalid-bandlimited", "Fourier samples must vanish at the band edges");
    }
    for (std::size_t i = 0; i < M; ++i) {
        if (std::abs(ftSamples_[M - 1 - i] - std::conj(ftSamples_[i])) > tol) {
            throw DomainError("invalid-bandlimited",
                              "Fourier samples must be Hermitian (represented function is real)");
        }
    }

    std::vector<cplx> coeffs(M);
    for (std::size_t i = 0; i < M; ++i) {
        const double t = node(i);
        cplx c = factor_ * quadrature_weight(i);
        for (int j = 0; j < derivOrder_; ++j) c *= cplx(0.0, kTwoPi * t);
        coeffs[i] = c * ftSamples_[i];
    }
    sum_ = detail::ExponentialSum(-bandRadius_, spacing(), std::move(coeffs));
}

BandlimitedFunction BandlimitedFunction::from_profile(double bandRadius,
                                                      const std::function<cplx(double)>& profile,
                                                      std::size_t samples, int derivOrder,
                                                      cplx factor) {
    if (samples < 3) throw DomainError("invalid-bandlimited", "need at least 3 Fourier samples");
    const Interval iv{-bandRadius, bandRadius};
    std::vector<cplx> ft(samples);
    for (std::size_t i = 0; i < samples; ++i) ft[i] = profile(symmetric_node(iv, i, samples));
    ft.front() = 0.0;
    ft.back() = 0.0;
    return BandlimitedFunction(bandRadius, std::move(ft), derivOrder, factor);
}

double BandlimitedFunction::node(std::size_t i) const {
    return symmetric_node(Interval{-bandRadius_, bandRadius_}, i, ftSamples_.size());
}

double BandlimitedFunction::spacing() const {
    return 2.0 * bandRadius_ / static_cast<double>(ftSamples_.size() - 1);
}

double BandlimitedFunction::quadrature_weight(std::size_t i) const {
    const double h = spacing();
    return (i == 0 || i + 1 == ftSamples_.size()) ? 0.5 * h : h;
}

cplx BandlimitedFunction::eval_complex(double x) const { return sum_(x); }

cplx BandlimitedFunction::transform(double t) const {
    if (!(std::abs(t) < bandRadius_)) return {};
    const double pos = (t + bandRadius_) / spacing();
    auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= ftSamples_.size()) i = ftSamples_.size() - 2;
    const double frac = pos - static_cast<double>(i);
    cplx v = ftSamples_[i] * (1.0 - frac) + ftSamples_[i + 1] * frac;
    if (frac == 0.0) v = ftSamples_[i];
    cplx mult = factor_;
    for (int j = 0; j < derivOrder_; ++j) mult *= cplx(0.0, kTwoPi * t);
    return mult * v;
}

BandlimitedFunction BandlimitedFunction::derivative(int order) const {
    return BandlimitedFunction(bandRadius_, ftSamples_, derivOrder_ + order, factor_);
}

}  // namespace tiling
