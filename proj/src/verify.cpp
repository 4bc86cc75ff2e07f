#include "tiling/verify.hpp"

#include "tiling/compensated.hpp"
#include "tiling/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tiling::verify {

namespace {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double maxResidual = 0.0;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit fit;
    if (x.size() < 2) return fit;
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        fit.maxResidual = std::max(fit.maxResidual, std::abs(y[i] - (fit.slope * x[i] + fit.intercept)));
    }
    return fit;
}

// Number of points in the open interval (lo, hi).
std::size_t count_open(const std::vector<double>& pts, double lo, double hi) {
    const auto first = std::upper_bound(pts.begin(), pts.end(), lo);
    const auto last = std::lower_bound(pts.begin(), pts.end(), hi);
    return last > first ? static_cast<std::size_t>(last - first) : 0;
}

double growth_exponent(const PointSet& lambda) {
    const auto& pts = lambda.points();
    const double c = lambda.window().center();
    const double W = 0.5 * lambda.window().length();
    if (!(W > 0.0) || pts.size() < 2) return 0.0;
    constexpr int kSamples = 40;
    std::vector<double> lx;
    std::vector<double> ly;
    for (int i = 0; i < kSamples; ++i) {
        const double r = 0.25 * W * std::pow(0.97 / 0.25, static_cast<double>(i) / (kSamples - 1));
        const auto n = count_open(pts, c - r, c + r);
        if (n > 0) {
            lx.push_back(std::log(r));
            ly.push_back(std::log(static_cast<double>(n)));
        }
    }
    return least_squares(lx, ly).slope;
}

// Estimated contribution of points beyond one window edge. Beyond the edge,
// cell k (k = 1, 2, ...) is assumed to hold edgeCount ((W + k)/W)^p points,
// and each contributes at most the sampled envelope of `mag` at its distance.
double side_tail(double edgeCount, double W, double p, double d0, double sign,
                 const std::function<double(double)>& mag) {
    if (!(edgeCount > 0.0)) return 0.0;
    const auto K = static_cast<std::size_t>(std::max(16.0, std::ceil(4.0 * W)));
    std::vector<double> env(K + 1, 0.0);
    for (std::size_t k = 0; k <= K; ++k) {
        const double d = d0 + static_cast<double>(k);
        double m = 0.0;
        for (int s = 0; s <= 8; ++s) m = std::max(m, mag(sign * (d + s / 8.0)));
        env[k] = m;
    }
    for (std::size_t k = K; k-- > 0;) env[k] = std::max(env[k], env[k + 1]);
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        total += edgeCount * std::pow((W + static_cast<double>(k + 1)) / W, p) * env[k];
    }
    return total;
}

struct EdgeCounts {
    double left = 0.0;
    double right = 0.0;
    double halfWidth = 0.0;
    double growth = 0.0;
};

EdgeCounts edge_counts(const PointSet& lambda) {
    const auto& win = lambda.window();
    EdgeCounts e;
    e.halfWidth = std::max(0.5 * win.length(), 1.0);
    e.left = static_cast<double>(lambda.count_in(win.lo, win.lo + 1.0));
    e.right = static_cast<double>(lambda.count_in(win.hi - 1.0, std::nextafter(win.hi, HUGE_VAL)));
    e.growth = std::max(0.0, growth_exponent(lambda) - 1.0);
    return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tiling sums

TilingSumResult tiling_sum(const ComplexFunction& f, const PointSet& lambda, const GridFunction& xs,
                           const TilingSumOptions& options) {
    const auto& win = lambda.window();
    const auto& iv = xs.interval();
    const double margin = options.marginFraction * 0.5 * win.length();
    if (iv.lo - win.lo < margin || win.hi - iv.hi < margin) {
        throw DomainError("margin-violation",
                          "evaluation interval is too close to the edge of the point-set window");
    }

    const auto& pts = lambda.points();
    GridFunction sums(iv, xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        const double x = xs.node(i);
        // Walk outward from x so that |x - lambda| increases.
        auto right = static_cast<std::ptrdiff_t>(std::lower_bound(pts.begin(), pts.end(), x) - pts.begin());
        auto left = right - 1;
        const auto n = static_cast<std::ptrdiff_t>(pts.size());
        CompensatedComplexSum acc;
        while (left >= 0 || right < n) {
            const bool takeRight =
                left < 0 || (right < n && pts[static_cast<std::size_t>(right)] - x <=
                                              x - pts[static_cast<std::size_t>(left)]);
            if (takeRight) {
                acc += f(x - pts[static_cast<std::size_t>(right++)]);
            } else {
                acc += f(x - pts[static_cast<std::size_t>(left--)]);
            }
        }
        sums[i] = acc.value();
    });

    TilingSumResult out{sums, {}, 0.0, 0.0, 0.0};
    CompensatedComplexSum mean;
    for (const cplx& v : sums.samples()) mean += v;
    out.level = mean.value() / static_cast<double>(sums.size());
    for (const cplx& v : sums.samples()) {
        out.measuredDeviation = std::max(out.measuredDeviation, std::abs(v - out.level));
    }
    if (options.includeTailBound && !lambda.empty()) {
        const EdgeCounts e = edge_counts(lambda);
        const auto mag = [&](double y) { return std::abs(f(y)); };
        // Points right of the window enter as f(x - lambda) with x - lambda < 0.
        out.tailBound = side_tail(e.right, e.halfWidth, e.growth, win.hi - iv.hi, -1.0, mag) +
                        side_tail(e.left, e.halfWidth, e.growth, iv.lo - win.lo, 1.0, mag);
    }
    out.maxDeviation = out.measuredDeviation + out.tailBound;
    return out;
}

TilingSumResult tiling_sum(const BandlimitedFunction& f, const PointSet& lambda, const GridFunction& xs,
                           const TilingSumOptions& options) {
    return tiling_sum([&f](double x) { return cplx(f.eval(x), 0.0); }, lambda, xs, options);
}

TilingSumResult tiling_sum(const interp::SparseSupportFunction& f, const PointSet& lambda,
                           const GridFunction& xs, const TilingSumOptions& options) {
    return tiling_sum([&f](double x) { return f.eval(x); }, lambda, xs, options);
}

// ---------------------------------------------------------------------------
// Density

DensityReport density_report(const PointSet& lambda) {
    if (lambda.empty()) throw DomainError("empty-set", "density report needs a nonempty point set");
    const auto& pts = lambda.points();
    const auto& win = lambda.window();
    DensityReport rep;

    for (std::size_t i = 0; i < pts.size(); ++i) {
        // Half-open [x, x+1), shrunk by a relative tolerance so that a point at
        // exactly x + 1 stays out after rounding.
        const double hi = pts[i] + 1.0 - 1e-9 * (1.0 + std::abs(pts[i]));
        const auto cnt = static_cast<std::size_t>(std::lower_bound(pts.begin() + static_cast<std::ptrdiff_t>(i),
                                                                   pts.end(), hi) -
                                                  (pts.begin() + static_cast<std::ptrdiff_t>(i)));
        rep.maxPerUnit = std::max(rep.maxPerUnit, cnt);
    }

    if (pts.size() >= 2) {
        rep.minGap = lambda.min_gap();
        for (std::size_t i = 1; i < pts.size(); ++i) rep.maxGap = std::max(rep.maxGap, pts[i] - pts[i - 1]);
    }

    const double L = win.length();
    if (L > 0.0) {
        for (double frac : {1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0, 1.0 / 2.0}) {
            const double r = frac * L;
            UniformDensityEstimate est{r, HUGE_VAL, 0.0};
            const auto consider = [&](double x) {
                if (x < win.lo || x + r > win.hi) return;
                const double d = static_cast<double>(lambda.count_in(x, x + r)) / r;
                est.minDensity = std::min(est.minDensity, d);
                est.maxDensity = std::max(est.maxDensity, d);
            };
            consider(win.lo);
            consider(win.hi - r);
            for (double p : pts) {
                consider(p);
                consider(std::nextafter(p, HUGE_VAL));
            }
            if (est.maxDensity > 0.0 || est.minDensity != HUGE_VAL) {
                if (est.minDensity == HUGE_VAL) est.minDensity = 0.0;
                rep.uniformDensityEstimates.push_back(est);
            }
        }

        constexpr int kSamples = 64;
        std::vector<double> rs;
        std::vector<double> counts;
        const double c = win.center();
        for (int i = 1; i <= kSamples; ++i) {
            const double r = L * static_cast<double>(i) / kSamples;
            rs.push_back(r);
            counts.push_back(static_cast<double>(lambda.count_in(c - 0.5 * r, c + 0.5 * r)));
        }
        const LinearFit fit = least_squares(rs, counts);
        rep.density = fit.slope;
        rep.densityResidual = fit.maxResidual;
    }
    rep.growthExponent = growth_exponent(lambda);
    return rep;
}

// ---------------------------------------------------------------------------
// Test functions

namespace {

// Value with first and second derivative.
struct Jet {
    double v = 0.0;
    double d = 0.0;
    double dd = 0.0;
};

Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}

Jet jet_exp(const Jet& a) {
    const double e = std::exp(a.v);
    return {e, e * a.d, e * (a.dd + a.d * a.d)};
}

Jet jet_cos(const Jet& a) {
    const double c = std::cos(a.v);
    const double s = std::sin(a.v);
    return {c, -s * a.d, -c * a.d * a.d - s * a.dd};
}

Jet profile_jet(const TestFunctionSpec& spec, double x) {
    const double y = x - spec.shift;
    const Jet u{y / spec.width, 1.0 / spec.width, 0.0};
    const double q = 1.0 - u.v * u.v;
    if (!(q > 0.0)) return {};
    const Jet qj{q, -2.0 * u.v * u.d, -2.0 * u.d * u.d};
    // s (1 - 1/q)
    const Jet inv{1.0 / q, -qj.d / (q * q), -qj.dd / (q * q) + 2.0 * qj.d * qj.d / (q * q * q)};
    const Jet expo{spec.sharpness * (1.0 - inv.v), -spec.sharpness * inv.d, -spec.sharpness * inv.dd};
    const Jet g = jet_exp(expo);
    const Jet lin{1.0 + spec.slope * y, spec.slope, 0.0};
    const Jet osc = jet_cos(Jet{kTwoPi * spec.frequency * y, kTwoPi * spec.frequency, 0.0});
    const Jet amp{spec.amplitude, 0.0, 0.0};
    return amp * g * lin * osc;
}

}  // namespace

TestFunction::TestFunction(TestFunctionSpec spec, std::size_t samples) : spec_(spec) {
    if (!(spec_.width > 0.0) || !(spec_.sharpness > 0.0)) {
        throw DomainError("invalid-test-function", "test function needs positive width and sharpness");
    }
    if (samples < 3) throw DomainError("invalid-test-function", "need at least 3 quadrature samples");
    const GridFunction grid(support(), samples);
    const double h = grid.spacing();
    std::vector<cplx> coeffs(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double w = (i == 0 || i + 1 == samples) ? 0.5 * h : h;
        const double x = spec_.shift - spec_.width + static_cast<double>(i) * h;
        coeffs[i] = w * value(x);
    }
    dual_ = detail::ExponentialSum(spec_.shift - spec_.width, h, std::move(coeffs));
}

double TestFunction::value(double x) const { return profile_jet(spec_, x).v; }

double TestFunction::second_derivative(double x) const { return profile_jet(spec_, x).dd; }

cplx TestFunction::transform(double xi) const { return dual_(-xi); }

PairingResult pair_with_test_function(const PointSet& lambda, const TestFunction& psi) {
    const Interval supp = psi.support();
    if (!(supp.lo > -0.5 && supp.hi < 0.5)) {
        throw DomainError("support-too-wide", "test function support must lie in (-1/2, 1/2)");
    }
    PairingResult out;
    if (lambda.empty()) return out;
    const auto& pts = lambda.points();
    std::vector<cplx> terms(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { terms[i] = psi.transform(pts[i]); });

    // Sum from the origin outward.
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(pts[a]) < std::abs(pts[b]); });
    CompensatedComplexSum acc;
    for (std::size_t i : order) acc += terms[i];
    out.value = acc.value();

    const EdgeCounts e = edge_counts(lambda);
    const auto& win = lambda.window();
    const auto mag = [&](double y) { return std::abs(psi.transform(y)); };
    out.tailBound = side_tail(e.right, e.halfWidth, e.growth, std::max(0.0, win.hi), 1.0, mag) +
                    side_tail(e.left, e.halfWidth, e.growth, std::max(0.0, -win.lo), -1.0, mag);
    return out;
}

// ---------------------------------------------------------------------------
// Periodic structures

SpectrumMeasure periodic_spectrum(const PeriodicStructure& ps, double tmax) {
    if (!(tmax >= 0.0)) throw DomainError("invalid-parameter", "tmax must be >= 0");
    std::vector<SpectrumAtom> raw;
    for (const auto& p : ps.progressions()) {
        const auto kmax = static_cast<long long>(std::floor(tmax * p.period * (1.0 + 1e-12)));
        for (long long k = -kmax; k <= kmax; ++k) {
            const double loc = static_cast<double>(k) / p.period;
            if (std::abs(loc) > tmax * (1.0 + 1e-12)) continue;
            const double phase = -kTwoPi * static_cast<double>(k) * p.offset / p.period;
            raw.push_back({loc, cplx(std::cos(phase), std::sin(phase)) / p.period, 0});
        }
    }
    std::sort(raw.begin(), raw.end(),
              [](const SpectrumAtom& a, const SpectrumAtom& b) { return a.location < b.location; });
    constexpr double kMergeTol = 1e-12;
    std::vector<SpectrumAtom> merged;
    for (const auto& a : raw) {
        if (!merged.empty() && std::abs(a.location - merged.back().location) <= kMergeTol) {
            merged.back().weight += a.weight;
        } else {
            merged.push_back(a);
        }
    }
    const double cancel = 1e-12 * std::max(ps.density(), 1.0);
    std::vector<SpectrumAtom> atoms;
    for (auto& a : merged) {
        if (a.location == 0.0 || std::abs(a.location) <= kMergeTol) a.location = 0.0;
        if (std::abs(a.weight) > cancel) atoms.push_back(a);
    }
    return SpectrumMeasure(std::move(atoms));
}

TilingVerdict periodic_tiling_check(const ComplexFunction& fhat, const PeriodicStructure& ps, double tmax,
                                    double tol) {
    const SpectrumMeasure spec = periodic_spectrum(ps, tmax);
    std::vector<SpectrumAtom> atoms = spec.atoms();
    std::stable_sort(atoms.begin(), atoms.end(), [](const SpectrumAtom& a, const SpectrumAtom& b) {
        if (std::abs(a.location) != std::abs(b.location)) return std::abs(a.location) < std::abs(b.location);
        return a.location > b.location;
    });
    TilingVerdict out;
    out.tiles = true;
    for (const auto& a : atoms) {
        if (a.location == 0.0) continue;
        const double v = std::abs(fhat(a.location));
        if (v > tol) {
            out.tiles = false;
            out.firstFailure = a;
            out.firstFailureValue = v;
            break;
        }
    }
    out.level = ps.density() * fhat(0.0);
    return out;
}

namespace {

struct Candidate {
    std::vector<Progression> progressions;
    double residual = HUGE_VAL;
};

std::optional<Candidate> fit_progressions(const std::vector<double>& pts, double period, int count,
                                          double tol) {
    if (!(period > 0.0)) return std::nullopt;
    const double origin = pts.front();
    // Cluster residues modulo the period, treating values near `period` as near 0.
    std::vector<double> residues(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double r = std::fmod(pts[i] - origin, period);
        if (r < 0.0) r += period;
        if (period - r <= tol) r -= period;
        residues[i] = r;
    }
    std::vector<double> sorted = residues;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> reps;
    for (double r : sorted) {
        if (reps.empty() || r - reps.back() > tol) reps.push_back(r);
    }
    if (static_cast<int>(reps.size()) != count) return std::nullopt;

    // Assign each point a class and an integer index, then fit a shared period
    // and per-class offsets by least squares.
    const std::size_t m = reps.size();
    std::vector<std::size_t> cls(pts.size());
    std::vector<double> idx(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < m; ++j) {
            if (std::abs(residues[i] - reps[j]) < std::abs(residues[i] - reps[best])) best = j;
        }
        cls[i] = best;
        idx[i] = std::round((pts[i] - origin - reps[best]) / period);
    }
    std::vector<double> kMean(m, 0.0);
    std::vector<double> pMean(m, 0.0);
    std::vector<double> cnt(m, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        kMean[cls[i]] += idx[i];
        pMean[cls[i]] += pts[i];
        cnt[cls[i]] += 1.0;
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (cnt[j] < 2.0) return std::nullopt;
        kMean[j] /= cnt[j];
        pMean[j] /= cnt[j];
    }
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double dk = idx[i] - kMean[cls[i]];
        sxy += dk * (pts[i] - pMean[cls[i]]);
        sxx += dk * dk;
    }
    if (!(sxx > 0.0)) return std::nullopt;
    const double a = sxy / sxx;
    std::vector<double> b(m);
    for (std::size_t j = 0; j < m; ++j) b[j] = pMean[j] - a * kMean[j];

    Candidate cand;
    cand.residual = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        cand.residual = std::max(cand.residual, std::abs(pts[i] - (a * idx[i] + b[cls[i]])));
    }
    if (cand.residual > tol) return std::nullopt;

    // Every class must be fully populated: consecutive indices, covering the
    // interior of the observed range.
    const double lo = pts.front() + a;
    const double hi = pts.back() - a;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> ks;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (cls[i] == j) ks.push_back(idx[i]);
        }
        std::sort(ks.begin(), ks.end());
        for (std::size_t i = 1; i < ks.size(); ++i) {
            if (ks[i] - ks[i - 1] != 1.0) return std::nullopt;
        }
        if (a * ks.front() + b[j] > lo + tol || a * ks.back() + b[j] < hi - tol) return std::nullopt;
    }

    for (std::size_t j = 0; j < m; ++j) {
        double off = std::fmod(b[j], a);
        if (off < 0.0) off += a;
        if (a - off <= tol || off <= tol) off = 0.0;
        cand.progressions.push_back({a, off});
    }
    std::sort(cand.progressions.begin(), cand.progressions.end(),
              [](const Progression& x, const Progression& y) { return x.offset < y.offset; });
    return cand;
}

}  // namespace

std::optional<PeriodicStructure> detect_periodic_structure(const PointSet& lambda, int maxProgressions,
                                                           double tol) {
    if (maxProgressions < 1) throw DomainError("invalid-parameter", "maxProgressions must be >= 1");
    const auto& pts = lambda.points();
    if (pts.size() < 2 * (static_cast<std::size_t>(maxProgressions) + 1)) {
        throw DomainError("too-few-points", "structure detection needs at least 2(maxProgressions+1) points");
    }
    // For a union of `count` progressions with a common period a, consecutive
    // points cycle through the classes, so p_{i+count} - p_i = a.
    const auto median_step = [&](std::size_t step) {
        std::vector<double> d(pts.size() - step);
        for (std::size_t i = 0; i + step < pts.size(); ++i) d[i] = pts[i + step] - pts[i];
        const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
        std::nth_element(d.begin(), mid, d.end());
        return *mid;
    };
    const double gap = median_step(1);

    for (int count = 1; count <= maxProgressions; ++count) {
        std::optional<Candidate> best;
        const double stepPeriod = median_step(static_cast<std::size_t>(count));
        for (double period : {stepPeriod, static_cast<double>(count) * gap}) {
            auto cand = fit_progressions(pts, period, count, tol);
            if (cand && (!best || cand->residual < best->residual)) best = std::move(cand);
        }
        if (best) return PeriodicStructure(best->progressions);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cyclic groups

void CyclicInstance::validate() const {
    if (modulus < 1) throw DomainError("invalid-cyclic", "modulus must be >= 1");
    if (static_cast<int>(f.size()) != modulus) {
        throw DomainError("invalid-cyclic", "f must have exactly N entries");
    }
    std::vector<char> seen(static_cast<std::size_t>(modulus), 0);
    for (int l : lambda) {
        if (l < 0 || l >= modulus) throw DomainError("invalid-cyclic", "lambda element out of range");
        if (seen[static_cast<std::size_t>(l)]) throw DomainError("invalid-cyclic", "lambda elements must be distinct");
        seen[static_cast<std::size_t>(l)] = 1;
    }
}

namespace {

std::vector<cplx> dft(const std::vector<cplx>& v) {
    const std::size_t N = v.size();
    std::vector<cplx> out(N);
    for (std::size_t k = 0; k < N; ++k) {
        cplx acc{};
        for (std::size_t n = 0; n < N; ++n) {
            const double phase = -kTwoPi * static_cast<double>((k * n) % N) / static_cast<double>(N);
            acc += v[n] * cplx(std::cos(phase), std::sin(phase));
        }
        out[k] = acc;
    }
    return out;
}

std::vector<cplx> indicator(int N, const std::vector<int>& set) {
    std::vector<cplx> v(static_cast<std::size_t>(N));
    for (int l : set) v[static_cast<std::size_t>(l)] = 1.0;
    return v;
}

constexpr double kCyclicTol = 1e-9;

bool direct_verdict(const std::vector<cplx>& f, const std::vector<int>& lambda, cplx& level) {
    const int N = static_cast<int>(f.size());
    std::vector<cplx> s(static_cast<std::size_t>(N));
    double scale = 1.0;
    for (int x = 0; x < N; ++x) {
        cplx acc{};
        for (int l : lambda) acc += f[static_cast<std::size_t>(((x - l) % N + N) % N)];
        s[static_cast<std::size_t>(x)] = acc;
        scale = std::max(scale, std::abs(acc));
    }
    for (const cplx& v : s) {
        if (std::abs(v - s[0]) > kCyclicTol * scale) return false;
    }
    level = s[0];
    return true;
}

bool spectral_verdict(const std::vector<cplx>& F, const std::vector<cplx>& L, double scale) {
    for (std::size_t k = 1; k < F.size(); ++k) {
        if (std::abs(F[k] * L[k]) > kCyclicTol * scale) return false;
    }
    return true;
}

double l1_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::abs(x);
    return s;
}

void subsets_up_to(int N, int maxSize, std::vector<int>& current, int start,
                   std::vector<std::vector<int>>& out) {
    out.push_back(current);
    if (static_cast<int>(current.size()) == maxSize) return;
    for (int i = start; i < N; ++i) {
        current.push_back(i);
        subsets_up_to(N, maxSize, current, i + 1, out);
        current.pop_back();
    }
}

}  // namespace

CyclicVerdict cyclic_tiling_check(const CyclicInstance& inst) {
    inst.validate();
    CyclicVerdict out;
    cplx level;
    out.directTiles = direct_verdict(inst.f, inst.lambda, level);
    if (out.directTiles) out.directLevel = level;
    const auto F = dft(inst.f);
    const auto L = dft(indicator(inst.modulus, inst.lambda));
    const double scale = std::max(1.0, l1_norm(inst.f) * static_cast<double>(inst.lambda.size()));
    out.spectralTiles = spectral_verdict(F, L, scale);
    out.spectralLevel = F[0] * L[0] / static_cast<double>(inst.modulus);
    return out;
}

CyclicCensus cyclic_census(int modulus, int maxF, int maxL) {
    if (modulus < 1 || maxF < 0 || maxL < 0) throw DomainError("invalid-parameter", "invalid census bounds");
    std::vector<std::vector<int>> fsets;
    std::vector<std::vector<int>> lsets;
    std::vector<int> cur;
    subsets_up_to(modulus, maxF, cur, 0, fsets);
    subsets_up_to(modulus, maxL, cur, 0, lsets);

    std::vector<std::vector<cplx>> fvals;
    std::vector<std::vector<cplx>> fdft;
    for (const auto& s : fsets) {
        fvals.push_back(indicator(modulus, s));
        fdft.push_back(dft(fvals.back()));
    }
    std::vector<std::vector<cplx>> ldft;
    for (const auto& s : lsets) ldft.push_back(dft(indicator(modulus, s)));

    CyclicCensus census;
    census.modulus = modulus;
    census.maxF = maxF;
    census.maxL = maxL;
    std::vector<std::size_t> agree(fsets.size(), 0);
    std::vector<std::size_t> tiles(fsets.size(), 0);
    parallel_for(fsets.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < lsets.size(); ++j) {
            cplx level;
            const bool direct = direct_verdict(fvals[i], lsets[j], level);
            const double scale = std::max(1.0, static_cast<double>(fsets[i].size() * lsets[j].size()));
            const bool spectral = spectral_verdict(fdft[i], ldft[j], scale);
            if (direct == spectral) ++agree[i];
            if (direct) ++tiles[i];
        }
    });
    census.pairs = fsets.size() * lsets.size();
    for (std::size_t i = 0; i < fsets.size(); ++i) {
        census.agreements += agree[i];
        census.tilings += tiles[i];
    }
    census.disagreements = census.pairs - census.agreements;
    return census;
}

}  // namespace tiling::verify
