#include "tiling/interp.hpp"

#include "tiling/compensated.hpp"
#include "tiling/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tiling::interp {

// ---------------------------------------------------------------------------
// OmegaSpec

OmegaSpec::OmegaSpec(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    if (intervals_.empty()) throw DomainError("invalid-omega", "Omega needs at least one interval");
    std::sort(intervals_.begin(), intervals_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        const auto& iv = intervals_[i];
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.hi > iv.lo)) {
            throw DomainError("invalid-omega", "Omega intervals must be finite with positive length");
        }
        if (i > 0 && !(iv.lo > intervals_[i - 1].hi)) {
            throw DomainError("invalid-omega", "Omega intervals must be disjoint");
        }
    }
}

bool OmegaSpec::contains(const Interval& iv) const {
    return std::any_of(intervals_.begin(), intervals_.end(),
                       [&](const Interval& o) { return o.contains(iv); });
}

// ---------------------------------------------------------------------------
// BumpTransform

BumpTransform::BumpTransform(SmoothBump bump, std::size_t samples) : bump_(bump) {
    if (samples < 3) throw DomainError("invalid-bump", "bump quadrature needs at least 3 samples");
    const GridFunction grid(Interval{-1.0, 1.0}, samples);
    const double h = grid.spacing();
    nodes_.resize(samples);
    weightedSamples_.resize(samples);
    double mass = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        nodes_[i] = grid.node(i);
        const double w = (i == 0 || i + 1 == samples) ? 0.5 * h : h;
        weightedSamples_[i] = w * bump_(nodes_[i]);
        mass += weightedSamples_[i];
    }
    mass_ = mass;
    for (double& v : weightedSamples_) v /= mass_;
    resolvedBand_ = 0.25 / h;
}

double BumpTransform::profile(double x) const { return bump_(x) / mass_; }

double BumpTransform::transform(double t) const {
    if (std::abs(t) > resolvedBand_) return 0.0;
    // Phi is even, so Phi_hat(t) = sum_i w_i Phi(x_i) cos(2 pi t x_i).
    double acc = 0.0;
    const std::size_t M = nodes_.size();
    for (std::size_t i = 0; i < M; ++i) {
        if (weightedSamples_[i] != 0.0) acc += weightedSamples_[i] * std::cos(kTwoPi * t * nodes_[i]);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Radii and placement

double row_sum(std::span<const double> nodes, std::size_t j, double r, const BumpTransform& phi) {
    double s = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (k != j) s += std::abs(phi.transform(r * (nodes[k] - nodes[j])));
    }
    return s;
}

double fitted_growth_exponent(std::span<const double> nodes) {
    if (nodes.size() < 3) return 0.0;
    std::vector<double> mags(nodes.size());
    std::transform(nodes.begin(), nodes.end(), mags.begin(), [](double s) { return std::abs(s); });
    std::sort(mags.begin(), mags.end());
    const double R = mags.back() * (1.0 + 1e-9);
    if (!(R > 0.0)) return 0.0;
    constexpr int kSamples = 24;
    std::vector<double> lx;
    std::vector<double> ly;
    for (int i = 0; i < kSamples; ++i) {
        const double r = R * std::pow(8.0, -1.0 + static_cast<double>(i) / (kSamples - 1));
        const auto count = std::lower_bound(mags.begin(), mags.end(), r) - mags.begin();
        if (count > 0) {
            lx.push_back(std::log(r));
            ly.push_back(std::log(static_cast<double>(count)));
        }
    }
    if (lx.size() < 2) return 0.0;
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

RadiiChoice choose_radii(std::span<const double> nodes, const BumpTransform& phi, double eps, int p,
                         double rBase) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("invalid-parameter", "eps must lie in (0, 1)");
    if (!(rBase > 0.0)) throw DomainError("invalid-parameter", "r_base must be positive");
    std::vector<double> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] == sorted[i - 1]) {
            throw DomainError("coincident-nodes", "interpolation nodes must be distinct");
        }
    }
    if (static_cast<double>(p) <= fitted_growth_exponent(nodes)) {
        throw DomainError("growth-exponent", "p must exceed the growth exponent of the node set");
    }

    constexpr int kMaxDoublings = 60;
    RadiiChoice out;
    out.radii.assign(nodes.size(), 0.0);
    out.rowSums.assign(nodes.size(), 0.0);
    std::vector<int> failed(nodes.size(), 0);
    parallel_for(nodes.size(), [&](std::size_t j) {
        double r = rBase;
        for (int m = 0; m <= kMaxDoublings; ++m, r *= 2.0) {
            const double s = row_sum(nodes, j, r, phi);
            if (s <= eps) {
                out.radii[j] = r;
                out.rowSums[j] = s;
                return;
            }
        }
        failed[j] = 1;
    });
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (failed[j]) {
            throw DomainError("radii-search-failed", "row sum for node " + std::to_string(j) +
                                                         " did not reach eps within 60 doublings");
        }
    }
    out.rowSumBound = out.rowSums.empty() ? 0.0 : *std::max_element(out.rowSums.begin(), out.rowSums.end());
    return out;
}

std::vector<double> place_supports(std::span<const double> nodes, const OmegaSpec& omega,
                                   std::span<const double> radii) {
    if (nodes.size() != radii.size()) {
        throw DomainError("invalid-system", "one radius per node is required");
    }
    const auto& ivs = omega.intervals();
    std::vector<double> centers(radii.size());
    std::size_t idx = 0;
    double cursor = ivs.front().lo;
    for (std::size_t j = 0; j < radii.size(); ++j) {
        const double r = radii[j];
        if (!(r > 0.0)) throw DomainError("invalid-parameter", "radii must be positive");
        while (true) {
            if (idx >= ivs.size()) {
                throw DomainError("unplaceable", "support of node " + std::to_string(j) +
                                                     " is unplaceable in Omega");
            }
            const double start = std::max(cursor, ivs[idx].lo);
            if (start + 2.0 * r <= ivs[idx].hi) {
                centers[j] = start + r;
                cursor = start + 2.0 * r + 1.0;
                break;
            }
            ++idx;
        }
    }
    return centers;
}

// ---------------------------------------------------------------------------
// System

void InterpolationSystem::validate() const {
    const std::size_t n = nodes.size();
    if (radii.size() != n || centers.size() != n || values.size() != n) {
        throw DomainError("invalid-system", "nodes, radii, centers and values must have equal length");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!(radii[j] > 0.0)) throw DomainError("invalid-system", "radii must be positive");
        if (j > 0 && !(nodes[j] > nodes[j - 1])) {
            throw DomainError("invalid-system", "nodes must be strictly increasing");
        }
    }
    if (!(rowSumBound < 1.0)) throw DomainError("row-sum-too-large", "row-sum bound M must be < 1");
    std::vector<Interval> ivs(n);
    for (std::size_t j = 0; j < n; ++j) ivs[j] = support(j);
    std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t j = 1; j < n; ++j) {
        if (ivs[j].lo - ivs[j - 1].hi < 1.0 - 1e-12) {
            throw DomainError("invalid-system", "support intervals must be at distance >= 1");
        }
    }
}

cplx basis_transform(const InterpolationSystem& system, const BumpTransform& phi, std::size_t j,
                     double t) {
    const double d = t - system.nodes[j];
    const double phase = -kTwoPi * system.centers[j] * d;
    return phi.transform(system.radii[j] * d) * cplx(std::cos(phase), std::sin(phase));
}

InterpolationSystem build_system(std::vector<double> nodes, std::vector<cplx> values,
                                 const OmegaSpec& omega, const BumpTransform& phi, double eps, int p) {
    if (nodes.size() != values.size()) {
        throw DomainError("invalid-system", "one value per node is required");
    }
    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });
    InterpolationSystem sys;
    for (std::size_t i : order) {
        sys.nodes.push_back(nodes[i]);
        sys.values.push_back(values[i]);
    }
    const RadiiChoice radii = choose_radii(sys.nodes, phi, eps, p);
    sys.radii = radii.radii;
    sys.rowSumBound = radii.rowSumBound;
    sys.centers = place_supports(sys.nodes, omega, sys.radii);
    sys.validate();
    return sys;
}

std::vector<std::vector<cplx>> off_diagonal(const InterpolationSystem& system, const BumpTransform& phi) {
    const std::size_t n = system.size();
    std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n));
    parallel_for(n, [&](std::size_t k) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j != k) a[k][j] = basis_transform(system, phi, j, system.nodes[k]);
        }
    });
    return a;
}

namespace {

double l1(const std::vector<cplx>& v) {
    CompensatedSum s;
    for (const cplx& x : v) s += std::abs(x);
    return s.value();
}

std::vector<cplx> apply_off_diagonal(const std::vector<std::vector<cplx>>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) {
        CompensatedComplexSum s;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (j != k) s += a[k][j] * b[j];
        }
        out[k] = s.value();
    }
    return out;
}

}  // namespace

CoefficientSolution solve_coeffs(const InterpolationSystem& system, const BumpTransform& phi,
                                 const NeumannOptions& options) {
    system.validate();
    const auto a = off_diagonal(system, phi);
    const auto& c = system.values;
    const double scale = 1.0 + l1(c);

    CoefficientSolution sol;
    std::vector<cplx> b = c;
    bool converged = false;
    for (int it = 1; it <= options.maxIter; ++it) {
        const auto ab = apply_off_diagonal(a, b);
        std::vector<cplx> next(b.size());
        std::vector<cplx> diff(b.size());
        for (std::size_t k = 0; k < b.size(); ++k) {
            next[k] = c[k] - ab[k];
            diff[k] = next[k] - b[k];
        }
        const double step = l1(diff);
        sol.stepNorms.push_back(step);
        b = std::move(next);
        sol.iterations = it;
        if (step < options.tol * scale) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw DomainError("non-convergence", "Neumann iteration did not converge within maxIter");
    }

    const auto ab = apply_off_diagonal(a, b);
    std::vector<cplx> res(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) res[k] = b[k] + ab[k] - c[k];
    sol.residual = l1(res);
    if (!(sol.residual < options.tol * scale)) {
        throw DomainError("non-convergence", "Neumann solution failed the residual certificate");
    }
    sol.b = std::move(b);
    return sol;
}

// ---------------------------------------------------------------------------
// SparseSupportFunction

SparseSupportFunction::SparseSupportFunction(InterpolationSystem system, std::vector<cplx> coefficients,
                                             BumpTransform phi)
    : system_(std::move(system)), b_(std::move(coefficients)), phi_(std::move(phi)) {
    system_.validate();
    if (b_.size() != system_.size()) {
        throw DomainError("invalid-system", "one coefficient per node is required");
    }
}

cplx SparseSupportFunction::eval(double x) const {
    cplx acc{};
    for (std::size_t j = 0; j < b_.size(); ++j) {
        const double r = system_.radii[j];
        const double u = (x - system_.centers[j]) / r;
        if (!(std::abs(u) < 1.0)) continue;
        const double phase = kTwoPi * system_.nodes[j] * x;
        acc += b_[j] * (phi_.profile(u) / r) * cplx(std::cos(phase), std::sin(phase));
    }
    return acc;
}

cplx SparseSupportFunction::transform(double t) const {
    CompensatedComplexSum s;
    for (std::size_t j = 0; j < b_.size(); ++j) s += b_[j] * basis_transform(system_, phi_, j, t);
    return s.value();
}

bool SparseSupportFunction::in_support(double x) const {
    for (std::size_t j = 0; j < system_.size(); ++j) {
        if (system_.support(j).contains(x)) return true;
    }
    return false;
}

SparseSupportFunction synthesize_interpolant(const InterpolationSystem& system,
                                             const std::vector<cplx>& b, const BumpTransform& phi) {
    return SparseSupportFunction(system, b, phi);
}

}  // namespace tiling::interp
