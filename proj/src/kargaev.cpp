#include "tiling/kargaev.hpp"

#include "tiling/parallel.hpp"
#include "tiling/staircase.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

namespace tiling::kargaev {

namespace {

constexpr std::size_t kMinUnitGrid = 4097;

std::vector<double> simpson_weights(std::size_t M, double h) {
    if (M % 2 == 0) {
        throw DomainError("invalid-grid", "Simpson quadrature needs an odd number of grid nodes");
    }
    std::vector<double> w(M, 0.0);
    for (std::size_t i = 0; i < M; ++i) {
        if (i == 0 || i + 1 == M) {
            w[i] = h / 3.0;
        } else {
            w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
        }
    }
    return w;
}

void require_unit_interval(const GridFunction& grid) {
    const auto& iv = grid.interval();
    if (std::abs(iv.lo + 0.5) > 1e-15 || std::abs(iv.hi - 0.5) > 1e-15) {
        throw DomainError("invalid-grid", "grid must cover I = [-1/2, 1/2]");
    }
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

GridFunction unit_interval_grid(int N) {
    if (N < 0) throw DomainError("invalid-parameter", "N must be >= 0");
    const std::size_t M = std::max<std::size_t>(8 * static_cast<std::size_t>(N) + 1, kMinUnitGrid);
    return GridFunction(Interval{-0.5, 0.5}, M);
}

SeqWindow alternating_sequence(int N, double r) {
    SeqWindow beta(N);
    for (int n = -N; n <= N; ++n) beta[n] = (n % 2 == 0) ? r : -r;
    return beta;
}

GridFunction apply_R(const SeqWindow& alpha, const GridFunction& grid) {
    require_unit_interval(grid);
    GridFunction out(grid.interval(), grid.size());
    const int N = alpha.N();
    parallel_for(grid.size(), [&](std::size_t i) {
        const double t = grid.node(i);
        cplx acc{};
        for (int n = -N; n <= N; ++n) {
            const double a = alpha[n];
            if (a == 0.0) continue;
            const cplx term = a * (staircase::chi_hat(n * n + 1, -a * t) - 1.0);
            const double phase = kTwoPi * static_cast<double>(n) * t;
            acc += cplx(std::cos(phase), std::sin(phase)) * term;
        }
        out[i] = acc;
    });
    return out;
}

SeqWindow fourier_coeffs(const GridFunction& psi, int N) {
    require_unit_interval(psi);
    if (N < 0) throw DomainError("invalid-parameter", "N must be >= 0");
    const std::size_t M = psi.size();
    if (M < 8 * static_cast<std::size_t>(N)) {
        throw DomainError("grid-too-coarse", "Fourier coefficients up to |n| = N need M >= 8N nodes");
    }
    const double norm = psi.sup_norm();
    if (psi.hermitian_defect() > 1e-9 * norm) {
        throw DomainError("symmetry-violation", "psi(-t) != conj(psi(t)) on the grid");
    }
    const auto w = simpson_weights(M, psi.spacing());

    SeqWindow out(N);
    std::vector<cplx> coeffs(static_cast<std::size_t>(2 * N + 1));
    parallel_for(coeffs.size(), [&](std::size_t idx) {
        const int n = static_cast<int>(idx) - N;
        cplx acc{};
        for (std::size_t i = 0; i < M; ++i) {
            const double phase = -kTwoPi * static_cast<double>(n) * psi.node(i);
            acc += w[i] * psi[i] * cplx(std::cos(phase), std::sin(phase));
        }
        coeffs[idx] = acc;
    });
    for (int n = -N; n <= N; ++n) {
        const cplx c = coeffs[static_cast<std::size_t>(n + N)];
        if (std::abs(c.imag()) > 1e-10 * norm) {
            throw DomainError("symmetry-violation",
                              "Fourier coefficient " + std::to_string(n) + " is not real");
        }
        out[n] = c.real();
    }
    return out;
}

double fixed_point_residual(const SeqWindow& alpha, const SeqWindow& beta, const GridFunction& grid) {
    const SeqWindow coeffs = fourier_coeffs(apply_R(alpha, grid), alpha.N());
    double m = 0.0;
    for (int n = -alpha.N(); n <= alpha.N(); ++n) {
        m = std::max(m, std::abs(alpha[n] + coeffs[n] - beta[n]));
    }
    return m;
}

SolveReport solve_alpha(double r, int N, const SolveOptions& options) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("invalid-parameter", "r must be >= 0");
    if (N < 0) throw DomainError("invalid-parameter", "N must be >= 0");
    if (!(options.tol > 0.0)) throw DomainError("invalid-parameter", "tol must be > 0");
    if (!(options.eps > 0.0 && options.eps < 1.0)) {
        throw DomainError("invalid-parameter", "eps must lie in (0, 1)");
    }
    if (options.maxIter < 1) throw DomainError("invalid-parameter", "maxIter must be >= 1");

    const GridFunction grid = unit_interval_grid(N);
    const SeqWindow beta = alternating_sequence(N, r);

    SolveReport report;
    report.r = r;
    SeqWindow alpha = beta;
    // Steps at the rounding floor carry no contraction information.
    const double stepFloor = 64.0 * DBL_EPSILON * std::max(r, DBL_MIN);
    double prevStep = -1.0;
    bool converged = false;
    for (int it = 1; it <= options.maxIter; ++it) {
        const SeqWindow coeffs = fourier_coeffs(apply_R(alpha, grid), N);
        SeqWindow next(N);
        for (int n = -N; n <= N; ++n) next[n] = beta[n] - coeffs[n];
        const double step = sup_distance(next, alpha);
        if (prevStep > stepFloor && step > stepFloor) {
            const double ratio = step / prevStep;
            report.contractionRatios.push_back(ratio);
            if (report.contractionRatios.size() > 2 && ratio >= 1.0) {
                throw DomainError("non-contraction",
                                  "iteration is not contracting at r = " + fmt(r) +
                                      " (ratio " + fmt(ratio) + "); choose a smaller r");
            }
        }
        alpha = std::move(next);
        prevStep = step;
        report.iterations = it;
        if (step < options.tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw DomainError("max-iterations", "fixed-point iteration did not reach tol within " +
                                                std::to_string(options.maxIter) + " steps");
    }

    report.finalResidual = fixed_point_residual(alpha, beta, grid);
    if (r > 0.0) {
        for (int n = -N; n <= N; ++n) {
            const double m = std::abs(alpha[n]);
            if (m < (1.0 - options.eps) * r || m > (1.0 + options.eps) * r) {
                throw DomainError("band-violation", "|alpha_" + std::to_string(n) +
                                                        "| left the band around r = " + fmt(r) +
                                                        "; choose a smaller r");
            }
        }
    }
    report.alpha = std::move(alpha);
    return report;
}

SolveReport solve_alpha_auto(int N, const SolveOptions& options, double rStart, int maxHalvings) {
    double r = rStart;
    for (int attempt = 0;; ++attempt) {
        try {
            return solve_alpha(r, N, options);
        } catch (const DomainError& e) {
            const bool retry = e.kind() == "non-contraction" || e.kind() == "band-violation" ||
                               e.kind() == "max-iterations";
            if (!retry || attempt >= maxHalvings) throw;
        }
        r *= 0.5;
    }
}

std::vector<double> cluster_points(int n, double alpha_n) {
    const double k = static_cast<double>(n) * n + 1.0;
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(k));
    for (long long j = 1; j <= static_cast<long long>(k); ++j) {
        pts.push_back(static_cast<double>(n) + (2.0 * static_cast<double>(j) * alpha_n) / (k * (k + 1.0)));
    }
    return pts;
}

PointSet build_lambda(const SeqWindow& alpha) {
    const int N = alpha.N();
    std::vector<double> pts;
    for (int n = -N; n <= N; ++n) {
        if (alpha[n] == 0.0) {
            throw DomainError("degenerate-cluster",
                              "alpha_" + std::to_string(n) + " = 0 gives a degenerate cluster");
        }
        const auto c = cluster_points(n, alpha[n]);
        pts.insert(pts.end(), c.begin(), c.end());
    }
    const double W = static_cast<double>(N) + 1.0;
    auto validated = validate_point_set(pts, Interval{-W, W});
    if (!validated.warnings.empty()) {
        throw DomainError("overlapping-clusters", "clusters of Lambda overlap; alpha is too large");
    }
    return validated.set;
}

cplx tiler_normalization() {
    const double c2 = -1.0 / (4.0 * kPi * kPi);
    const cplx m2i(0.0, -kTwoPi);
    return c2 * 2.0 * m2i * m2i;
}

BandlimitedFunction build_schwartz_tiler(double w, double a, const TilerOptions& options) {
    if (!(a > 0.0 && a < 0.5)) throw DomainError("invalid-parameter", "tiler band a must lie in (0, 1/2)");
    if (!std::isfinite(w)) throw DomainError("invalid-parameter", "tiler level w must be finite");
    const SmoothBump g{options.sharpness};
    return BandlimitedFunction::from_profile(
        a, [&](double t) { return cplx(w * g(t / a), 0.0); }, options.samples, 2,
        1.0 / tiler_normalization());
}

}  // namespace tiling::kargaev
