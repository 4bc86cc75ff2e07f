// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "tiling/interp.hpp"
#include "tiling/kargaev.hpp"
#include "tiling/staircase.hpp"
#include "tiling/verify.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace tiling;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void report(int id, const char* title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double t = seconds_since(t0);
    std::printf("[%s] criterion %d: %s |%s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.str().c_str(), t);
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

// Transform of chi_k as a sum of k nested indicators 1_[0, m w):
// chi_hat = sum_m (1 - e^{-2 pi i xi m w}) / (2 pi i xi).
cplx chi_hat_nested(long long k, double xi) {
    if (xi == 0.0) return 1.0;
    const double w = 2.0 / (static_cast<double>(k) * (k + 1.0));
    double re = 0.0;
    double im = 0.0;
    for (long long m = 1; m <= k; ++m) {
        const double half = -kPi * xi * static_cast<double>(m) * w;
        const double s = std::sin(half);
        const double c = std::cos(half);
        // 1 - e^{2 i half} = 2 s^2 - 2 i s c
        re += 2.0 * s * s;
        im += -2.0 * s * c;
    }
    return cplx(re, im) / cplx(0.0, kTwoPi * xi);
}

// sup_n |alpha_n + c_n(R alpha) - beta_n| with R and Simpson quadrature coded
// separately, on M nodes of [-1/2, 1/2].
double independent_residual(const SeqWindow& alpha, const SeqWindow& beta, int M) {
    const int N = alpha.N();
    const double h = 1.0 / (M - 1);
    std::vector<cplx> R(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) {
        const double t = -0.5 + i * h;
        cplx acc{};
        for (int n = -N; n <= N; ++n) {
            const long long k = static_cast<long long>(n) * n + 1;
            acc += std::polar(1.0, kTwoPi * n * t) * alpha[n] * (chi_hat_nested(k, -alpha[n] * t) - 1.0);
        }
        R[static_cast<std::size_t>(i)] = acc;
    }
    double worst = 0.0;
    for (int n = -N; n <= N; ++n) {
        cplx c{};
        for (int i = 0; i < M; ++i) {
            const double wt = (i == 0 || i == M - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            c += wt * R[static_cast<std::size_t>(i)] * std::polar(1.0, -kTwoPi * n * (-0.5 + i * h));
        }
        c *= h / 3.0;
        worst = std::max(worst, std::abs(alpha[n] + c.real() - beta[n]));
    }
    return worst;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] < v[i - 1])) return false;
    }
    return true;
}

PointSet from_structure(const PeriodicStructure& ps, double half) {
    return validate_point_set(ps.points_in(Interval{-half, half}), Interval{-half, half}).set;
}

void criterion1(Outcome& o) {
    const auto t0 = Clock::now();
    const auto rep = kargaev::solve_alpha_auto(32, kargaev::SolveOptions{1e-12, 200, 0.5});
    const double tSolve = seconds_since(t0);
    const double r = rep.r;
    bool ratiosOk = !rep.contractionRatios.empty();
    double maxRatio = 0.0;
    for (double q : rep.contractionRatios) {
        ratiosOk = ratiosOk && q < 1.0;
        maxRatio = std::max(maxRatio, q);
    }
    bool band = true;
    for (int n = -32; n <= 32; ++n) {
        const double m = std::abs(rep.alpha[n]);
        band = band && m >= 0.5 * r && m <= 1.5 * r;
    }
    const double res = independent_residual(rep.alpha, kargaev::alternating_sequence(32, r), 8 * 1024 + 1);
    o.detail << " r=" << fmt(r) << " iterations=" << rep.iterations << " max ratio=" << fmt(maxRatio)
             << " independent residual=" << fmt(res) << " solve time=" << fmt(tSolve) << " s";
    o.require(ratiosOk, "contraction ratios < 1");
    o.require(band, "|alpha_n| in [(1-eps)r, (1+eps)r]");
    o.require(res < 1e-10, "independent residual < 1e-10");
    o.require(tSolve <= 10.0, "solve runtime <= 10 s");
}

void criterion2(Outcome& o) {
    const auto t0 = Clock::now();
    const auto f = kargaev::build_schwartz_tiler(1.0, 0.4);
    const double integral = std::abs(f.transform(0.0));
    std::vector<double> levelErr;
    std::vector<double> dev;
    for (int N : {8, 16, 32}) {
        const auto rep = kargaev::solve_alpha_auto(N);
        const auto lambda = kargaev::build_lambda(rep.alpha);
        const GridFunction xs(Interval{-N / 4.0, N / 4.0}, 65);
        const auto sum = verify::tiling_sum(f, lambda, xs);
        levelErr.push_back(std::abs(sum.level - 1.0));
        dev.push_back(sum.maxDeviation);
        o.detail << " N=" << N << ": |level-1|=" << fmt(levelErr.back()) << " maxDeviation=" << fmt(dev.back())
                 << ";";
    }
    const double t = seconds_since(t0);
    o.detail << " |f_hat(0)|=" << fmt(integral);
    o.require(strictly_decreasing(levelErr), "|level-1| decreasing in N");
    o.require(strictly_decreasing(dev), "maxDeviation decreasing in N");
    o.require(dev.back() <= 1e-2, "N=32 deviation <= 1e-2");
    o.require(integral <= 1e-12, "|f_hat(0)| <= 1e-12");
    o.require(t <= 60.0, "runtime <= 60 s");
}

std::vector<verify::TestFunctionSpec> pairing_functions() {
    std::vector<verify::TestFunctionSpec> specs(5);
    specs[0].width = 0.39;
    specs[1].width = 0.3;
    specs[2].width = 0.3;
    specs[2].shift = 0.05;
    specs[3].width = 0.35;
    specs[3].slope = 0.8;
    specs[4].width = 0.3;
    specs[4].shift = -0.05;
    specs[4].frequency = 1.0;
    specs[4].amplitude = 2.0;
    return specs;
}

void criterion3(Outcome& o) {
    std::vector<PointSet> sets;
    for (int N : {8, 16, 32}) sets.push_back(kargaev::build_lambda(kargaev::solve_alpha_auto(N).alpha));
    int idx = 0;
    for (const auto& spec : pairing_functions()) {
        const verify::TestFunction psi(spec);
        const double target = psi.value(0.0) - psi.second_derivative(0.0) / (4.0 * kPi * kPi);
        std::vector<double> err;
        for (const auto& lambda : sets) err.push_back(std::abs(verify::pair_with_test_function(lambda, psi).value - target));
        o.detail << " psi" << ++idx << ": " << fmt(err[0]) << "/" << fmt(err[1]) << "/" << fmt(err[2]) << ";";
        o.require(strictly_decreasing(err), "error decreasing in N for psi" + std::to_string(idx));
        o.require(err.back() <= 1e-2 * (1.0 + std::abs(psi.value(0.0))),
                  "N=32 error bound for psi" + std::to_string(idx));
    }
}

void criterion4(Outcome& o) {
    const auto t0 = Clock::now();
    std::vector<double> nodes;
    for (int k = -10; k <= 9; ++k) nodes.push_back((k > 0 ? 2.0 : (k < 0 ? -2.0 : 0.0)) * std::sqrt(std::abs(k)));
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> values(nodes.size());
    double l1 = 0.0;
    for (auto& v : values) {
        v = cplx(u(rng), u(rng));
        l1 += std::abs(v);
    }
    for (auto& v : values) v /= l1;

    const interp::BumpTransform phi;
    const auto sys = interp::build_system(nodes, values, interp::OmegaSpec({{0.0, 1000.0}}), phi, 0.5, 4);
    const auto sol = interp::solve_coeffs(sys, phi);
    const auto f = interp::synthesize_interpolant(sys, sol.b, phi);

    const auto n = static_cast<Eigen::Index>(sys.size());
    Eigen::MatrixXcd A(n, n);
    Eigen::VectorXcd rhs(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        rhs(k) = sys.values[static_cast<std::size_t>(k)];
        for (Eigen::Index j = 0; j < n; ++j) {
            A(k, j) = interp::basis_transform(sys, phi, static_cast<std::size_t>(j), sys.nodes[static_cast<std::size_t>(k)]);
        }
    }
    const Eigen::VectorXcd dense = A.fullPivLu().solve(rhs);
    double diff = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) diff += std::abs(dense(j) - sol.b[static_cast<std::size_t>(j)]);

    double nodeRes = 0.0;
    for (std::size_t k = 0; k < sys.size(); ++k) nodeRes = std::max(nodeRes, std::abs(f.transform(sys.nodes[k]) - sys.values[k]));

    std::uniform_real_distribution<double> ux(-100.0, 1100.0);
    int sampled = 0;
    int nonzero = 0;
    while (sampled < 1000) {
        const double x = ux(rng);
        if (f.in_support(x)) continue;
        ++sampled;
        if (f.eval(x) != cplx(0.0)) ++nonzero;
    }
    const double t = seconds_since(t0);
    o.detail << " M=" << fmt(sys.rowSumBound) << " neumann-vs-dense l1=" << fmt(diff) << " max node residual="
             << fmt(nodeRes) << " nonzero outside supports=" << nonzero << "/1000";
    o.require(sys.rowSumBound <= 0.5, "M <= 0.5");
    o.require(diff <= 1e-10, "Neumann matches dense solve");
    o.require(nodeRes <= 1e-6, "node residual <= 1e-6");
    o.require(nonzero == 0, "f vanishes outside the supports");
    o.require(t <= 5.0, "runtime <= 5 s");
}

void criterion5(Outcome& o) {
    const auto t0 = Clock::now();
    const auto c = verify::cyclic_census(12, 3, 4);
    const double t = seconds_since(t0);
    o.detail << " pairs=" << c.pairs << " agreements=" << c.agreements << " disagreements=" << c.disagreements
             << " tilings=" << c.tilings;
    o.require(c.pairs == 299u * 794u, "census covers all pairs");
    o.require(c.disagreements == 0, "zero disagreements");
    o.require(t <= 30.0, "runtime <= 30 s");
}

void criterion6(Outcome& o) {
    for (double a : {0.5, 1.0, 2.0}) {
        const double half = 100.0 * a;
        const auto lambda = from_structure(PeriodicStructure({{a, 0.3 * a}}), half);
        const auto rep = verify::density_report(lambda);
        const double relErr = std::abs(rep.density * a - 1.0);
        o.detail << " a=" << a << ": D err=" << fmt(relErr) << ";";
        o.require(relErr <= 0.01, "density within 1% for a=" + fmt(a));
    }
    const auto lambda = kargaev::build_lambda(kargaev::solve_alpha_auto(32).alpha);
    const double growth = verify::density_report(lambda).growthExponent;
    o.detail << " growth exponent=" << fmt(growth) << ";";
    o.require(std::abs(growth - 3.0) <= 0.2, "growth exponent 3 +- 0.2");

    // Level-zero family f = g - g(. - 1) over Z for band-limited bumps g.
    const auto Z = from_structure(PeriodicStructure({{1.0, 0.0}}), 200.0);
    const auto zr = verify::density_report(Z);
    for (double band : {0.3, 0.6, 0.9}) {
        const SmoothBump g{1.0};
        const auto f = BandlimitedFunction::from_profile(
            band, [&](double t) { return g(t / band) * (1.0 - std::polar(1.0, -kTwoPi * t)); });
        const auto sum = verify::tiling_sum(f, Z, GridFunction(Interval{-2.0, 2.0}, 41));
        double integral = std::abs(f.transform(0.0));
        // Cross-check with a trapezoid integral of f over [-400, 400].
        double quad = 0.0;
        const double h = 0.1;
        for (int i = -4000; i <= 4000; ++i) quad += (std::abs(i) == 4000 ? 0.5 : 1.0) * h * f(i * h);
        integral = std::max(integral, std::abs(quad));
        const double level = std::abs(sum.level);
        o.detail << " band=" << band << ": |level|=" << fmt(level) << " dev=" << fmt(sum.maxDeviation)
                 << " |integral|=" << fmt(integral) << ";";
        o.require(level <= 1e-10, "level-zero level <= 1e-10");
        o.require(integral <= 1e-10, "level-zero integral <= 1e-10");
    }
    o.detail << " maxGap=" << zr.maxGap;
    o.require(zr.maxGap == 1.0, "maxGap = 1");
}

void criterion7(Outcome& o) {
    const std::vector<PeriodicStructure> cases{
        PeriodicStructure({{std::sqrt(2.0), 0.3}}),
        PeriodicStructure({{1.5, 0.0}, {1.5, 0.5}}),
        PeriodicStructure({{kPi / 2.0, 0.1}, {kPi / 2.0, 0.6}, {kPi / 2.0, 1.2}}),
        PeriodicStructure({{3.0, 0.25}, {3.0, 1.0}, {3.0, 2.9}}),
    };
    double worst = 0.0;
    for (const auto& ps : cases) {
        const auto found = verify::detect_periodic_structure(from_structure(ps, 120.0), 3, 1e-9);
        if (!found || found->size() != ps.size()) {
            o.require(false, "structure recovered");
            continue;
        }
        for (std::size_t j = 0; j < ps.size(); ++j) {
            worst = std::max(worst, std::abs(found->progressions()[j].period - ps.progressions()[j].period));
            worst = std::max(worst, std::abs(found->progressions()[j].offset - ps.progressions()[j].offset));
        }
    }
    o.detail << " max (a,b) error=" << fmt(worst) << ";";
    o.require(worst <= 1e-9, "(a_j, b_j) within 1e-9");

    const auto lambda = kargaev::build_lambda(kargaev::solve_alpha_auto(32).alpha);
    const bool none = !verify::detect_periodic_structure(lambda, 3, 1e-9).has_value();
    o.detail << " Kargaev window: " << (none ? "none found" : "structure found") << ";";
    o.require(none, "no structure on the Kargaev set");

    const auto Z = from_structure(PeriodicStructure({{1.0, 0.0}}), 300.0);
    double poisson = 0.0;
    for (const auto& spec : pairing_functions()) {
        const verify::TestFunction psi(spec);
        const cplx pairing = verify::pair_with_test_function(Z, psi).value;
        double spatial = 0.0;
        for (int k = -300; k <= 300; ++k) spatial += psi.value(k);
        poisson = std::max(poisson, std::abs(pairing - spatial));
    }
    o.detail << " Poisson closure error=" << fmt(poisson);
    o.require(poisson <= 1e-9, "Poisson closure <= 1e-9");
}

}  // namespace

int main() {
    report(1, "fixed-point solve at N=32", criterion1);
    report(2, "unbounded-density tiling", criterion2);
    report(3, "spectral identity pairing", criterion3);
    report(4, "interpolation with sparse supports", criterion4);
    report(5, "cyclic census over Z_12", criterion5);
    report(6, "density suite", criterion6);
    report(7, "structure detection", criterion7);
    std::printf("%d of 7 criteria failed\n", failures);
    return failures;
}
