#include <doctest.h>

#include "tiling/interp.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace tiling;
using namespace tiling::interp;

namespace {

template <typename F>
std::string error_kind(F&& f) {
    try {
        f();
    } catch (const DomainError& e) {
        return e.kind();
    }
    return "";
}

std::vector<double> sqrt_nodes() {
    std::vector<double> s;
    for (int k = -10; k <= 9; ++k) s.push_back((k > 0 ? 2.0 : (k < 0 ? -2.0 : 0.0)) * std::sqrt(std::abs(k)));
    return s;
}

std::vector<cplx> random_values(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    double l1 = 0.0;
    for (auto& z : v) {
        z = cplx(u(rng), u(rng));
        l1 += std::abs(z);
    }
    for (auto& z : v) z /= l1;
    return v;
}

double l1(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::abs(z);
    return s;
}

template <typename F>
cplx simpson(double lo, double hi, int M, F&& f) {
    const double h = (hi - lo) / (M - 1);
    cplx acc{};
    for (int i = 0; i < M; ++i) {
        const double wt = (i == 0 || i == M - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += wt * f(lo + i * h);
    }
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("Omega is sorted and disjoint") {
    const OmegaSpec omega({{5.0, 9.0}, {0.0, 1.0}});
    CHECK(omega.intervals().front().lo == 0.0);
    CHECK(omega.contains(Interval{6.0, 8.0}));
    CHECK_FALSE(omega.contains(Interval{0.5, 5.5}));
    CHECK(error_kind([] { OmegaSpec({{0.0, 2.0}, {1.0, 3.0}}); }) == "invalid-omega");
    CHECK(error_kind([] { OmegaSpec(std::vector<Interval>{}); }) == "invalid-omega");
}

TEST_CASE("bump has unit mass and its transform matches direct quadrature") {
    const BumpTransform phi;
    const cplx mass = simpson(-1.0, 1.0, 20001, [&](double x) { return cplx(phi.profile(x)); });
    CHECK(std::abs(mass - 1.0) < 1e-12);
    CHECK(phi.transform(0.0) == doctest::Approx(1.0).epsilon(1e-13));
    for (double t : {0.3, 1.7, 4.0, 11.5}) {
        const cplx ref = simpson(-1.0, 1.0, 20001, [&](double x) {
            return phi.profile(x) * std::exp(cplx(0.0, -kTwoPi * t * x));
        });
        CHECK(std::abs(phi.transform(t) - ref) < 1e-12);
        CHECK(phi.transform(-t) == phi.transform(t));
    }
    CHECK(phi.transform(2.0 * phi.resolved_band()) == 0.0);
}

TEST_CASE("row sums and the growth exponent") {
    const BumpTransform phi;
    const auto s = sqrt_nodes();
    double direct = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k != 3) direct += std::abs(phi.transform(2.0 * (s[k] - s[3])));
    }
    CHECK(row_sum(s, 3, 2.0, phi) == doctest::Approx(direct).epsilon(1e-15));
    // #(S cap (-r, r)) grows like r^2 for s_k = 2 sign(k) sqrt|k|.
    CHECK(fitted_growth_exponent(s) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("choose_radii picks the smallest admissible power of two") {
    const BumpTransform phi;
    const auto s = sqrt_nodes();
    const auto rc = choose_radii(s, phi, 0.5, 4);
    REQUIRE(rc.radii.size() == s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        CHECK(rc.rowSums[j] <= 0.5);
        const double m = std::log2(rc.radii[j]);
        CHECK(m == std::round(m));
        if (rc.radii[j] > 1.0) CHECK(row_sum(s, j, 0.5 * rc.radii[j], phi) > 0.5);
    }
    CHECK(rc.rowSumBound <= 0.5);
    const std::vector<double> dup{0.0, 1.0, 1.0};
    CHECK(error_kind([&] { choose_radii(dup, phi, 0.5, 4); }) == "coincident-nodes");
    CHECK(error_kind([&] { choose_radii(s, phi, 0.5, 1); }) == "growth-exponent");
    CHECK(error_kind([&] { choose_radii(s, phi, 1.5, 4); }) == "invalid-parameter");
}

TEST_CASE("place_supports greedy trace") {
    const OmegaSpec omega({{0.0, 1.0}, {2.0, 4.0}, {5.0, 9.0}, {10.0, 18.0}});
    const std::vector<double> nodes{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> radii{0.25, 0.5, 1.0, 2.0};
    const auto centers = place_supports(nodes, omega, radii);
    CHECK(centers == std::vector<double>{0.25, 2.5, 6.0, 12.0});
    const std::vector<double> big{0.25, 0.5, 1.0, 8.0};
    CHECK(error_kind([&] { place_supports(nodes, omega, big); }) == "unplaceable");
}

TEST_CASE("Neumann solution agrees with a dense solve") {
    const BumpTransform phi;
    const auto s = sqrt_nodes();
    const auto c = random_values(s.size(), 7);
    const auto sys = build_system(s, c, OmegaSpec({{0.0, 1000.0}}), phi, 0.5, 4);
    CHECK(sys.rowSumBound <= 0.5);
    const auto sol = solve_coeffs(sys, phi);

    const auto n = static_cast<Eigen::Index>(sys.size());
    Eigen::MatrixXcd A(n, n);
    Eigen::VectorXcd rhs(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        rhs(k) = sys.values[static_cast<std::size_t>(k)];
        for (Eigen::Index j = 0; j < n; ++j) {
            A(k, j) = basis_transform(sys, phi, static_cast<std::size_t>(j), sys.nodes[static_cast<std::size_t>(k)]);
        }
    }
    const Eigen::VectorXcd dense = A.partialPivLu().solve(rhs);
    double diff = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) diff += std::abs(dense(j) - sol.b[static_cast<std::size_t>(j)]);
    CHECK(diff <= 1e-10);
    CHECK(sol.residual <= 1e-12);
    // Steps shrink at least geometrically with ratio M.
    for (std::size_t i = 1; i < sol.stepNorms.size(); ++i) {
        CHECK(sol.stepNorms[i] <= sys.rowSumBound * sol.stepNorms[i - 1] * (1.0 + 1e-9) + 1e-300);
    }
}

TEST_CASE("interpolant is supported in Omega and interpolates") {
    const BumpTransform phi;
    const auto s = sqrt_nodes();
    const auto c = random_values(s.size(), 11);
    const OmegaSpec omega({{0.0, 300.0}, {400.0, 1000.0}});
    const auto sys = build_system(s, c, omega, phi, 0.5, 4);
    for (std::size_t j = 0; j < sys.size(); ++j) CHECK(omega.contains(sys.support(j)));
    const auto sol = solve_coeffs(sys, phi);
    const auto f = synthesize_interpolant(sys, sol.b, phi);
    for (std::size_t k = 0; k < sys.size(); ++k) CHECK(std::abs(f.transform(sys.nodes[k]) - sys.values[k]) <= 1e-12);
    for (double x : {-5.0, 300.5, 350.0, 1000.5, 2000.0}) CHECK(f.eval(x) == cplx(0.0));
    // The transform agrees with direct quadrature of f over its supports.
    for (double t : {-1.3, 0.0, 2.2}) {
        cplx ref{};
        for (std::size_t j = 0; j < sys.size(); ++j) {
            const auto iv = sys.support(j);
            ref += simpson(iv.lo, iv.hi, 4001, [&](double x) { return f.eval(x) * std::exp(cplx(0.0, -kTwoPi * t * x)); });
        }
        CHECK(std::abs(f.transform(t) - ref) <= 1e-8);
    }
    CHECK(l1(sol.b) > 0.0);
}

TEST_CASE("solve_coeffs rejects systems without diagonal dominance") {
    const BumpTransform phi;
    InterpolationSystem sys;
    sys.nodes = {0.0, 0.1};
    sys.radii = {1.0, 1.0};
    sys.centers = {0.0, 10.0};
    sys.values = {1.0, 1.0};
    sys.rowSumBound = 1.2;
    CHECK(error_kind([&] { solve_coeffs(sys, phi); }) == "row-sum-too-large");
    sys.rowSumBound = 0.5;
    sys.centers = {0.0, 1.5};
    CHECK(error_kind([&] { solve_coeffs(sys, phi); }) == "invalid-system");
}
