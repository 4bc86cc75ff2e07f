#include "tiling/staircase.hpp"

#include <algorithm>
#include <cmath>

namespace tiling::staircase {

namespace {

void require_order(int k) {
    if (k < 1) throw DomainError("invalid-order", "staircase order k must be >= 1");
}

// Weighted sum of the piece phases, sum_j (k - j + 1) q^{j-1}.
std::complex<double> piece_phase_sum(int k, double theta) {
    const double rc = std::cos(theta);
    const double rs = std::sin(theta);
    double sr = 0.0;
    double si = 0.0;
    double ec = 1.0;
    double es = 0.0;
    for (int j = 1; j <= k; ++j) {
        const double lvl = static_cast<double>(k - j + 1);
        sr += lvl * ec;
        si += lvl * es;
        const double nc = ec * rc - es * rs;
        es = ec * rs + es * rc;
        ec = nc;
    }
    return {sr, si};
}

}  // namespace

Staircase::Staircase(int k) : k_(k) { require_order(k); }

double Staircase::piece_width() const {
    return 2.0 / (static_cast<double>(k_) * (static_cast<double>(k_) + 1.0));
}

double Staircase::support_length() const { return 2.0 / (static_cast<double>(k_) + 1.0); }

double Staircase::breakpoint(int j) const {
    return (2.0 * j) / (static_cast<double>(k_) * (static_cast<double>(k_) + 1.0));
}

double chi(int k, double x) {
    const Staircase s(k);
    if (!(x >= 0.0) || !(x < s.breakpoint(k))) return 0.0;
    int j = static_cast<int>(std::floor(x / s.piece_width())) + 1;
    j = std::max(1, std::min(j, k));
    while (j > 1 && x < s.breakpoint(j - 1)) --j;
    while (j < k && x >= s.breakpoint(j)) ++j;
    return static_cast<double>(s.level(j));
}

// All pieces share the width w, so
//   chi_hat(xi) = E(xi) * sum_j (k-j+1) e^{z (j-1) w},   z = -2 pi i xi,
// with E(xi) = integral_0^w e^{z x} dx the transform of one piece.
std::complex<double> chi_hat_closed_form(int k, double xi) {
    const Staircase s(k);
    const double w = s.piece_width();
    if (xi == 0.0) return {1.0, 0.0};
    const double theta = -kTwoPi * xi * w;
    // e^{i theta} - 1 without cancellation.
    const double half = std::sin(0.5 * theta);
    const std::complex<double> em1(-2.0 * half * half, std::sin(theta));
    const std::complex<double> z(0.0, -kTwoPi * xi);
    const std::complex<double> E = em1 / z;
    return E * piece_phase_sum(k, theta);
}

std::complex<double> chi_hat_taylor(int k, double xi) {
    const Staircase s(k);
    const double w = s.piece_width();
    const std::complex<double> zw(0.0, -kTwoPi * xi * w);
    // w * sum_{m=0}^{4} (zw)^m / (m+1)!
    const std::complex<double> series =
        1.0 + zw * (1.0 / 2.0 + zw * (1.0 / 6.0 + zw * (1.0 / 24.0 + zw * (1.0 / 120.0))));
    return w * series * piece_phase_sum(k, -kTwoPi * xi * w);
}

std::complex<double> chi_hat(int k, double xi) {
    const Staircase s(k);
    if (std::abs(xi) * s.support_length() < kTaylorSwitch) return chi_hat_taylor(k, xi);
    return chi_hat_closed_form(k, xi);
}

double eval_F(const SeqWindow& alpha, double x) {
    const int N = alpha.N();
    // supp F_n lies in [n - |alpha_n|, n + |alpha_n|].
    const double reach = alpha.sup_norm();
    const long long lo = std::max<long long>(-N, static_cast<long long>(std::ceil(x - reach)));
    const long long hi = std::min<long long>(N, static_cast<long long>(std::floor(x + reach)));
    double total = 0.0;
    for (long long nn = lo; nn <= hi; ++nn) {
        const int n = static_cast<int>(nn);
        const double a = alpha[n];
        if (a == 0.0) continue;
        const int k = n * n + 1;
        const double sign = a > 0.0 ? 1.0 : -1.0;
        total += sign * chi(k, (x - static_cast<double>(n)) / a);
    }
    return total;
}

}  // namespace tiling::staircase
