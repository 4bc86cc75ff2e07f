/**
 * @file staircase.hpp
 * @brief Unit-mass staircases chi_k and the perturbation function F.
 *
 * chi_k takes the value k - j + 1 on the j-th of k equal pieces of
 * [0, 2/(k+1)), so its integral is 1 while its mass concentrates near 0.
 * F glues rescaled staircases at the integers:
 *
 *   F(x) = sum_n sign(alpha_n) chi_{n^2+1}((x - n) / alpha_n).
 */

#pragma once

#include "tiling/core.hpp"

namespace tiling::staircase {

class Staircase {
public:
    explicit Staircase(int k);

    int k() const { return k_; }
    /// Common width 2/(k(k+1)) of the pieces.
    double piece_width() const;
    /// Right end 2/(k+1) of the support.
    double support_length() const;
    /// Breakpoint 2j/(k(k+1)), j = 0..k.
    double breakpoint(int j) const;
    /// Value k - j + 1 on piece j = 1..k.
    int level(int j) const { return k_ - j + 1; }

private:
    int k_;
};

/// chi_k(x); pieces are right-open so chi(k, 2/(k+1)) = 0.
double chi(int k, double x);

/// Fourier transform integral chi_k(x) e^{-2 pi i xi x} dx.
std::complex<double> chi_hat(int k, double xi);

/// Relative size of |xi| * 2/(k+1) below which chi_hat expands each piece
/// integral in a Taylor series.
inline constexpr double kTaylorSwitch = 1e-3;

/// chi_hat forced onto one branch; used to check branch agreement.
std::complex<double> chi_hat_closed_form(int k, double xi);
std::complex<double> chi_hat_taylor(int k, double xi);

/// Sum over |n| <= N of F_n(x). Only indices whose support can contain x
/// are visited.
double eval_F(const SeqWindow& alpha, double x);

}  // namespace tiling::staircase
