#pragma once

#include "strongdrive/hamiltonians.hpp"
#include "strongdrive/linalg.hpp"

namespace strongdrive {

enum class PhaseMethod { quadrature, bessel_series };

/// I_sign(t) = ∫₀ᵗ exp(sign·2i(g/ω)·sin(ωs)) ds together with how it was obtained.
struct PhaseIntegralResult {
    cplx value{};
    double t = 0.0;
    int sign = 1;
    PhaseMethod method = PhaseMethod::quadrature;
    double err_estimate = 0.0;
};

/// Phase-integral integrand exp(sign·2i(g/ω)·sin(ωs)).
cplx phase_factor(double s, int sign, const DriveParams& p);

/// Adaptive Gauss–Kronrod evaluation of I_sign(t) to absolute tolerance `tol`.
///
/// Initial panels span half a drive period (30 nodes per period). g = 0 returns t exactly.
/// Throws DomainError for t < 0, tol ≤ 0 or sign ∉ {±1}; QuadratureError when the node
/// budget is exhausted first.
PhaseIntegralResult phase_integral_quadrature(double t, int sign, const DriveParams& p, double tol = 1e-10);

/// Jacobi–Anger series for I_sign(t), truncated at |n| ≤ n_terms:
///
///   J₀(z)·t + Σ_{0<|n|≤N} Jₙ(z)·(e^{inωt} − 1)/(inω),   z = sign·2g/ω.
///
/// err_estimate bounds the discarded tail by Σ_{n>N} 4|Jₙ(z)|/(nω).
PhaseIntegralResult phase_integral_bessel(double t, int sign, const DriveParams& p, int n_terms);

/// Default truncation ceil(2g/ω) + 25.
int default_bessel_terms(const DriveParams& p);

/// Quadrature value, checked against the Bessel series. Throws QuadratureError (level 0) if
/// the two disagree by more than ten times their combined error budget.
PhaseIntegralResult phase_integral_checked(double t, int sign, const DriveParams& p, double tol = 1e-10);

} // namespace strongdrive
