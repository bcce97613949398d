#pragma once

#include "strongdrive/hamiltonians.hpp"
#include "strongdrive/linalg.hpp"
#include "strongdrive/phase_integral.hpp"

namespace strongdrive {

/// exp(−i∫₀ᵗ H₀) for the drive term alone:
/// e^{−iφ}|1⟩⟨1| + e^{+iφ}|−1⟩⟨−1| = W·diag(e^{−iφ}, e^{+iφ})·W,  φ = (g/ω)·sin(ωt).
Mat2 drive_frame_propagator(double t, const DriveParams& p);

/// Generator of the drive-frame amplitudes φ = (a, b):
/// −(Δ/2)·(e^{+iχ}σ₊ + e^{−iχ}σ₋),  χ = 2(g/ω)·sin(ωt).
Mat2 rotated_frame_rhs(double t, const DriveParams& p);

/// Maps drive-frame amplitudes back to the lab frame:
/// ψ(t) = W·diag(e^{−iφ}, e^{+iφ})·φ(t). Unitary, so ‖ψ‖ = ‖φ‖.
Vec2 reconstruct_full(double t, const Vec2& phi, const DriveParams& p);

/// Picard iterate of order k of the integral equations
///
///   a(t) = α + i(Δ/2) ∫₀ᵗ e^{+iχ(s)} b(s) ds,
///   b(t) = β + i(Δ/2) ∫₀ᵗ e^{−iχ(s)} a(s) ds,
///
/// i.e. the drive-frame amplitudes truncated at total order Δᵏ. Amplitudes are recomputed on
/// every call by nested adaptive quadrature; nesting level d runs at tolerance quad_tol/10^d.
/// Evaluation is const and reentrant.
class PicardSolution {
public:
    /// Throws DomainError unless |α|² + |β|² = 1 within 1e-12, order ≥ 0 and quad_tol > 0.
    PicardSolution(const DriveParams& p, cplx alpha, cplx beta, int order, double quad_tol = 1e-10);

    int order() const noexcept { return order_; }
    cplx alpha() const noexcept { return alpha_; }
    cplx beta() const noexcept { return beta_; }
    double quad_tol() const noexcept { return quad_tol_; }
    const DriveParams& params() const noexcept { return params_; }

    cplx a(double t) const;
    cplx b(double t) const;
    /// (a(t), b(t)).
    Vec2 phi(double t) const;
    /// Lab-frame state reconstruct_full(t, phi(t)).
    Vec2 psi(double t) const;

private:
    // Component 0 is a (couples to e^{+iχ} b), component 1 is b.
    cplx amplitude(int component, int order, double t, int nesting) const;

    DriveParams params_;
    cplx alpha_;
    cplx beta_;
    int order_;
    double quad_tol_;
};

/// Same as PicardSolution(p, alpha, beta, order, quad_tol).
PicardSolution picard_iterate(const DriveParams& p, cplx alpha, cplx beta, int order, double quad_tol = 1e-10);

/// ‖i dφ_k/dt − rotated_frame_rhs(t)·φ_k(t)‖ with a central difference of step fd_step.
/// Requires t ≥ fd_step > 0.
double picard_residual(const PicardSolution& sol, double t, double fd_step);

/// Lowest-order lab-frame solution, not renormalized (‖ψ‖ = 1 + O(Δ²)):
///
///   ψ(t) = W·( e^{−iφ}{α + i(Δ/2)β·I₊(t)},  e^{+iφ}{β + i(Δ/2)α·I₋(t)} )ᵗ.
///
/// I± are evaluated by quadrature and checked against the Bessel series; Δ = 0 skips them.
Vec2 approx_solution(double t, cplx alpha, cplx beta, const DriveParams& p, double quad_tol = 1e-10);

/// Throws DomainError unless |α|² + |β|² = 1 within tol.
void require_normalized_constants(cplx alpha, cplx beta, double tol = 1e-12);

} // namespace strongdrive
