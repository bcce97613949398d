#include "strongdrive/strong_coupling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "strongdrive/errors.hpp"
#include "strongdrive/quadrature.hpp"

namespace strongdrive {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

/// W·diag(d0, d1)·v without forming the matrix.
Vec2 hadamard_diag_apply(cplx d0, cplx d1, const Vec2& v) {
    const cplx x0 = d0 * v.c0;
    const cplx x1 = d1 * v.c1;
    return {kInvSqrt2 * (x0 + x1), kInvSqrt2 * (x0 - x1)};
}

} // namespace

Mat2 drive_frame_propagator(double t, const DriveParams& p) {
    const double phase = p.drive_phase(t);
    // W·diag(e^{−iφ}, e^{iφ})·W = cos φ·I − i sin φ·σ₁.
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    return {c, cplx{0.0, -s}, cplx{0.0, -s}, c};
}

Mat2 rotated_frame_rhs(double t, const DriveParams& p) {
    const double chi = 2.0 * p.drive_phase(t);
    const cplx upper = std::polar(-0.5 * p.delta(), chi);
    return {0.0, upper, std::conj(upper), 0.0};
}

Vec2 reconstruct_full(double t, const Vec2& phi, const DriveParams& p) {
    const double phase = p.drive_phase(t);
    return hadamard_diag_apply(std::polar(1.0, -phase), std::polar(1.0, phase), phi);
}

void require_normalized_constants(cplx alpha, cplx beta, double tol) {
    const double n = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol)
        throw DomainError("integration constants must satisfy |alpha|^2 + |beta|^2 = 1 (got " + std::to_string(n) +
                          ")");
}

PicardSolution::PicardSolution(const DriveParams& p, cplx alpha, cplx beta, int order, double quad_tol)
    : params_(p), alpha_(alpha), beta_(beta), order_(order), quad_tol_(quad_tol) {
    require_normalized_constants(alpha, beta);
    if (order < 0)
        throw DomainError("picard_iterate: order must be >= 0");
    if (!(quad_tol > 0.0))
        throw DomainError("picard_iterate: quad_tol must be > 0");
}

cplx PicardSolution::amplitude(int component, int order, double t, int nesting) const {
    const cplx constant = component == 0 ? alpha_ : beta_;
    if (order == 0 || params_.delta() == 0.0 || t == 0.0)
        return constant;

    const double half_delta = 0.5 * params_.delta();
    const int sign = component == 0 ? 1 : -1;
    const int other = 1 - component;

    quad::Options opts;
    opts.abs_tol = quad_tol_ * std::pow(10.0, -nesting) / std::max(1.0, half_delta);
    opts.max_panel = 0.5 * params_.period();
    opts.max_intervals = 20000;

    const auto q = quad::integrate(
        [&](double s) { return phase_factor(s, sign, params_) * amplitude(other, order - 1, s, nesting + 1); }, 0.0,
        t, opts);
    if (!q.converged)
        throw QuadratureError("picard_iterate: nested quadrature did not converge at level " +
                                  std::to_string(nesting) + ", t = " + std::to_string(t),
                              nesting);
    return constant + I * half_delta * q.value;
}

cplx PicardSolution::a(double t) const { return amplitude(0, order_, t, 0); }

cplx PicardSolution::b(double t) const { return amplitude(1, order_, t, 0); }

Vec2 PicardSolution::phi(double t) const { return {a(t), b(t)}; }

Vec2 PicardSolution::psi(double t) const { return reconstruct_full(t, phi(t), params_); }

PicardSolution picard_iterate(const DriveParams& p, cplx alpha, cplx beta, int order, double quad_tol) {
    return PicardSolution(p, alpha, beta, order, quad_tol);
}

double picard_residual(const PicardSolution& sol, double t, double fd_step) {
    if (!(fd_step > 0.0) || !(t >= fd_step))
        throw DomainError("picard_residual: need t >= fd_step > 0");
    const Vec2 derivative = (1.0 / (2.0 * fd_step)) * (sol.phi(t + fd_step) - sol.phi(t - fd_step));
    const Vec2 r = I * derivative - rotated_frame_rhs(t, sol.params()) * sol.phi(t);
    return r.norm();
}

Vec2 approx_solution(double t, cplx alpha, cplx beta, const DriveParams& p, double quad_tol) {
    require_normalized_constants(alpha, beta);
    if (!(t >= 0.0) || !std::isfinite(t))
        throw DomainError("approx_solution: t must be finite and >= 0");

    Vec2 phi{alpha, beta};
    if (p.delta() != 0.0 && t > 0.0) {
        const cplx plus = phase_integral_checked(t, +1, p, quad_tol).value;
        // I₋ = conj(I₊) for real parameters.
        const cplx minus = std::conj(plus);
        const double half_delta = 0.5 * p.delta();
        phi.c0 += I * half_delta * beta * plus;
        phi.c1 += I * half_delta * alpha * minus;
    }
    return reconstruct_full(t, phi, p);
}

} // namespace strongdrive
