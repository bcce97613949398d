#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "strongdrive/hamiltonians.hpp"
#include "strongdrive/linalg.hpp"
#include "strongdrive/propagator.hpp"

namespace strongdrive {

/// |ψ₁|² = (1 − cos((2g/ω)·sin(ωt)))/2, the excited population of the Δ → 0 solution
/// started from α = β = e^{iθ}/√2 (independent of θ).
double population_excited_closed_form(double t, const DriveParams& p);

/// |⟨a|b⟩|² / ‖b‖². b need not be normalized; throws DomainError if ‖b‖ = 0 or b is not finite.
double fidelity(const StateVector& a, const Vec2& b);

/// Pure-state trace distance √(1 − fidelity).
double trace_distance(const StateVector& a, const Vec2& b);

/// Closed-form solution of i dψ/dt = H_RWA(t)ψ:
/// ψ(t) = e^{+iωtσ₃/2}·e^{−iH̄t}·ψ₀ with H̄ = −((Δ − ω)/2)σ₃ + (g/2)σ₁.
StateVector rwa_solution(double t, const StateVector& psi0, const DriveParams& p);

/// A metric sampled along one parameter axis.
struct ScanResult {
    std::string axis_name;
    std::string metric_name;
    std::vector<double> axis;       ///< strictly monotone
    std::vector<double> metric;     ///< NaN where the point failed
    std::vector<std::string> errors;  ///< empty string for successful points
    DriveParams base;
    double horizon = 0.0;
    std::size_t samples = 0;
    double quad_tol = 0.0;
    double rel_tol = 0.0;

    bool all_ok() const;
};

struct ScanOptions {
    /// Drive-frame integration constants; the default corresponds to ψ(0) = (1, 0).
    cplx alpha = 0.70710678118654752440;
    cplx beta = 0.70710678118654752440;
    /// Worker threads; 0 uses the hardware concurrency.
    unsigned threads = 1;
};

/// For each Δ: max over a uniform grid on [0, horizon] of 1 − fidelity(exact, approx_solution).
/// The exact state uses rel_tol = quad_tol/10. Failures are recorded per point.
ScanResult infidelity_scan(const DriveParams& p_base, std::span<const double> delta_values, double horizon,
                           std::size_t samples, double quad_tol = 1e-10, const ScanOptions& opts = {});

/// For each ω: max over time of the trace distance between the full-Hamiltonian state and the RWA
/// state, both started from ψ₀ = (1, 0). The grid has at least 32 samples per drive period.
ScanResult bloch_siegert_proxy_scan(const DriveParams& p_base, std::span<const double> omega_values, double horizon,
                                    std::size_t samples = 2, const ScanOptions& opts = {});

/// Max-over-time infidelity of approx_solution against the exact propagator at fixed parameters.
double max_infidelity(const DriveParams& p, cplx alpha, cplx beta, double horizon, std::size_t samples,
                      double quad_tol = 1e-10);

} // namespace strongdrive
