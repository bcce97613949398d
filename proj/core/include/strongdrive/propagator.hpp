#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "strongdrive/hamiltonians.hpp"
#include "strongdrive/linalg.hpp"

namespace strongdrive {

/// Step-size control settings for the adaptive propagator.
struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.0;      ///< must be set (> 0); see defaults_for()
    double initial_step = 0.0;  ///< 0 selects a starting step automatically

    /// rel_tol 1e-10, abs_tol 1e-12, max_step = period/20.
    static IntegratorConfig defaults_for(const DriveParams& p);

    /// Throws DomainError unless 0 < rel_tol ≤ 1e-3, 0 < abs_tol ≤ 1e-6, max_step > 0, initial_step ≥ 0.
    void validate() const;

    friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;
};

/// Time-dependent Hermitian generator H(t) of i dψ/dt = H(t)ψ.
using Generator = std::function<Mat2(double)>;

/// Sampled solution of the Schrödinger equation.
struct Trajectory {
    std::vector<double> times;  ///< times[0] == 0, strictly increasing
    std::vector<Vec2> states;   ///< aligned with times; not renormalized
    std::optional<DriveParams> params;
    IntegratorConfig config;
    double max_norm_drift = 0.0;  ///< max over accepted steps of |‖ψ‖ − 1|
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;

    const Vec2& final_state() const { return states.back(); }
};

/// Uniform grid of `samples` points on [0, t_max], endpoints included exactly.
std::vector<double> uniform_grid(double t_max, std::size_t samples);

/// Propagates psi0 under H with an adaptive 8(5,3) Dormand–Prince pair and PI step control.
///
/// Every grid time is hit exactly by clipping the step, so states are never interpolated.
/// The grid must start at 0 and be strictly increasing. Throws IntegrationError (carrying the
/// failure time) when the step size underflows.
Trajectory propagate(const Generator& hamiltonian, const StateVector& psi0, std::span<const double> t_grid,
                     const IntegratorConfig& cfg);

/// Same, for the full dipole Hamiltonian of `p`.
Trajectory propagate(const DriveParams& p, const StateVector& psi0, std::span<const double> t_grid,
                     const IntegratorConfig& cfg);

/// One-period propagator U(2π/ω) of the full Hamiltonian, assembled column by column.
Mat2 monodromy(const DriveParams& p, const IntegratorConfig& cfg);

} // namespace strongdrive
