#pragma once

#include "strongdrive/linalg.hpp"

namespace strongdrive {

/// Physical parameters of the driven two-level atom (ħ = 1, all angular frequencies).
///
/// delta is the level splitting Δ, g the coupling to the drive g·cos(ωt), omega the drive
/// frequency ω. Construction rejects ω ≤ 0 and negative Δ or g; g ≫ Δ (strong coupling)
/// is reported by is_strong_coupling() but never required.
class DriveParams {
public:
    DriveParams(double delta, double g, double omega);

    double delta() const noexcept { return delta_; }
    double g() const noexcept { return g_; }
    double omega() const noexcept { return omega_; }

    /// Drive period 2π/ω.
    double period() const noexcept;
    /// Phase amplitude g/ω of the drive-frame rotation.
    double drive_ratio() const noexcept { return g_ / omega_; }
    /// Drive-frame phase (g/ω)·sin(ωt).
    double drive_phase(double t) const;

    bool is_strong_coupling(double factor = 10.0) const noexcept { return g_ >= factor * delta_; }

    DriveParams with_delta(double d) const { return {d, g_, omega_}; }
    DriveParams with_g(double g) const { return {delta_, g, omega_}; }
    DriveParams with_omega(double w) const { return {delta_, g_, w}; }

    friend bool operator==(const DriveParams&, const DriveParams&) = default;

private:
    double delta_;
    double g_;
    double omega_;
};

/// H(t) = −(Δ/2)σ₃ + g·cos(ωt)·σ₁ (dipole approximation, no RWA).
Mat2 hamiltonian_full(double t, const DriveParams& p);

/// H_RWA(t) = −(Δ/2)σ₃ + (g/2)(e^{iωt}σ₊ + e^{−iωt}σ₋).
Mat2 hamiltonian_rwa(double t, const DriveParams& p);

/// Drive term alone, H₀(t) = g·cos(ωt)·σ₁.
Mat2 hamiltonian_drive_only(double t, const DriveParams& p);

} // namespace strongdrive
