#include "strongdrive/hamiltonians.hpp"

#include <cmath>
#include <numbers>

#include "strongdrive/errors.hpp"

namespace strongdrive {

DriveParams::DriveParams(double delta, double g, double omega) : delta_(delta), g_(g), omega_(omega) {
    if (!std::isfinite(delta) || !std::isfinite(g) || !std::isfinite(omega))
        throw DomainError("DriveParams: parameters must be finite");
    if (!(omega > 0.0))
        throw DomainError("DriveParams: drive frequency omega must be > 0");
    if (g < 0.0)
        throw DomainError("DriveParams: coupling g must be >= 0");
    if (delta < 0.0)
        throw DomainError("DriveParams: level splitting delta must be >= 0");
}

double DriveParams::period() const noexcept { return 2.0 * std::numbers::pi / omega_; }

double DriveParams::drive_phase(double t) const { return drive_ratio() * std::sin(omega_ * t); }

Mat2 hamiltonian_full(double t, const DriveParams& p) {
    const double h = 0.5 * p.delta();
    const double drive = p.g() * std::cos(p.omega() * t);
    return {-h, drive, drive, h};
}

Mat2 hamiltonian_rwa(double t, const DriveParams& p) {
    const double h = 0.5 * p.delta();
    const cplx rot = std::polar(0.5 * p.g(), p.omega() * t);
    return {-h, rot, std::conj(rot), h};
}

Mat2 hamiltonian_drive_only(double t, const DriveParams& p) {
    const double drive = p.g() * std::cos(p.omega() * t);
    return {0.0, drive, drive, 0.0};
}

} // namespace strongdrive
