#include "strongdrive/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "strongdrive/errors.hpp"

namespace strongdrive {

namespace {

// Dormand–Prince 8(5,3) tableau (Hairer, Nørsett & Wanner, DOP853).
namespace dop853 {
constexpr double c2 = 0.05260015195876773187856, c3 = 0.07890022793815159781784,
                 c4 = 0.11835034190722739672676, c5 = 0.28164965809277260327324,
                 c6 = 0.33333333333333333333333, c7 = 0.25, c8 = 0.30769230769230769230769,
                 c9 = 0.65128205128205128205128, c10 = 0.6, c11 = 0.85714285714285714285714;

constexpr double b1 = 0.05429373411656876223805, b6 = 4.45031289275240888144114,
                 b7 = 1.89151789931450038304282, b8 = -5.80120396001058478146721,
                 b9 = 0.31116436695781989440892, b10 = -0.15216094966251607855618,
                 b11 = 0.20136540080403034837478, b12 = 0.04471061572777259051769;

constexpr double bhh1 = 0.24409448818897637795276, bhh2 = 0.73384668828161185734136,
                 bhh3 = 0.02205882352941176470588;

constexpr double er1 = 0.01312004499419488073250, er6 = -1.22515644637620444072057,
                 er7 = -0.49575894965725019152141, er8 = 1.66437718245498653696153,
                 er9 = -0.35032884874997368168865, er10 = 0.33417911871301747902973,
                 er11 = 0.08192320648511571246571, er12 = -0.02235530786388629525884;

constexpr double a21 = 0.05260015195876773187856;
constexpr double a31 = 0.01972505698453789945446, a32 = 0.05917517095361369836338;
constexpr double a41 = 0.02958758547680684918169, a43 = 0.08876275643042054754507;
constexpr double a51 = 0.24136513415926668550237, a53 = -0.88454947932828608534486,
                 a54 = 0.92483400326179200311574;
constexpr double a61 = 0.03703703703703703703704, a64 = 0.17082860872947387127960,
                 a65 = 0.12546768756682242501669;
constexpr double a71 = 0.037109375, a74 = 0.17025221101954403931498, a75 = 0.06021653898045596068502,
                 a76 = -0.017578125;
constexpr double a81 = 0.03709200011850479271088, a84 = 0.17038392571223999381021,
                 a85 = 0.10726203044637328465181, a86 = -0.01531943774862440175279,
                 a87 = 0.00827378916381402288758;
constexpr double a91 = 0.62411095871607571711443, a94 = -3.36089262944694129406857,
                 a95 = -0.86821934684172600681819, a96 = 27.5920996994467083049416,
                 a97 = 20.1540675504778934086187, a98 = -43.4898841810699588477366;
constexpr double a101 = 0.47766253643826436589043, a104 = -2.48811461997166764192642,
                 a105 = -0.59029082683684299637145, a106 = 21.2300514481811942347289,
                 a107 = 15.2792336328824235832597, a108 = -33.2882109689848629194453,
                 a109 = -0.02033120170850862613582;
constexpr double a111 = -0.93714243008598732571704, a114 = 5.18637242884406370830024,
                 a115 = 1.09143734899672957818500, a116 = -8.14978701074692612513997,
                 a117 = -18.5200656599969598641566, a118 = 22.7394870993505042818970,
                 a119 = 2.49360555267965238987089, a1110 = -3.04676447189821950038237;
constexpr double a121 = 2.27331014751653820792360, a124 = -10.5344954667372501984067,
                 a125 = -2.00087205822486249909676, a126 = -17.9589318631187989172766,
                 a127 = 27.9488845294199600508500, a128 = -2.85899827713502369474066,
                 a129 = -8.87285693353062954433549, a1210 = 12.3605671757943030647266,
                 a1211 = 0.64339274601576353035597;
} // namespace dop853

// PI controller (Gustafsson); exponents follow Hairer's DOP853 with beta = 0.04.
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.333;
constexpr double kFacMax = 6.0;
constexpr double kBeta = 0.04;
constexpr double kExpo = 1.0 / 8.0 - 0.2 * kBeta;

class Dop853 {
public:
    Dop853(const Generator& h, const IntegratorConfig& cfg) : h_(h), cfg_(cfg) {}

    Vec2 rhs(double t, const Vec2& y) const { return -I * (h_(t) * y); }

    /// Attempts one step of size dt from (t, y) with derivative k1 = f(t, y).
    /// Returns the scaled error norm and writes the candidate state into y_new.
    double attempt(double t, const Vec2& y, const Vec2& k1, double dt, Vec2& y_new) const {
        using namespace dop853;
        auto at = [&](auto... terms) { return y + dt * (Vec2{} + ... + terms); };

        const Vec2 k2 = rhs(t + c2 * dt, at(a21 * k1));
        const Vec2 k3 = rhs(t + c3 * dt, at(a31 * k1, a32 * k2));
        const Vec2 k4 = rhs(t + c4 * dt, at(a41 * k1, a43 * k3));
        const Vec2 k5 = rhs(t + c5 * dt, at(a51 * k1, a53 * k3, a54 * k4));
        const Vec2 k6 = rhs(t + c6 * dt, at(a61 * k1, a64 * k4, a65 * k5));
        const Vec2 k7 = rhs(t + c7 * dt, at(a71 * k1, a74 * k4, a75 * k5, a76 * k6));
        const Vec2 k8 = rhs(t + c8 * dt, at(a81 * k1, a84 * k4, a85 * k5, a86 * k6, a87 * k7));
        const Vec2 k9 = rhs(t + c9 * dt, at(a91 * k1, a94 * k4, a95 * k5, a96 * k6, a97 * k7, a98 * k8));
        const Vec2 k10 =
            rhs(t + c10 * dt, at(a101 * k1, a104 * k4, a105 * k5, a106 * k6, a107 * k7, a108 * k8, a109 * k9));
        const Vec2 k11 = rhs(t + c11 * dt, at(a111 * k1, a114 * k4, a115 * k5, a116 * k6, a117 * k7, a118 * k8,
                                              a119 * k9, a1110 * k10));
        const Vec2 k12 = rhs(t + dt, at(a121 * k1, a124 * k4, a125 * k5, a126 * k6, a127 * k7, a128 * k8,
                                        a129 * k9, a1210 * k10, a1211 * k11));

        const Vec2 incr = Vec2{} + b1 * k1 + b6 * k6 + b7 * k7 + b8 * k8 + b9 * k9 + b10 * k10 + b11 * k11 +
                          b12 * k12;
        y_new = y + dt * incr;

        const Vec2 e3 = incr - (bhh1 * k1 + bhh2 * k9 + bhh3 * k12);
        const Vec2 e5 = Vec2{} + er1 * k1 + er6 * k6 + er7 * k7 + er8 * k8 + er9 * k9 + er10 * k10 + er11 * k11 +
                        er12 * k12;

        double err3 = 0.0;
        double err5 = 0.0;
        auto accumulate = [&](cplx y0, cplx y1, cplx d3, cplx d5) {
            const double sk = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y0), std::abs(y1));
            err3 += std::norm(d3) / (sk * sk);
            err5 += std::norm(d5) / (sk * sk);
        };
        accumulate(y.c0, y_new.c0, e3.c0, e5.c0);
        accumulate(y.c1, y_new.c1, e3.c1, e5.c1);

        double deno = err5 + 0.01 * err3;
        if (deno <= 0.0)
            deno = 1.0;
        return std::abs(dt) * err5 / std::sqrt(2.0 * deno);
    }

    /// Starting step from the local scale of y and f (Hairer's HINIT, order 8).
    double initial_step(double t, const Vec2& y, const Vec2& f0, double max_step) const {
        auto scaled_norm = [&](const Vec2& v) {
            const double s0 = cfg_.abs_tol + cfg_.rel_tol * std::abs(y.c0);
            const double s1 = cfg_.abs_tol + cfg_.rel_tol * std::abs(y.c1);
            return std::sqrt(0.5 * (std::norm(v.c0) / (s0 * s0) + std::norm(v.c1) / (s1 * s1)));
        };
        const double dnf = scaled_norm(f0);
        const double dny = scaled_norm(y);
        double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
        h = std::min(h, max_step);
        const Vec2 f1 = rhs(t + h, y + h * f0);
        const double der2 = scaled_norm(f1 - f0) / h;
        const double der12 = std::max(der2, dnf);
        const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 1.0 / 8.0);
        return std::min({100.0 * h, h1, max_step});
    }

private:
    const Generator& h_;
    const IntegratorConfig& cfg_;
};

} // namespace

IntegratorConfig IntegratorConfig::defaults_for(const DriveParams& p) {
    IntegratorConfig cfg;
    cfg.max_step = p.period() / 20.0;
    return cfg;
}

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0.0 && rel_tol <= 1e-3))
        throw DomainError("IntegratorConfig: rel_tol must lie in (0, 1e-3]");
    if (!(abs_tol > 0.0 && abs_tol <= 1e-6))
        throw DomainError("IntegratorConfig: abs_tol must lie in (0, 1e-6]");
    if (!(max_step > 0.0) || !std::isfinite(max_step))
        throw DomainError("IntegratorConfig: max_step must be > 0");
    if (!(initial_step >= 0.0) || !std::isfinite(initial_step))
        throw DomainError("IntegratorConfig: initial_step must be >= 0");
}

std::vector<double> uniform_grid(double t_max, std::size_t samples) {
    if (samples < 2)
        throw DomainError("uniform_grid: need at least 2 samples");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw DomainError("uniform_grid: t_max must be > 0");
    std::vector<double> grid(samples);
    const double n = static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i)
        grid[i] = t_max * (static_cast<double>(i) / n);
    grid.back() = t_max;
    return grid;
}

Trajectory propagate(const Generator& hamiltonian, const StateVector& psi0, std::span<const double> t_grid,
                     const IntegratorConfig& cfg) {
    cfg.validate();
    if (t_grid.empty() || t_grid.front() != 0.0)
        throw DomainError("propagate: time grid must start at 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]) || !std::isfinite(t_grid[i]))
            throw DomainError("propagate: time grid must be strictly increasing");

    Trajectory traj;
    traj.config = cfg;
    traj.times.assign(t_grid.begin(), t_grid.end());
    traj.states.reserve(t_grid.size());
    traj.states.push_back(psi0.vec());

    const Dop853 stepper(hamiltonian, cfg);
    double t = 0.0;
    Vec2 y = psi0.vec();
    Vec2 f = stepper.rhs(t, y);
    double h = cfg.initial_step > 0.0 ? std::min(cfg.initial_step, cfg.max_step)
                                      : stepper.initial_step(t, y, f, cfg.max_step);
    double err_old = 1e-4;

    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double target = t_grid[i];
        while (t < target) {
            double dt = std::min(h, cfg.max_step);
            bool clipped = false;
            if (t + dt >= target) {
                dt = target - t;
                clipped = true;
            }
            if (dt <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
                throw IntegrationError("propagate: step size underflow at t = " + std::to_string(t), t);

            Vec2 y_new;
            const double err = stepper.attempt(t, y, f, dt, y_new);
            if (!std::isfinite(err) || !y_new.is_finite())
                throw IntegrationError("propagate: non-finite state at t = " + std::to_string(t), t);

            if (err <= 1.0) {
                const double fac11 = std::pow(std::max(err, 1e-300), kExpo);
                double fac = fac11 / std::pow(err_old, kBeta);
                fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
                err_old = std::max(err, 1e-4);

                t = clipped ? target : t + dt;
                y = y_new;
                f = stepper.rhs(t, y);
                ++traj.accepted_steps;
                traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(y.norm() - 1.0));

                const double proposal = dt / fac;
                // A clipped step says nothing about the natural step size; keep the larger one.
                h = clipped ? std::max(h, proposal) : proposal;
            } else {
                const double fac11 = std::pow(err, kExpo);
                h = dt / std::min(1.0 / kFacMin, fac11 / kSafety);
                ++traj.rejected_steps;
            }
        }
        traj.states.push_back(y);
    }
    return traj;
}

Trajectory propagate(const DriveParams& p, const StateVector& psi0, std::span<const double> t_grid,
                     const IntegratorConfig& cfg) {
    const Generator h = [p](double t) { return hamiltonian_full(t, p); };
    Trajectory traj = propagate(h, psi0, t_grid, cfg);
    traj.params = p;
    return traj;
}

Mat2 monodromy(const DriveParams& p, const IntegratorConfig& cfg) {
    const double grid[] = {0.0, p.period()};
    const Vec2 col0 = propagate(p, StateVector(basis0()), grid, cfg).final_state();
    const Vec2 col1 = propagate(p, StateVector(basis1()), grid, cfg).final_state();
    return {col0.c0, col1.c0, col0.c1, col1.c1};
}

} // namespace strongdrive
