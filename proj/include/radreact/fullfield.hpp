#pragma once

#include "radreact/charge.hpp"
#include "radreact/common.hpp"
#include "radreact/kinematics.hpp"
#include "radreact/memory_kernel.hpp"
#include "radreact/potential.hpp"

#include <deque>
#include <string>
#include <vector>

namespace radreact {

struct HistorySample {
    double t = 0.0;
    Vec3 q = Vec3::Zero(), v = Vec3::Zero(), a = Vec3::Zero();
};

// Past of the microscopic trajectory. Samples start at t = 0; before that the
// motion is the straight line q0 + v0 s. Interpolation is quintic Hermite in
// (q, v, dv/dt) so the s-quadrature sees a smooth path between grid points.
class TrajectoryHistory {
public:
    TrajectoryHistory(const Vec3& q0, const Vec3& v0, double memory);

    void push(const HistorySample& s);
    void replace_latest(const HistorySample& s);
    bool empty() const { return buf_.empty(); }
    const HistorySample& latest() const { return buf_.back(); }
    double latest_time() const { return buf_.empty() ? 0.0 : buf_.back().t; }
    double earliest_time() const { return buf_.empty() ? 0.0 : buf_.front().t; }
    double memory() const { return memory_; }

    Vec3 position(double s) const;
    Vec3 velocity(double s) const;

private:
    std::size_t locate(double s) const;

    std::deque<HistorySample> buf_;
    double memory_;
    Vec3 q0_, v0_;
};

// Provisional path over (t0, t1] used for Runge-Kutta stages that lie ahead of
// the stored history: cubic Hermite through the two end states.
struct StageTail {
    double t0, t1;
    Vec3 q0, q1, v0, v1;
    Vec3 position(double s) const;
};

struct SelfForceQuadrature {
    int nodes = 8;       // Gauss-Legendre nodes per panel
    double panel = 0.25; // panel width in units of the support radius
};

// F(t) = -int_{t - t1}^{t} K(t - s, |d|) d / |d| ds with d = q(t) - q(s)
Vec3 self_force(const MemoryKernel& kernel, const TrajectoryHistory& history, double t,
                const Vec3& q_t, const SelfForceQuadrature& quad = {}, const StageTail* tail = nullptr);

struct FullSample {
    double t = 0.0; // microscopic time
    Vec3 q = Vec3::Zero(), v = Vec3::Zero(), a = Vec3::Zero(), force = Vec3::Zero();
};

struct FullOptions {
    double step = 0.05; // microscopic step
    SelfForceQuadrature quad;
};

class FullTrajectory {
public:
    double eps = 0.0, step = 0.0, memory_time = 0.0;
    std::vector<FullSample> samples;
    bool aborted = false;
    std::string diagnostic;

    double t_end() const { return samples.back().t; }
    Vec3 position(double t) const; // microscopic
    Vec3 velocity(double t) const;

    Vec3 macro_position(double tm) const { return eps * position(tm / eps); }
    Vec3 macro_velocity(double tm) const { return velocity(tm / eps); }

private:
    std::size_t locate(double t) const;
};

// Coupled particle-field dynamics on the microscopic scale with potential
// V(eps q), starting from the soliton at macroscopic position q0, velocity v0.
FullTrajectory integrate_full(const Vec3& q0_macro, const Vec3& v0, double eps, const MemoryKernel& kernel,
                              const PotentialModel& potential, double t_final_macro,
                              const FullOptions& options = {});

// F + m_f(v) v' - a(v) v'' - b(v, v') at sample `index` (microscopic units);
// v'' from a five point difference of the stored accelerations with the
// given sample stride.
Vec3 taylor_residual(const FullTrajectory& traj, const CoefficientSet& coeff, std::size_t index, int stride = 10);

// Finite-difference derivatives of the stored acceleration at sample `index`:
// returns (|v'|, |v''|, |v'''|) in microscopic units.
Vec3 acceleration_derivatives(const FullTrajectory& traj, std::size_t index, int stride = 10);

// int_0^inf dt t int d^3k |ff|^2 sin(|k| t)/|k| exp(-i k.v t)
double kernel_time_integral(const ChargeModel& charge, const Vec3& v);

} // namespace radreact
