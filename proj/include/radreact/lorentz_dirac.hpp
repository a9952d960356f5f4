#pragma once

#include "radreact/kinematics.hpp"
#include "radreact/potential.hpp"
#include "radreact/soliton.hpp"
#include "radreact/trajectory.hpp"

namespace radreact {

struct ThirdOrderResult {
    MacroTrajectory trajectory;
    bool runaway = false;
    double divergence_time = 0.0; // first time the run-away verdict held
};

struct ShootingResult {
    Vec3 y0 = Vec3::Zero();
    double horizon = 0.0;
    int retries = 0;
    int iterations = 0;
    double mismatch = 0.0; // |x0 - x(0)| after the last iteration
};

// Third-order comparison dynamics
//   r' = u, u' = y, eps a(u) y' = m(u) y + grad V(r) - eps b(u, y)
// written as x' = f(x, y), y' = g(x, y, eps) / eps, together with its first
// order manifold chart y = h0(x) + eps h1(x).
class ComparisonDynamics {
public:
    ComparisonDynamics(const CoefficientSet& coeff, const PotentialModel& V, double eps);

    double eps() const { return eps_; }
    const CoefficientSet& coefficients() const { return c_; }
    const PotentialModel& potential() const { return V_; }

    Vec3 h0(const Vec3& r, const Vec3& u) const;
    Vec3 h1(const Vec3& r, const Vec3& u) const;
    Vec3 chart(const Vec3& r, const Vec3& u) const { return h0(r, u) + eps_ * h1(r, u); }
    // derivative of the chart along the flow it generates, by a fourth order difference
    Vec3 chart_rate(const Vec3& r, const Vec3& u, double delta = 1e-3) const;

    Vec3 g(const Vec3& r, const Vec3& u, const Vec3& y) const; // eps y' = g
    Vec3 fast_rhs(const Vec3& r, const Vec3& u, const Vec3& y) const { return g(r, u, y) / eps_; }
    Mat3 fast_jacobian(const Vec3& r, const Vec3& u, const Vec3& y) const; // d y' / d y

    // |eps D_x h . f - g(x, h, eps)| on the chart, O(eps^2)
    double invariance_residual(const Vec3& r, const Vec3& u) const;

    double lyapunov(const Vec3& r, const Vec3& u, const Vec3& y) const;
    double decay_rate(const Vec3& u, const Vec3& y) const;

    // r' = u, u' = h0 + eps h1
    MacroTrajectory integrate_on_manifold(const Vec3& r0, const Vec3& u0, double t_final, double step) const;
    // full third-order system; step may be negative to integrate backward
    ThirdOrderResult integrate_third_order(const Vec3& r0, const Vec3& u0, const Vec3& y0, double t_final,
                                           double step) const;

    // Backward shooting from a far-future state on the chart; the fast
    // directions contract backward in time so the returned y0 approximates the
    // invariant manifold beyond first order. Horizon in units of eps / lambda_min.
    ShootingResult backward_shooting(const Vec3& r0, const Vec3& u0, double horizon_factor = 30.0) const;

private:
    CoefficientSet c_;
    PotentialModel V_;
    SolitonCharts charts_;
    double eps_;
};

// least-squares rate of exp growth of the manifold distance over samples
// whose distance lies in [lo, hi]
double fit_growth_rate(const MacroTrajectory& traj, double lo, double hi);

} // namespace radreact
