#pragma once

#include "radreact/kinematics.hpp"
#include "radreact/potential.hpp"
#include "radreact/soliton.hpp"
#include "radreact/trajectory.hpp"

namespace radreact {

// u' = -m(u)^{-1} grad V(r)
Vec3 effective_acceleration(const CoefficientSet& coeff, const PotentialModel& V, const Vec3& r, const Vec3& u);
// time derivative of the above along the effective flow
Vec3 effective_jerk(const CoefficientSet& coeff, const PotentialModel& V, const Vec3& r, const Vec3& u);

double effective_energy(const SolitonCharts& charts, const PotentialModel& V, const Vec3& r, const Vec3& u);

// Classical RK4 on a uniform grid; aborts when |u| reaches the clamp speed.
MacroTrajectory integrate_effective(const Vec3& r0, const Vec3& u0, const CoefficientSet& coeff,
                                   const PotentialModel& V, double t_final, double step);

} // namespace radreact
