#include "radreact/effective.hpp"

#include <cmath>

namespace radreact {

Vec3 effective_acceleration(const CoefficientSet& coeff, const PotentialModel& V, const Vec3& r, const Vec3& u)
{
    const Eigen::LDLT<Mat3> m(coeff.mass(u));
    if (m.info() != Eigen::Success)
        throw NumericalError("singular mass matrix");
    return -m.solve(V.gradient(r));
}

Vec3 effective_jerk(const CoefficientSet& coeff, const PotentialModel& V, const Vec3& r, const Vec3& u)
{
    const Eigen::LDLT<Mat3> m(coeff.mass(u));
    const Vec3 h0 = -m.solve(V.gradient(r));
    return -m.solve(V.hessian(r) * u + coeff.mass_derivative(u, h0) * h0);
}

double effective_energy(const SolitonCharts& charts, const PotentialModel& V, const Vec3& r, const Vec3& u)
{
    return charts.energy(u) + V.value(r);
}

MacroTrajectory integrate_effective(const Vec3& r0, const Vec3& u0, const CoefficientSet& coeff,
                                   const PotentialModel& V, double t_final, double step)
{
    if (!(step > 0.0))
        throw std::invalid_argument("step must be positive");
    if (!(u0.norm() < coeff.clamp_speed()))
        throw std::invalid_argument("initial speed must lie below the clamp speed");
    const SolitonCharts charts(coeff.field_mass());
    MacroTrajectory out;
    auto record = [&](double t, const Vec3& r, const Vec3& u) {
        MacroSample s;
        s.t = t;
        s.r = r;
        s.u = u;
        s.y = effective_acceleration(coeff, V, r, u);
        s.jerk = effective_jerk(coeff, V, r, u);
        s.energy = effective_energy(charts, V, r, u);
        out.samples.push_back(s);
    };
    Vec3 r = r0, u = u0;
    record(0.0, r, u);
    const auto n = static_cast<long>(std::ceil(t_final / step - 1e-9));
    for (long i = 0; i < n; ++i) {
        const double h = step;
        const Vec3 k1r = u, k1u = effective_acceleration(coeff, V, r, u);
        const Vec3 k2r = u + 0.5 * h * k1u, k2u = effective_acceleration(coeff, V, r + 0.5 * h * k1r, k2r);
        const Vec3 k3r = u + 0.5 * h * k2u, k3u = effective_acceleration(coeff, V, r + 0.5 * h * k2r, k3r);
        const Vec3 k4r = u + h * k3u, k4u = effective_acceleration(coeff, V, r + h * k3r, k4r);
        r += h / 6 * (k1r + 2 * k2r + 2 * k3r + k4r);
        u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
        if (!(u.norm() < coeff.clamp_speed())) {
            out.aborted = true;
            out.diagnostic = "speed reached the clamp speed at t = " + std::to_string((i + 1) * h);
            break;
        }
        record((i + 1) * h, r, u);
    }
    return out;
}

} // namespace radreact
