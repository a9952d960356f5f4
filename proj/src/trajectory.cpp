#include "radreact/trajectory.hpp"

#include "radreact/quadrature.hpp"

#include <algorithm>

namespace radreact {

std::size_t MacroTrajectory::locate(double t) const
{
    if (samples.size() < 2)
        throw std::logic_error("trajectory has fewer than two samples");
    if (t > t_end() + 1e-12 * std::max(1.0, std::abs(t_end())))
        throw std::out_of_range("time beyond the end of the trajectory");
    auto it = std::upper_bound(samples.begin(), samples.end(), t,
                               [](double x, const MacroSample& s) { return x < s.t; });
    std::size_t i = static_cast<std::size_t>(it - samples.begin());
    if (i == 0)
        return 0;
    return std::min(i - 1, samples.size() - 2);
}

Vec3 MacroTrajectory::position(double t) const
{
    if (t <= t_begin())
        return samples.front().r + (t - t_begin()) * samples.front().u;
    const auto i = locate(t);
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    return quintic_hermite(a.t, b.t, a.r, b.r, a.u, b.u, a.y, b.y, t);
}

Vec3 MacroTrajectory::velocity(double t) const
{
    if (t <= t_begin())
        return samples.front().u;
    const auto i = locate(t);
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    return quintic_hermite(a.t, b.t, a.u, b.u, a.y, b.y, a.jerk, b.jerk, t);
}

Vec3 MacroTrajectory::acceleration(double t) const
{
    if (t < t_begin())
        return Vec3::Zero();
    const auto i = locate(t);
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    return cubic_hermite(a.t, b.t, a.y, b.y, a.jerk, b.jerk, t);
}

} // namespace radreact
