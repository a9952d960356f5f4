#pragma once

#include "radreact/common.hpp"

#include <string>
#include <vector>

namespace radreact {

// Macroscopic sample: position, velocity, acceleration y = du/dt and its
// time derivative. `energy` holds H or G, `rate` the closed-form dG/dt and
// `distance` the offset from the first-order manifold chart.
struct MacroSample {
    double t = 0.0;
    Vec3 r = Vec3::Zero(), u = Vec3::Zero(), y = Vec3::Zero(), jerk = Vec3::Zero();
    double energy = 0.0, rate = 0.0, distance = 0.0;
};

class MacroTrajectory {
public:
    std::vector<MacroSample> samples;
    double eps = 0.0;
    bool aborted = false;
    std::string diagnostic;

    bool empty() const { return samples.empty(); }
    double t_begin() const { return samples.front().t; }
    double t_end() const { return samples.back().t; }

    // dense output; before t_begin the motion is continued as a straight line
    Vec3 position(double t) const;
    Vec3 velocity(double t) const;
    Vec3 acceleration(double t) const;

private:
    std::size_t locate(double t) const;
};

} // namespace radreact
