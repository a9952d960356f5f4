#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace radreact {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;

// Raised when an iteration fails to converge or an internal consistency
// check trips. Bad user input uses std::invalid_argument / std::domain_error.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double lorentz_gamma(double speed2)
{
    if (speed2 >= 1.0)
        throw std::domain_error("speed must be below 1");
    return 1.0 / std::sqrt(1.0 - speed2);
}

inline double lorentz_gamma(const Vec3& v) { return lorentz_gamma(v.squaredNorm()); }

} // namespace radreact
