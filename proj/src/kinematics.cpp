#include "radreact/kinematics.hpp"

#include "radreact/soliton.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace radreact {

CoefficientSet::CoefficientSet(double field_mass, double charge_squared, double clamp_delta,
                               double clamp_width)
    : me_(field_mass), e2_(charge_squared), delta_(clamp_delta), width_(clamp_width)
{
    if (!(field_mass >= 0.0))
        throw std::invalid_argument("field mass must be nonnegative");
    if (!(charge_squared > 0.0))
        throw std::invalid_argument("charge squared must be positive");
    if (!(clamp_delta > 0.0 && clamp_delta < 1.0))
        throw std::invalid_argument("clamp margin must lie in (0, 1)");
    if (!(clamp_width > 0.0 && clamp_width < 1.0 - clamp_delta))
        throw std::invalid_argument("clamp width out of range");
}

double CoefficientSet::clamped_speed(double s) const
{
    const double sc = 1.0 - delta_, sa = sc - width_;
    if (s <= sa)
        return s;
    if (s >= sc)
        return sc - 0.5 * width_;
    return s - (s - sa) * (s - sa) / (2.0 * width_);
}

Vec3 CoefficientSet::clamp(const Vec3& u) const
{
    const double s = u.norm();
    if (s <= 1.0 - delta_ - width_)
        return u;
    return (clamped_speed(s) / s) * u;
}

Mat3 CoefficientSet::clamp_jacobian(const Vec3& u) const
{
    const double s = u.norm();
    const double sc = 1.0 - delta_, sa = sc - width_;
    if (s <= sa)
        return Mat3::Identity();
    const double sig = clamped_speed(s);
    const double dsig = s >= sc ? 0.0 : 1.0 - (s - sa) / width_;
    const Vec3 n = u / s;
    return dsig * n * n.transpose() + (sig / s) * (Mat3::Identity() - n * n.transpose());
}

Mat3 CoefficientSet::bare_mass(const Vec3& u0) const
{
    const Vec3 u = clamp(u0);
    const double g = lorentz_gamma(u);
    return g * Mat3::Identity() + g * g * g * u * u.transpose();
}

Mat3 CoefficientSet::dressing(const Vec3& u0) const
{
    const Vec3 u = clamp(u0);
    const auto bv = bracket_values(u.norm());
    return 3 * me_ * (bv.phi * Mat3::Identity() + bv.chi * u * u.transpose());
}

Mat3 CoefficientSet::mass_raw(const Vec3& u) const
{
    const double g = lorentz_gamma(u);
    const auto bv = bracket_values(u.norm());
    const double alpha = g + 3 * me_ * bv.phi;
    const double beta = g * g * g + 3 * me_ * bv.chi;
    return alpha * Mat3::Identity() + beta * u * u.transpose();
}

Mat3 CoefficientSet::mass(const Vec3& u) const { return mass_raw(clamp(u)); }

// m = alpha(s) I + beta(s) u u^T with alpha'/s = beta, beta'/s = 3 g^5 + 3 m_e omega
Mat3 CoefficientSet::mass_derivative_raw(const Vec3& u, const Vec3& w) const
{
    const double g = lorentz_gamma(u);
    const auto bv = bracket_values(u.norm());
    const double g3 = g * g * g;
    const double beta = g3 + 3 * me_ * bv.chi;
    const double beta1 = 3 * g3 * g * g + 3 * me_ * bv.omega;
    const double uw = u.dot(w);
    return uw * (beta * Mat3::Identity() + beta1 * u * u.transpose()) +
           beta * (w * u.transpose() + u * w.transpose());
}

Mat3 CoefficientSet::mass_derivative(const Vec3& u, const Vec3& w) const
{
    if (u.norm() <= 1.0 - delta_ - width_)
        return mass_derivative_raw(u, w);
    return mass_derivative_raw(clamp(u), clamp_jacobian(u) * w);
}

Mat3 CoefficientSet::a(const Vec3& u0) const
{
    const Vec3 u = clamp(u0);
    const double g2 = 1.0 / (1.0 - u.squaredNorm());
    const double g4 = g2 * g2, g6 = g4 * g2;
    return e2_ / (12 * kPi) * (g4 * Mat3::Identity() + 4 * g6 * u * u.transpose());
}

Vec3 CoefficientSet::b(const Vec3& u0, const Vec3& y) const
{
    const Vec3 u = clamp(u0);
    const double g2 = 1.0 / (1.0 - u.squaredNorm());
    const double g6 = g2 * g2 * g2, g8 = g6 * g2;
    const double uy = u.dot(y);
    return e2_ / (4 * kPi) * (2 * g6 * uy * y + g6 * y.squaredNorm() * u + 6 * g8 * uy * uy * u);
}

Mat3 CoefficientSet::b_jacobian(const Vec3& u0, const Vec3& y) const
{
    const Vec3 u = clamp(u0);
    const double g2 = 1.0 / (1.0 - u.squaredNorm());
    const double g6 = g2 * g2 * g2, g8 = g6 * g2;
    const double uy = u.dot(y);
    return e2_ / (4 * kPi) *
           (2 * g6 * (uy * Mat3::Identity() + y * u.transpose()) + 2 * g6 * u * y.transpose() +
            12 * g8 * uy * u * u.transpose());
}

Vec3 CoefficientSet::relaxation_spectrum(const Vec3& u) const
{
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat3> es(mass(u), a(u), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("generalized eigenproblem failed");
    return es.eigenvalues();
}

double clamp_margin(double vbar, double s0) { return std::min(0.5 * (1.0 - vbar), 0.5 * (1.0 - s0)); }

} // namespace radreact
