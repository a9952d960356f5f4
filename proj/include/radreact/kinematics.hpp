#pragma once

#include "radreact/common.hpp"

namespace radreact {

// Velocity dependent coefficients of the effective and comparison dynamics.
// Beyond the clamp speed every coefficient is frozen along rays; the freeze
// is blended in over a ring of width `clamp_width` so it stays C^1.
class CoefficientSet {
public:
    CoefficientSet(double field_mass, double charge_squared, double clamp_delta = 0.05,
                   double clamp_width = 1e-3);

    double field_mass() const { return me_; }
    double charge_squared() const { return e2_; }
    double clamp_delta() const { return delta_; }
    double clamp_speed() const { return 1.0 - delta_; }
    double clamp_width() const { return width_; }

    // speed actually fed to the coefficient formulas
    double clamped_speed(double s) const;
    Vec3 clamp(const Vec3& u) const;
    Mat3 clamp_jacobian(const Vec3& u) const;

    Mat3 bare_mass(const Vec3& u) const;  // gamma I + gamma^3 u u^T
    Mat3 dressing(const Vec3& u) const;   // field part of the mass
    Mat3 mass(const Vec3& u) const;
    Mat3 a(const Vec3& u) const;
    Vec3 b(const Vec3& u, const Vec3& y) const;
    Mat3 b_jacobian(const Vec3& u, const Vec3& y) const; // d b / d y

    // directional derivative of mass(u) along w
    Mat3 mass_derivative(const Vec3& u, const Vec3& w) const;

    // eigenvalues of a(u)^{-1} m(u), ascending
    Vec3 relaxation_spectrum(const Vec3& u) const;
    double hyperbolicity_rate(const Vec3& u) const { return relaxation_spectrum(u)(0); }

private:
    Mat3 mass_raw(const Vec3& u) const;
    Mat3 mass_derivative_raw(const Vec3& u, const Vec3& w) const;

    double me_, e2_, delta_, width_;
};

// energy recipe for the clamp margin: min{(1 - vbar)/2, (1 - s0)/2}
double clamp_margin(double vbar, double s0);

} // namespace radreact
