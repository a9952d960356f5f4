#pragma once

#include "radreact/charge.hpp"
#include "radreact/common.hpp"
#include "radreact/fullfield.hpp"
#include "radreact/trajectory.hpp"

namespace radreact {

// Subluminal trajectory r(s) on the macroscopic scale, defined for all s up to
// its end time, with straight-line continuation into the past.
class Worldline {
public:
    virtual ~Worldline() = default;
    virtual Vec3 position(double s) const = 0;
    virtual Vec3 velocity(double s) const = 0;
    virtual Vec3 acceleration(double s) const = 0;
    virtual double speed_bound() const = 0;
};

class StraightWorldline : public Worldline {
public:
    StraightWorldline(const Vec3& r0, const Vec3& u) : r0_(r0), u_(u) {}
    Vec3 position(double s) const override { return r0_ + s * u_; }
    Vec3 velocity(double) const override { return u_; }
    Vec3 acceleration(double) const override { return Vec3::Zero(); }
    double speed_bound() const override { return u_.norm(); }

private:
    Vec3 r0_, u_;
};

class MacroWorldline : public Worldline {
public:
    MacroWorldline(const MacroTrajectory& t, double bound) : t_(t), bound_(bound) {}
    Vec3 position(double s) const override { return t_.position(s); }
    Vec3 velocity(double s) const override { return t_.velocity(s); }
    Vec3 acceleration(double s) const override { return t_.acceleration(s); }
    double speed_bound() const override { return bound_; }

private:
    const MacroTrajectory& t_;
    double bound_;
};

// macroscopic view of a microscopic full run
class FullWorldline : public Worldline {
public:
    FullWorldline(const FullTrajectory& t, double bound) : t_(t), bound_(bound) {}
    Vec3 position(double s) const override;
    Vec3 velocity(double s) const override;
    Vec3 acceleration(double s) const override;
    double speed_bound() const override { return bound_; }

private:
    const FullTrajectory& t_;
    double bound_;
};

// solution of s = t - |x - r(s)|
double retarded_time(const Worldline& w, const Vec3& x, double t);

struct LimitField {
    double phi = 0.0, pi = 0.0, t_ret = 0.0;
    bool on_light_cone = false; // x on the cone of the switch-on event, where pi jumps
};

// limits of phi / sqrt(eps) and pi / sqrt(eps) as eps -> 0
LimitField limit_fields(const Vec3& x, const Vec3& r_ret, const Vec3& u, const Vec3& udot, double charge);
LimitField limit_fields(const Worldline& w, const Vec3& x, double t, double charge);

// phi / sqrt(eps) of the retarded field of the charge rho_eps carried along w,
// reduced exactly to a one-dimensional integral over spherical shells about x
double finite_eps_field(const ChargeModel& charge, double eps, const Worldline& w, const Vec3& x, double t,
                        int nodes = 48);
// pi / sqrt(eps) by a central difference of the above in t
double finite_eps_field_rate(const ChargeModel& charge, double eps, const Worldline& w, const Vec3& x, double t,
                             double dt, int nodes = 48);

double radiated_power(const Vec3& u, const Vec3& udot, double charge_squared);
double flux_sphere_quadrature(const Vec3& u, const Vec3& udot, double charge_squared, int n_theta = 64,
                              int n_phi = 128);

} // namespace radreact
