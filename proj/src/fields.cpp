#include "radreact/fields.hpp"

#include "radreact/quadrature.hpp"

#include <cmath>

namespace radreact {

Vec3 FullWorldline::position(double s) const
{
    if (s <= 0.0)
        return t_.samples.front().q * t_.eps + s * t_.samples.front().v;
    return t_.macro_position(s);
}

Vec3 FullWorldline::velocity(double s) const
{
    if (s <= 0.0)
        return t_.samples.front().v;
    return t_.macro_velocity(s);
}

Vec3 FullWorldline::acceleration(double s) const
{
    if (s < 0.0)
        return Vec3::Zero();
    const double tm = s / t_.eps;
    const auto& S = t_.samples;
    auto i = static_cast<std::size_t>(tm / t_.step);
    if (i + 1 >= S.size())
        i = S.size() - 2;
    const double w = (tm - S[i].t) / t_.step;
    return ((1 - w) * S[i].a + w * S[i + 1].a) / t_.eps;
}

namespace {

// s <= upper with s + |x - r(s)| = t; requires the left side at `upper` to be >= t
double solve_cone(const Worldline& w, const Vec3& x, double t, double upper)
{
    auto psi = [&](double s) { return s + (x - w.position(s)).norm() - t; };
    const double vbar = w.speed_bound();
    if (!(vbar < 1.0))
        throw std::domain_error("retarded time needs a subluminal trajectory");
    double hi = upper;
    double fhi = psi(hi);
    if (fhi == 0.0)
        return hi;
    if (fhi < 0.0)
        throw std::invalid_argument("light cone root lies beyond the trajectory");
    double lo = hi - fhi / (1.0 - vbar) - 1e-12;
    double flo = psi(lo);
    for (int k = 0; flo > 0.0 && k < 60; ++k) {
        lo = hi - 2.0 * (hi - lo);
        flo = psi(lo);
    }
    if (flo > 0.0)
        throw NumericalError("could not bracket the retarded time");
    double s = lo - flo * (hi - lo) / (fhi - flo);
    const double tol = 1e-13 * std::max(1.0, std::abs(t));
    for (int it = 0; it < 200; ++it) {
        const double f = psi(s);
        if (std::abs(f) < tol)
            return s;
        if (f < 0)
            lo = s;
        else
            hi = s;
        const Vec3 d = x - w.position(s);
        const double dn = d.norm();
        const double df = dn > 0 ? 1.0 - d.dot(w.velocity(s)) / dn : 1.0;
        double next = s - f / df;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (next == s)
            return s;
        s = next;
    }
    throw NumericalError("retarded time iteration did not converge");
}

} // namespace

double retarded_time(const Worldline& w, const Vec3& x, double t) { return solve_cone(w, x, t, t); }

LimitField limit_fields(const Vec3& x, const Vec3& r_ret, const Vec3& u, const Vec3& udot, double charge)
{
    const Vec3 d = x - r_ret;
    const double R = d.norm();
    if (R == 0.0)
        throw std::domain_error("observation point on the trajectory");
    const Vec3 n = d / R;
    const double k = 1.0 - n.dot(u);
    LimitField f;
    f.phi = -charge / (4 * kPi * R * k);
    f.pi = -charge / (4 * kPi * R) * n.dot(udot) / (k * k * k) -
           charge / (4 * kPi * R * R) * (n.dot(u) - u.squaredNorm()) / (k * k * k);
    return f;
}

LimitField limit_fields(const Worldline& w, const Vec3& x, double t, double charge)
{
    const double s = retarded_time(w, x, t);
    LimitField f = limit_fields(x, w.position(s), w.velocity(s), w.acceleration(s), charge);
    f.t_ret = s;
    f.on_light_cone = std::abs(s) < 1e-9 * std::max(1.0, std::abs(t));
    return f;
}

double finite_eps_field(const ChargeModel& charge, double eps, const Worldline& w, const Vec3& x, double t,
                        int nodes)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("eps must be positive");
    const double a = eps * charge.support_radius();
    // shells of radius R about x meet the charge when |R - D(R)| < a, D(R) = |x - r(t - R)|
    auto D = [&](double R) { return (x - w.position(t - R)).norm(); };
    const double Rstar = t - retarded_time(w, x, t);
    double Rlo = 0.0;
    if (D(0.0) > a)
        Rlo = t - solve_cone(w, x, t + a, t);
    const double Rhi = t - retarded_time(w, x, t - a);

    const auto& gl = gauss_legendre(nodes);
    const double cell = std::max(Rstar - Rlo, Rhi - Rstar) / nodes;
    if (cell > 0.25 * a)
        throw std::invalid_argument("retarded support unresolved: increase the node count above " +
                                    std::to_string(static_cast<int>(std::ceil(4 * (Rhi - Rlo) / a))));
    auto integrand = [&](double R) {
        const double d = D(R);
        if (d == 0.0)
            return 0.0;
        return (charge.outer_flux(std::abs(R - d) / eps) - charge.outer_flux((R + d) / eps)) / (eps * d);
    };
    double s = 0.0;
    if (Rstar > Rlo)
        s += gl.integrate(integrand, Rlo, Rstar);
    if (Rhi > Rstar)
        s += gl.integrate(integrand, Rstar, Rhi);
    return -0.5 * s;
}

double finite_eps_field_rate(const ChargeModel& charge, double eps, const Worldline& w, const Vec3& x, double t,
                             double dt, int nodes)
{
    return (finite_eps_field(charge, eps, w, x, t + dt, nodes) - finite_eps_field(charge, eps, w, x, t - dt, nodes)) /
           (2 * dt);
}

double radiated_power(const Vec3& u, const Vec3& udot, double charge_squared)
{
    const double g2 = lorentz_gamma(u.squaredNorm()) * lorentz_gamma(u.squaredNorm());
    const double g6 = g2 * g2 * g2, g8 = g6 * g2;
    const double uu = u.dot(udot);
    return charge_squared / (12 * kPi) * (6 * g8 * uu * uu + g6 * udot.squaredNorm());
}

double flux_sphere_quadrature(const Vec3& u, const Vec3& udot, double charge_squared, int n_theta, int n_phi)
{
    const double s = u.norm();
    if (!(s < 1.0))
        throw std::domain_error("speed must be below 1");
    Vec3 e3 = s > 0 ? Vec3(u / s) : Vec3(0, 0, 1);
    Vec3 e1 = std::abs(e3.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    e1 = (e1 - e1.dot(e3) * e3).normalized();
    const Vec3 e2 = e3.cross(e1);
    const auto& gl = gauss_legendre(n_theta);
    double sum = 0.0;
    for (int i = 0; i < gl.size(); ++i) {
        const double mu = gl.nodes()[i], st = std::sqrt(1 - mu * mu);
        const double k = 1.0 - s * mu;
        const double k5 = k * k * k * k * k;
        double ring = 0.0;
        for (int j = 0; j < n_phi; ++j) {
            const double ph = 2 * kPi * j / n_phi;
            const Vec3 w = mu * e3 + st * (std::cos(ph) * e1 + std::sin(ph) * e2);
            const double c = w.dot(udot);
            ring += c * c;
        }
        sum += gl.weights()[i] * ring * (2 * kPi / n_phi) / k5;
    }
    return charge_squared / (16 * kPi * kPi) * sum;
}

} // namespace radreact
