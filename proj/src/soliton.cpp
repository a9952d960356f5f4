#include "radreact/soliton.hpp"

#include "radreact/quadrature.hpp"

#include <cmath>

namespace radreact {

namespace {

void check_speed(double s)
{
    if (!(s >= 0.0 && s < 1.0))
        throw std::domain_error("speed must lie in [0, 1)");
}

// sum_{n >= n0} c(n) s^(2n - shift) until terms drop below roundoff
template <class C>
double series(double s, int n0, int shift, C coef)
{
    const double s2 = s * s;
    double pw = std::pow(s, 2 * n0 - shift);
    double sum = 0.0;
    for (int n = n0; n < n0 + 400; ++n) {
        const double term = coef(n) * pw;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum) && n > n0 + 2)
            break;
        pw *= s2;
    }
    return sum;
}

} // namespace

double bracket_phi(double s)
{
    check_speed(s);
    if (s < kBracketSeriesSwitch)
        return series(s, 1, 2, [](int n) { return n / (2.0 * n + 1.0); });
    const double L = std::log((1 + s) / (1 - s));
    return 1.0 / (2 * s * s * (1 - s * s)) - L / (4 * s * s * s);
}

BracketValues bracket_values(double s)
{
    check_speed(s);
    BracketValues r{};
    if (s < kBracketSeriesSwitch) {
        r.phi = bracket_phi(s);
        r.chi = series(s, 2, 4, [](int n) { return 2.0 * n * (n - 1) / (2.0 * n + 1.0); });
        r.dphi = s * r.chi;
        r.omega = series(s, 3, 6, [](int n) { return 2.0 * n * (n - 1) * (2.0 * n - 4) / (2.0 * n + 1.0); });
        return r;
    }
    const double L = std::log((1 + s) / (1 - s));
    const double s2 = s * s, w = 1 - s2;
    const double s3 = s2 * s, s4 = s2 * s2, s5 = s4 * s;
    r.phi = 1.0 / (2 * s2 * w) - L / (4 * s3);
    r.dphi = -(1 - 2 * s2) / (s3 * w * w) - 1.0 / (2 * s3 * w) + 3 * L / (4 * s4);
    const double ddphi = 4.0 / (s2 * w * w) + 3 * (1 - 2 * s2) / (s4 * w * w) -
                         4 * (1 - 2 * s2) / (s2 * w * w * w) + 1.5 / (s4 * w) - 1.0 / (s2 * w * w) +
                         1.5 / (s4 * w) - 3 * L / s5;
    r.chi = r.dphi / s;
    r.omega = (ddphi - r.chi) / s2;
    return r;
}

double energy_bracket(double s)
{
    check_speed(s);
    if (s < kBracketSeriesSwitch)
        return series(s, 1, 0, [](int n) { return (2.0 * n - 1) / (2.0 * (2.0 * n + 1)); });
    const double L = std::log((1 + s) / (1 - s));
    return (2 - s * s) / (2 * (1 - s * s)) - L / (2 * s);
}

SolitonCharts::SolitonCharts(double field_mass) : me_(field_mass)
{
    if (!(field_mass >= 0.0))
        throw std::invalid_argument("field mass must be nonnegative");
}

double SolitonCharts::energy_of_speed(double s) const
{
    check_speed(s);
    return (1.0 / std::sqrt(1 - s * s) - 1.0) + 3 * me_ * energy_bracket(s);
}

double SolitonCharts::momentum_of_speed(double s) const
{
    check_speed(s);
    return s / std::sqrt(1 - s * s) + 3 * me_ * s * bracket_phi(s);
}

double SolitonCharts::energy(const Vec3& v) const { return energy_of_speed(v.norm()); }

Vec3 SolitonCharts::momentum(const Vec3& v) const
{
    const double s = v.norm();
    check_speed(s);
    return (1.0 / std::sqrt(1 - s * s) + 3 * me_ * bracket_phi(s)) * v;
}

Vec3 SolitonCharts::velocity_from_momentum(const Vec3& P) const
{
    const double target = P.norm();
    if (target == 0.0)
        return Vec3::Zero();
    double s = target / (1 + me_ + target);
    const double tol = std::max(1e-13, 1e-15 * target);
    for (int it = 0; it < 200; ++it) {
        const double f = momentum_of_speed(s) - target;
        if (std::abs(f) < tol)
            return (s / target) * P;
        const auto bv = bracket_values(s);
        const double g = 1.0 / std::sqrt(1 - s * s);
        const double df = g * g * g + 3 * me_ * (bv.phi + s * bv.dphi);
        double next = s - f / df;
        if (next >= 1.0)
            next = 0.5 * (s + 1.0);
        else if (next <= 0.0)
            next = 0.5 * s;
        if (next == s)
            return (s / target) * P;
        s = next;
    }
    throw NumericalError("momentum inversion did not converge");
}

double SolitonCharts::speed_at_energy(double level) const
{
    if (level <= 0.0)
        return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (energy_of_speed(mid) < level)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

SolitonFieldValue soliton_field(const ChargeModel& charge, const Vec3& v, const Vec3& x_rel, int nodes)
{
    const double s2 = v.squaredNorm();
    const double g = lorentz_gamma(s2);
    const double Rs = charge.support_radius();
    SolitonFieldValue out;
    out.inside_support = x_rel.norm() < Rs;

    // spherical coordinates about the charge centre, pole along x_rel
    Vec3 e3 = x_rel.norm() > 0 ? Vec3(x_rel.normalized()) : Vec3(0, 0, 1);
    Vec3 e1 = std::abs(e3.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    e1 = (e1 - e1.dot(e3) * e3).normalized();
    const Vec3 e2 = e3.cross(e1);
    const double gm1 = g * g - 1.0;
    const Vec3 vhat = s2 > 0 ? Vec3(v / std::sqrt(s2)) : Vec3::Zero();

    const auto& gl = gauss_legendre(nodes);
    const int naz = 2 * nodes;
    double phi = 0.0, pi = 0.0;
    // the r integrand has a kink at |x_rel| when the point lies inside the support
    std::vector<std::pair<double, double>> segs;
    const double xr = x_rel.norm();
    if (xr > 0 && xr < Rs)
        segs = {{0.0, xr}, {xr, Rs}};
    else
        segs = {{0.0, Rs}};
    for (auto [ra, rb] : segs) {
        for (int i = 0; i < gl.size(); ++i) {
            const double r = 0.5 * (ra + rb) + 0.5 * (rb - ra) * gl.nodes()[i];
            const double wr = 0.5 * (rb - ra) * gl.weights()[i] * r * r * charge.density(r);
            if (wr == 0.0)
                continue;
            for (int j = 0; j < gl.size(); ++j) {
                const double mu = gl.nodes()[j];
                const double st = std::sqrt(1 - mu * mu);
                for (int k = 0; k < naz; ++k) {
                    const double az = 2 * kPi * (k + 0.5) / naz;
                    const Vec3 y = r * (mu * e3 + st * (std::cos(az) * e1 + std::sin(az) * e2));
                    const Vec3 z = x_rel - y;
                    const double zp = vhat.dot(z);
                    const double Q = z.squaredNorm() + gm1 * zp * zp;
                    const double w = wr * gl.weights()[j] * (2 * kPi / naz);
                    phi -= w * g / (4 * kPi * std::sqrt(Q));
                    pi -= w * g * g * g * v.dot(z) / (4 * kPi * Q * std::sqrt(Q));
                }
            }
        }
    }
    out.phi = phi;
    out.pi = pi;
    return out;
}

} // namespace radreact
