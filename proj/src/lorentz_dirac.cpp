#include "radreact/lorentz_dirac.hpp"

#include "radreact/effective.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace radreact {

ComparisonDynamics::ComparisonDynamics(const CoefficientSet& coeff, const PotentialModel& V, double eps)
    : c_(coeff), V_(V), charts_(coeff.field_mass()), eps_(eps)
{
    if (!(eps >= 0.0))
        throw std::invalid_argument("eps must be nonnegative");
}

Vec3 ComparisonDynamics::h0(const Vec3& r, const Vec3& u) const { return effective_acceleration(c_, V_, r, u); }

Vec3 ComparisonDynamics::h1(const Vec3& r, const Vec3& u) const
{
    const Eigen::LDLT<Mat3> m(c_.mass(u));
    const Vec3 y0 = -m.solve(V_.gradient(r));
    const Vec3 dy0 = -m.solve(V_.hessian(r) * u + c_.mass_derivative(u, y0) * y0);
    return m.solve(c_.a(u) * dy0 + c_.b(u, y0));
}

Vec3 ComparisonDynamics::chart_rate(const Vec3& r, const Vec3& u, double delta) const
{
    const Vec3 dr = u, du = chart(r, u);
    auto at = [&](double s) { return chart(r + s * dr, u + s * du); };
    return (at(-2 * delta) - 8 * at(-delta) + 8 * at(delta) - at(2 * delta)) / (12 * delta);
}

Vec3 ComparisonDynamics::g(const Vec3& r, const Vec3& u, const Vec3& y) const
{
    const Eigen::LDLT<Mat3> a(c_.a(u));
    return a.solve(c_.mass(u) * y + V_.gradient(r) - eps_ * c_.b(u, y));
}

Mat3 ComparisonDynamics::fast_jacobian(const Vec3& r, const Vec3& u, const Vec3& y) const
{
    (void)r;
    const Eigen::LDLT<Mat3> a(c_.a(u));
    return a.solve(c_.mass(u) - eps_ * c_.b_jacobian(u, y)) / eps_;
}

double ComparisonDynamics::invariance_residual(const Vec3& r, const Vec3& u) const
{
    return (eps_ * chart_rate(r, u) - g(r, u, chart(r, u))).norm();
}

double ComparisonDynamics::lyapunov(const Vec3& r, const Vec3& u, const Vec3& y) const
{
    return charts_.energy(u) + V_.value(r) - eps_ * (c_.a(u) * y).dot(u);
}

double ComparisonDynamics::decay_rate(const Vec3& u, const Vec3& y) const
{
    const double g2 = 1.0 / (1.0 - u.squaredNorm());
    const double g6 = g2 * g2 * g2, g8 = g6 * g2;
    const double uy = u.dot(y);
    return -eps_ * c_.charge_squared() / (12 * kPi) * (6 * g8 * uy * uy + g6 * y.squaredNorm());
}

MacroTrajectory ComparisonDynamics::integrate_on_manifold(const Vec3& r0, const Vec3& u0, double t_final,
                                                          double step) const
{
    if (!(step > 0.0))
        throw std::invalid_argument("step must be positive");
    if (!(u0.norm() < c_.clamp_speed()))
        throw std::invalid_argument("initial speed must lie below the clamp speed");
    MacroTrajectory out;
    out.eps = eps_;
    auto record = [&](double t, const Vec3& r, const Vec3& u) {
        MacroSample s;
        s.t = t;
        s.r = r;
        s.u = u;
        s.y = chart(r, u);
        s.jerk = chart_rate(r, u);
        s.energy = lyapunov(r, u, s.y);
        s.rate = decay_rate(u, s.y);
        out.samples.push_back(s);
    };
    Vec3 r = r0, u = u0;
    record(0.0, r, u);
    const auto n = static_cast<long>(std::ceil(t_final / step - 1e-9));
    const double h = step;
    for (long i = 0; i < n; ++i) {
        const Vec3 k1r = u, k1u = chart(r, u);
        const Vec3 k2r = u + 0.5 * h * k1u, k2u = chart(r + 0.5 * h * k1r, k2r);
        const Vec3 k3r = u + 0.5 * h * k2u, k3u = chart(r + 0.5 * h * k2r, k3r);
        const Vec3 k4r = u + h * k3u, k4u = chart(r + h * k3r, k4r);
        r += h / 6 * (k1r + 2 * k2r + 2 * k3r + k4r);
        u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
        if (!(u.norm() < c_.clamp_speed())) {
            out.aborted = true;
            out.diagnostic = "speed reached the clamp speed at t = " + std::to_string((i + 1) * h);
            break;
        }
        record((i + 1) * h, r, u);
    }
    return out;
}

ThirdOrderResult ComparisonDynamics::integrate_third_order(const Vec3& r0, const Vec3& u0, const Vec3& y0,
                                                           double t_final, double step) const
{
    if (step == 0.0 || !(eps_ > 0.0))
        throw std::invalid_argument("third-order integration needs eps > 0 and a nonzero step");
    ThirdOrderResult res;
    auto& out = res.trajectory;
    out.eps = eps_;
    auto record = [&](double t, const Vec3& r, const Vec3& u, const Vec3& y) {
        MacroSample s;
        s.t = t;
        s.r = r;
        s.u = u;
        s.y = y;
        s.jerk = fast_rhs(r, u, y);
        s.energy = lyapunov(r, u, y);
        s.rate = decay_rate(u, y);
        s.distance = (y - chart(r, u)).norm();
        out.samples.push_back(s);
    };
    auto verdict = [&](const Vec3& u, const Vec3& y) {
        return !y.allFinite() || !u.allFinite() || y.norm() > 1e6 || !(u.norm() < 1.0);
    };
    Vec3 r = r0, u = u0, y = y0;
    record(0.0, r, u, y);
    const double h = step;
    const auto n = static_cast<long>(std::ceil(std::abs(t_final / step) - 1e-9));
    for (long i = 0; i < n; ++i) {
        const Vec3 k1r = u, k1u = y, k1y = fast_rhs(r, u, y);
        const Vec3 r2 = r + 0.5 * h * k1r, u2 = u + 0.5 * h * k1u, y2 = y + 0.5 * h * k1y;
        const Vec3 k2y = fast_rhs(r2, u2, y2);
        const Vec3 r3 = r + 0.5 * h * u2, u3 = u + 0.5 * h * y2, y3 = y + 0.5 * h * k2y;
        const Vec3 k3y = fast_rhs(r3, u3, y3);
        const Vec3 r4 = r + h * u3, u4 = u + h * y3, y4 = y + h * k3y;
        const Vec3 k4y = fast_rhs(r4, u4, y4);
        r += h / 6 * (k1r + 2 * u2 + 2 * u3 + u4);
        u += h / 6 * (k1u + 2 * y2 + 2 * y3 + y4);
        y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
        const double t = (i + 1) * h;
        if (verdict(u, y)) {
            res.runaway = true;
            res.divergence_time = t;
            break;
        }
        record(t, r, u, y);
        if (out.samples.back().distance > 1.0) {
            res.runaway = true;
            res.divergence_time = t;
            break;
        }
    }
    return res;
}

ShootingResult ComparisonDynamics::backward_shooting(const Vec3& r0, const Vec3& u0, double horizon_factor) const
{
    if (!(eps_ > 0.0))
        throw std::invalid_argument("backward shooting needs eps > 0");
    const Vec3 rates = c_.relaxation_spectrum(u0);
    ShootingResult out;
    double H = horizon_factor * eps_ / rates(0);
    for (int attempt = 0; attempt <= 5; ++attempt) {
        const double hb = std::min(0.05 * eps_ / rates(2), H / 400.0);
        const auto nsteps = static_cast<long>(std::ceil(H / hb));
        const double step = H / static_cast<double>(nsteps);
        // terminal guess from the chart flow
        auto fwd = integrate_on_manifold(r0, u0, H, step);
        bool failed = fwd.aborted;
        Vec3 rT = fwd.samples.back().r, uT = fwd.samples.back().u;
        Vec3 y_start = Vec3::Zero();
        for (int it = 0; it < 60 && !failed; ++it) {
            const auto back = integrate_third_order(rT, uT, chart(rT, uT), H, -step);
            if (back.runaway || back.trajectory.samples.size() != static_cast<std::size_t>(nsteps + 1)) {
                failed = true;
                break;
            }
            const auto& s = back.trajectory.samples.back();
            const Vec3 dr = r0 - s.r, du = u0 - s.u;
            y_start = s.y;
            out.iterations = it + 1;
            out.mismatch = std::sqrt(dr.squaredNorm() + du.squaredNorm());
            if (out.mismatch < 1e-14)
                break;
            rT += dr;
            uT += du;
            if (!(uT.norm() < c_.clamp_speed())) {
                failed = true;
                break;
            }
        }
        if (!failed) {
            out.y0 = y_start;
            out.horizon = H;
            out.retries = attempt;
            return out;
        }
        H *= 0.5;
    }
    throw NumericalError("backward shooting failed after 5 horizon reductions");
}

double fit_growth_rate(const MacroTrajectory& traj, double lo, double hi)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& s : traj.samples) {
        if (s.distance < lo || s.distance > hi)
            continue;
        const double x = s.t, y = std::log(s.distance);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3)
        throw NumericalError("too few samples in the growth-rate window");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace radreact
