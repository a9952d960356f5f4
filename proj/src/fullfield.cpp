#include "radreact/fullfield.hpp"

#include "radreact/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace radreact {

TrajectoryHistory::TrajectoryHistory(const Vec3& q0, const Vec3& v0, double memory)
    : memory_(memory), q0_(q0), v0_(v0)
{
    if (!(memory > 0.0))
        throw std::invalid_argument("memory time must be positive");
}

void TrajectoryHistory::push(const HistorySample& s)
{
    if (!buf_.empty() && !(s.t > buf_.back().t))
        throw std::invalid_argument("history samples must be pushed in increasing time");
    buf_.push_back(s);
    // keep one sample older than the memory window
    while (buf_.size() > 2 && buf_[1].t < s.t - memory_)
        buf_.pop_front();
}

void TrajectoryHistory::replace_latest(const HistorySample& s)
{
    if (buf_.empty() || buf_.back().t != s.t)
        throw std::invalid_argument("replace_latest needs a sample at the same time");
    buf_.back() = s;
}

std::size_t TrajectoryHistory::locate(double s) const
{
    if (buf_.size() < 2 || s > buf_.back().t || s < buf_.front().t)
        throw NumericalError("self-force quadrature reached outside the stored history");
    auto it = std::upper_bound(buf_.begin(), buf_.end(), s,
                               [](double x, const HistorySample& h) { return x < h.t; });
    std::size_t i = static_cast<std::size_t>(it - buf_.begin());
    return std::min(i == 0 ? 0 : i - 1, buf_.size() - 2);
}

Vec3 TrajectoryHistory::position(double s) const
{
    if (s <= 0.0)
        return q0_ + s * v0_;
    if (buf_.size() == 1 && s == buf_.front().t)
        return buf_.front().q;
    const auto i = locate(s);
    const auto& a = buf_[i];
    const auto& b = buf_[i + 1];
    return quintic_hermite(a.t, b.t, a.q, b.q, a.v, b.v, a.a, b.a, s);
}

Vec3 TrajectoryHistory::velocity(double s) const
{
    if (s <= 0.0)
        return v0_;
    const auto i = locate(s);
    const auto& a = buf_[i];
    const auto& b = buf_[i + 1];
    return cubic_hermite(a.t, b.t, a.v, b.v, a.a, b.a, s);
}

Vec3 StageTail::position(double s) const { return cubic_hermite(t0, t1, q0, q1, v0, v1, s); }

Vec3 self_force(const MemoryKernel& kernel, const TrajectoryHistory& history, double t, const Vec3& q_t,
                const SelfForceQuadrature& quad, const StageTail* tail)
{
    const double lower = t - kernel.memory_time();
    const double latest = history.empty() ? 0.0 : history.latest_time();
    if (t > latest && (!tail || std::abs(tail->t1 - t) > 1e-12 * std::max(1.0, t)))
        throw NumericalError("self-force requested ahead of the history without a stage path");

    std::vector<double> cuts{lower, t};
    if (0.0 > lower && 0.0 < t)
        cuts.push_back(0.0);
    if (latest > lower && latest < t && latest > 0.0)
        cuts.push_back(latest);
    std::sort(cuts.begin(), cuts.end());

    const auto& gl = gauss_legendre(quad.nodes);
    const double panel = quad.panel * 0.5 * kernel.support_width();
    const double width = kernel.support_width();
    Vec3 F = Vec3::Zero();
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double a = cuts[c], b = cuts[c + 1];
        if (b - a <= 0.0)
            continue;
        const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel - 1e-9)));
        const double dx = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double pa = a + p * dx;
            const double mid = pa + 0.5 * dx, half = 0.5 * dx;
            for (int i = 0; i < gl.size(); ++i) {
                const double s = mid + half * gl.nodes()[i];
                const double tau = t - s;
                const Vec3 qs = (s > latest && tail) ? tail->position(s) : history.position(s);
                const Vec3 d = q_t - qs;
                const double dn = d.norm();
                if (tau - dn >= width)
                    continue;
                if (dn > tau * (1.0 + 1e-12) + 1e-14)
                    throw NumericalError("superluminal displacement in the history");
                F -= (gl.weights()[i] * half * kernel.reduced(tau, dn)) * d;
            }
        }
    }
    return F;
}

std::size_t FullTrajectory::locate(double t) const
{
    const double slack = 1e-9 * step;
    if (samples.size() < 2 || t < samples.front().t - slack || t > samples.back().t + slack)
        throw std::out_of_range("time outside the full trajectory");
    if (t < samples.front().t)
        return 0;
    auto i = static_cast<std::size_t>((t - samples.front().t) / step);
    return std::min(i, samples.size() - 2);
}

Vec3 FullTrajectory::position(double t) const
{
    const auto i = locate(t);
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    return quintic_hermite(a.t, b.t, a.q, b.q, a.v, b.v, a.a, b.a, t);
}

Vec3 FullTrajectory::velocity(double t) const
{
    const auto i = locate(t);
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    return cubic_hermite(a.t, b.t, a.v, b.v, a.a, b.a, t);
}

namespace {

Vec3 speed_of(const Vec3& p) { return p / std::sqrt(1.0 + p.squaredNorm()); }

// dv/dt from dp/dt
Vec3 acceleration_of(const Vec3& v, const Vec3& pdot)
{
    const double g = lorentz_gamma(v);
    return (pdot - v * v.dot(pdot)) / g;
}

} // namespace

FullTrajectory integrate_full(const Vec3& q0_macro, const Vec3& v0, double eps, const MemoryKernel& kernel,
                              const PotentialModel& potential, double t_final_macro, const FullOptions& opt)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("eps must be positive");
    if (!(opt.step > 0.0))
        throw std::invalid_argument("step must be positive");
    if (!(v0.norm() <= kernel.velocity_bound()))
        throw std::invalid_argument("initial speed exceeds the velocity bound");

    FullTrajectory out;
    out.eps = eps;
    out.step = opt.step;
    out.memory_time = kernel.memory_time();

    const double h = opt.step;
    const double T = t_final_macro / eps;
    const auto nsteps = static_cast<long>(std::ceil(T / h - 1e-9));
    const Vec3 q0 = q0_macro / eps;
    TrajectoryHistory hist(q0, v0, kernel.memory_time() + 4 * h);

    auto external = [&](const Vec3& q) -> Vec3 { return -eps * potential.gradient(eps * q); };

    Vec3 q = q0;
    Vec3 p = lorentz_gamma(v0) * v0;
    // on the soliton the self-force vanishes at t = 0
    Vec3 F = self_force(kernel, hist, 0.0, q, opt.quad);
    Vec3 v = v0;
    Vec3 a = acceleration_of(v, external(q) + F);
    hist.push({0.0, q, v, a});
    out.samples.push_back({0.0, q, v, a, F});

    for (long n = 0; n < nsteps; ++n) {
        const double t = n * h;
        const Vec3 k1q = v, k1p = external(q) + F;

        auto stage = [&](double c, const Vec3& dq, const Vec3& dp, Vec3& kq, Vec3& kp) {
            const Vec3 qs = q + dq, ps = p + dp;
            const Vec3 vs = speed_of(ps);
            const StageTail tail{t, t + c * h, q, qs, v, vs};
            kq = vs;
            kp = external(qs) + self_force(kernel, hist, t + c * h, qs, opt.quad, &tail);
        };
        Vec3 k2q, k2p, k3q, k3p, k4q, k4p;
        stage(0.5, 0.5 * h * k1q, 0.5 * h * k1p, k2q, k2p);
        stage(0.5, 0.5 * h * k2q, 0.5 * h * k2p, k3q, k3p);
        stage(1.0, h * k3q, h * k3p, k4q, k4p);

        const Vec3 qn = q + h / 6 * (k1q + 2 * k2q + 2 * k3q + k4q);
        const Vec3 pn = p + h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
        const Vec3 vn = speed_of(pn);
        const double tn = (n + 1) * h;
        if (!(vn.norm() <= kernel.velocity_bound())) {
            out.aborted = true;
            out.diagnostic = "speed " + std::to_string(vn.norm()) + " exceeded the velocity bound at t = " +
                             std::to_string(tn * eps);
            break;
        }
        // provisional force through a cubic stage path, then refined once the
        // new sample (with its acceleration) is part of the history
        const StageTail tail{t, tn, q, qn, v, vn};
        Vec3 Fn = self_force(kernel, hist, tn, qn, opt.quad, &tail);
        Vec3 an = acceleration_of(vn, external(qn) + Fn);
        hist.push({tn, qn, vn, an});
        Fn = self_force(kernel, hist, tn, qn, opt.quad);
        an = acceleration_of(vn, external(qn) + Fn);
        hist.replace_latest({tn, qn, vn, an});

        q = qn;
        p = pn;
        v = vn;
        F = Fn;
        a = an;
        out.samples.push_back({tn, q, v, a, F});
    }
    return out;
}

namespace {

void check_stencil(const FullTrajectory& traj, std::size_t index, int stride)
{
    if (stride < 1)
        throw std::invalid_argument("stride must be positive");
    const auto s = static_cast<std::size_t>(stride);
    if (index < 2 * s || index + 2 * s >= traj.samples.size())
        throw std::out_of_range("finite-difference stencil leaves the trajectory");
}

} // namespace

Vec3 taylor_residual(const FullTrajectory& traj, const CoefficientSet& coeff, std::size_t index, int stride)
{
    check_stencil(traj, index, stride);
    const auto& S = traj.samples;
    const double t = S[index].t;
    if (t < traj.memory_time)
        throw std::out_of_range("Taylor residual is defined only after the memory time");
    const auto s = static_cast<std::size_t>(stride);
    const double H = stride * traj.step;
    const Vec3 jerk = (S[index - 2 * s].a - 8 * S[index - s].a + 8 * S[index + s].a - S[index + 2 * s].a) / (12 * H);
    const Vec3& v = S[index].v;
    const Vec3& a = S[index].a;
    return S[index].force + coeff.dressing(v) * a - coeff.a(v) * jerk - coeff.b(v, a);
}

Vec3 acceleration_derivatives(const FullTrajectory& traj, std::size_t index, int stride)
{
    check_stencil(traj, index, stride);
    const auto& S = traj.samples;
    const auto s = static_cast<std::size_t>(stride);
    const double H = stride * traj.step;
    const Vec3 &am2 = S[index - 2 * s].a, &am1 = S[index - s].a, &a0 = S[index].a, &ap1 = S[index + s].a,
               &ap2 = S[index + 2 * s].a;
    const Vec3 d1 = (am2 - 8 * am1 + 8 * ap1 - ap2) / (12 * H);
    const Vec3 d2 = (-am2 + 16 * am1 - 30 * a0 + 16 * ap1 - ap2) / (12 * H * H);
    return Vec3(a0.norm(), d1.norm(), d2.norm());
}

double kernel_time_integral(const ChargeModel& charge, const Vec3& vel)
{
    const double v = vel.norm();
    if (!(v < 1.0))
        throw std::domain_error("speed must be below 1");
    const double width = 2.0 * charge.support_radius();
    // the integrand vanishes once t (1 - v) exceeds the support of the
    // autocorrelation; for the gaussian that cut is where the tails are negligible
    const double T = width / (1.0 - v);
    const double X = T * (1.0 + v);
    const double kmax = charge.k_max();
    const double dk_max = 2.0 * kPi / (X + 2.0 * width);
    const auto nk = static_cast<int>(std::ceil(kmax / dk_max)) + 1;
    const double dk = kmax / (nk - 1);
    std::vector<double> k(nk), w(nk);
    for (int i = 0; i < nk; ++i) {
        k[i] = i * dk;
        const double f = charge.form_factor(k[i]);
        w[i] = (i == 0 || i == nk - 1 ? 0.5 : 1.0) * dk * f * f;
    }
    auto inner = [&](double t) {
        double s = 0.0;
        if (v == 0.0) {
            for (int i = 0; i < nk; ++i)
                s += w[i] * k[i] * std::sin(k[i] * t);
            return 4.0 * kPi * s;
        }
        for (int i = 0; i < nk; ++i)
            s += w[i] * std::sin(k[i] * t) * std::sin(k[i] * v * t);
        return 4.0 * kPi * s / (v * t);
    };
    const auto& gl = gauss_legendre(16);
    const int panels = static_cast<int>(std::ceil(T / (0.05 * width)));
    const double total = gl.integrate([&](double t) { return t * inner(t); }, 0.0, T, panels);
    const double edge = std::abs(T * inner(T));
    if (edge > 1e-9 * std::abs(total))
        throw NumericalError("kernel time integral tail has not converged at the cutoff");
    return total;
}

} // namespace radreact
