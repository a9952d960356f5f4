#include "doctest.h"

#include "radreact/charge.hpp"
#include "radreact/effective.hpp"

#include <cmath>

using namespace radreact;

namespace {

const double kMe = ChargeModel(ChargeParams{}).field_mass();

PotentialModel harmonic(double k = 1.0)
{
    PotentialParams p;
    p.kind = PotentialKind::Harmonic;
    p.stiffness = k;
    return PotentialModel(p);
}

} // namespace

TEST_CASE("free motion is a straight line")
{
    const CoefficientSet c(kMe, 1.0);
    const PotentialModel zero;
    CHECK(effective_acceleration(c, zero, Vec3(1, 2, 3), Vec3(0.5, 0, 0)).norm() == 0.0);
    const auto t = integrate_effective(Vec3(1, -1, 0.5), Vec3(0.5, 0, 0), c, zero, 10.0, 1e-2);
    CHECK((t.samples.back().r - Vec3(6, -1, 0.5)).norm() < 1e-12);
    CHECK(t.samples.back().t == doctest::Approx(10.0));
}

TEST_CASE("slow harmonic orbit oscillates with the dressed frequency")
{
    const CoefficientSet c(kMe, 1.0);
    const auto V = harmonic();
    const double omega = std::sqrt(1.0 / (1 + kMe));
    const double T = 2 * kPi / omega;
    const auto t = integrate_effective(Vec3(0.01, 0, 0), Vec3::Zero(), c, V, 5.2 * T, 1e-3);
    // downward zero crossings of r_x, located by the dense output
    std::vector<double> crossings;
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
        const auto &a = t.samples[i - 1], &b = t.samples[i];
        if (a.r(0) > 0 && b.r(0) <= 0) {
            double lo = a.t, hi = b.t;
            for (int k = 0; k < 60; ++k) {
                const double m = 0.5 * (lo + hi);
                (t.position(m)(0) > 0 ? lo : hi) = m;
            }
            crossings.push_back(lo);
        }
    }
    REQUIRE(crossings.size() == 5);
    const double period = (crossings.back() - crossings.front()) / 4;
    CHECK(period == doctest::Approx(T).epsilon(1e-3));
}

TEST_CASE("force perpendicular to the velocity sees the transverse mass")
{
    const CoefficientSet c(kMe, 1.0);
    const auto V = harmonic();
    const Vec3 r(0, 2, 0), u(0.6, 0, 0);
    const double g = lorentz_gamma(u);
    const Vec3 acc = effective_acceleration(c, V, r, u);
    CHECK((acc + V.gradient(r) / (g + 3 * kMe * bracket_phi(0.6))).norm() < 1e-14);
}

TEST_CASE("jerk is the derivative of the acceleration along the flow")
{
    const CoefficientSet c(kMe, 1.0);
    const auto V = harmonic(2.0);
    const Vec3 r(0.3, -0.5, 0.2), u(0.2, 0.4, -0.1);
    const double h = 1e-6;
    const Vec3 a = effective_acceleration(c, V, r, u);
    const Vec3 fd = (effective_acceleration(c, V, r + h * u, u + h * a) -
                     effective_acceleration(c, V, r - h * u, u - h * a)) /
                    (2 * h);
    CHECK((effective_jerk(c, V, r, u) - fd).norm() < 1e-7);
}

TEST_CASE("energy is conserved")
{
    const CoefficientSet c(kMe, 1.0);
    const auto V = harmonic();
    const auto t = integrate_effective(Vec3(1, 0, 0), Vec3(0, 0.3, 0), c, V, 10.0, 1e-3);
    const double H0 = t.samples.front().energy;
    double drift = 0;
    for (const auto& s : t.samples)
        drift = std::max(drift, std::abs(s.energy - H0));
    CHECK(drift / std::abs(H0) < 1e-8);
}

TEST_CASE("fourth order self convergence")
{
    const CoefficientSet c(kMe, 1.0);
    const auto V = harmonic();
    const Vec3 r0(1, 0, 0), u0(0, 0.3, 0.1);
    const double h = 0.04;
    const Vec3 ref = integrate_effective(r0, u0, c, V, 4.0, h / 8).samples.back().r;
    const double e1 = (integrate_effective(r0, u0, c, V, 4.0, h).samples.back().r - ref).norm();
    const double e2 = (integrate_effective(r0, u0, c, V, 4.0, h / 2).samples.back().r - ref).norm();
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("time reversal")
{
    const CoefficientSet c(kMe, 1.0);
    const auto V = harmonic();
    const Vec3 r0(1, 0, 0), u0(0, 0.3, 0.1);
    const auto fwd = integrate_effective(r0, u0, c, V, 5.0, 1e-2);
    const auto& e = fwd.samples.back();
    const auto back = integrate_effective(e.r, -e.u, c, V, 5.0, 1e-2);
    double drift = 0;
    for (const auto& s : fwd.samples)
        drift = std::max(drift, std::abs(s.energy - fwd.samples.front().energy));
    // the forward error budget: distance to a much finer run
    const double budget = (integrate_effective(r0, u0, c, V, 5.0, 1e-3).samples.back().r - e.r).norm();
    CHECK((back.samples.back().r - r0).norm() < 10 * std::max(budget, drift));
    CHECK((back.samples.back().u + u0).norm() < 10 * std::max(budget, drift));
}

TEST_CASE("confining motion stays in the energy level set")
{
    const CoefficientSet c(kMe, 1.0);
    PotentialParams p;
    p.kind = PotentialKind::ConfiningQuartic;
    const PotentialModel V(p);
    const Vec3 r0(0.5, 0.5, 0), u0(0.2, -0.4, 0.3);
    const SolitonCharts charts(kMe);
    const double R = V.level_set_radius(charts.energy(u0) + V.value(r0) + 3 * kMe);
    const auto t = integrate_effective(r0, u0, c, V, 30.0, 2e-3);
    CHECK_FALSE(t.aborted);
    double rmax = 0;
    for (const auto& s : t.samples)
        rmax = std::max(rmax, s.r.norm());
    CHECK(rmax <= R);
}

TEST_CASE("dense output")
{
    const CoefficientSet c(kMe, 1.0);
    const auto V = harmonic();
    const auto coarse = integrate_effective(Vec3(1, 0, 0), Vec3(0, 0.3, 0), c, V, 2.0, 0.02);
    const auto fine = integrate_effective(Vec3(1, 0, 0), Vec3(0, 0.3, 0), c, V, 2.0, 0.001);
    for (double t : {0.013, 0.5071, 1.2345, 1.999}) {
        CHECK((coarse.position(t) - fine.position(t)).norm() < 1e-8);
        CHECK((coarse.velocity(t) - fine.velocity(t)).norm() < 1e-7);
    }
    // before the start the motion continues as a straight line
    CHECK((coarse.position(-0.5) - Vec3(1, -0.15, 0)).norm() < 1e-15);
}

TEST_CASE("invalid input")
{
    const CoefficientSet c(kMe, 1.0, 0.1);
    const auto V = harmonic();
    CHECK_THROWS_AS(integrate_effective(Vec3::Zero(), Vec3(0.95, 0, 0), c, V, 1.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(integrate_effective(Vec3::Zero(), Vec3::Zero(), c, V, 1.0, 0.0), std::invalid_argument);
}
