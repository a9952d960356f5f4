#include "doctest.h"

#include "radreact/charge.hpp"
#include "radreact/kinematics.hpp"
#include "radreact/potential.hpp"
#include "radreact/soliton.hpp"

#include <cmath>
#include <random>

using namespace radreact;

namespace {

const double kMe = ChargeModel(ChargeParams{}).field_mass();

Vec3 random_velocity(std::mt19937_64& rng, double smax)
{
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> u(0, 1);
    Vec3 v(n(rng), n(rng), n(rng));
    return v.normalized() * smax * std::cbrt(u(rng));
}

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("mass matrix")
{
    const CoefficientSet c(kMe, 1.0);
    CHECK(max_abs(c.bare_mass(Vec3::Zero()) - Mat3::Identity()) < 1e-15);
    CHECK(max_abs(c.dressing(Vec3::Zero()) - kMe * Mat3::Identity()) < 1e-15);
    CHECK(max_abs(c.mass(Vec3::Zero()) - (1 + kMe) * Mat3::Identity()) < 1e-15);

    const Vec3 v(0.6, 0, 0);
    const Mat3 m = c.mass(v);
    CHECK(max_abs(m - m.transpose()) < 1e-15);
    Eigen::SelfAdjointEigenSolver<Mat3> es(m);
    CHECK(es.eigenvalues().minCoeff() > 0.0);

    const Vec3 w(0, 0.3, -0.7);
    const double g = lorentz_gamma(v);
    CHECK((m * w - (g + 3 * kMe * bracket_phi(0.6)) * w).norm() < 1e-14);

    const Vec3 u(0.2, -0.5, 0.3), x(1.0, 2.0, -0.5);
    const double gu = lorentz_gamma(u);
    CHECK((c.bare_mass(u) * x - (gu * x + gu * gu * gu * u.dot(x) * u)).norm() < 1e-14);
}

TEST_CASE("bare mass is the chain rule of gamma v")
{
    const CoefficientSet c(kMe, 1.0);
    auto gv = [](const Vec3& v) { return Vec3(lorentz_gamma(v) * v); };
    const Vec3 v(0.3, 0.4, -0.2), vd(0.5, -1.0, 0.25);
    const double h = 1e-6;
    const Vec3 fd = (gv(v + h * vd) - gv(v - h * vd)) / (2 * h);
    CHECK((c.bare_mass(v) * vd - fd).norm() < 1e-8);
}

TEST_CASE("mass derivative against finite differences")
{
    const CoefficientSet c(kMe, 1.0);
    const Vec3 v(0.3, -0.4, 0.2), w(0.1, 0.7, -0.3);
    const double h = 1e-6;
    const Mat3 fd = (c.mass(v + h * w) - c.mass(v - h * w)) / (2 * h);
    CHECK(max_abs(c.mass_derivative(v, w) - fd) < 1e-7);
}

TEST_CASE("radiation coefficients")
{
    const double e2 = 1.7;
    const CoefficientSet c(kMe, e2);
    CHECK((c.a(Vec3::Zero()) * Vec3(1, 0, 0) - e2 / (12 * kPi) * Vec3(1, 0, 0)).norm() < 1e-15);
    CHECK(c.b(Vec3::Zero(), Vec3(0.3, -2, 1)).norm() == 0.0);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const Vec3 v = random_velocity(rng, 0.9), y = random_velocity(rng, 3.0), z = random_velocity(rng, 3.0);
        const double g = lorentz_gamma(v), g2 = g * g, g4 = g2 * g2, g6 = g4 * g2, g8 = g6 * g2;
        const Vec3 a_ref = e2 / (12 * kPi) * (g4 * z + 4 * g6 * v.dot(z) * v);
        CHECK((c.a(v) * z - a_ref).norm() < 1e-12 * a_ref.norm());
        const double vy = v.dot(y);
        const Vec3 b_ref = e2 / (4 * kPi) * (2 * g6 * vy * y + g6 * y.squaredNorm() * v + 6 * g8 * vy * vy * v);
        CHECK((c.b(v, y) - b_ref).norm() < 1e-12 * b_ref.norm());
    }
}

TEST_CASE("a is the hessian of gamma squared")
{
    const double e2 = 1.0;
    const CoefficientSet c(kMe, e2);
    const Vec3 v(0.3, 0, 0), z(0.4, -0.9, 0.2);
    auto g2 = [](const Vec3& u) { return 1.0 / (1.0 - u.squaredNorm()); };
    const double h = 1e-4;
    Vec3 hz = Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
        Vec3 ei = Vec3::Zero();
        ei(i) = h;
        // (z . grad) d_i gamma^2 by nested central differences
        const double dp = (g2(v + ei + h * z) - g2(v - ei + h * z)) / (2 * h);
        const double dm = (g2(v + ei - h * z) - g2(v - ei - h * z)) / (2 * h);
        hz(i) = (dp - dm) / (2 * h);
    }
    CHECK((c.a(v) * z - e2 / (24 * kPi) * hz).norm() < 1e-6);
}

TEST_CASE("b jacobian against finite differences")
{
    const CoefficientSet c(kMe, 1.0);
    const Vec3 v(0.5, 0.2, -0.1), y(1.0, -0.3, 0.8);
    const double h = 1e-6;
    Mat3 fd;
    for (int j = 0; j < 3; ++j) {
        Vec3 d = Vec3::Zero();
        d(j) = h;
        fd.col(j) = (c.b(v, y + d) - c.b(v, y - d)) / (2 * h);
    }
    CHECK(max_abs(c.b_jacobian(v, y) - fd) < 1e-7);
}

TEST_CASE("hyperbolicity rate")
{
    const CoefficientSet c(kMe, 1.0);
    CHECK(c.hyperbolicity_rate(Vec3::Zero()) == doctest::Approx(12 * kPi * (1 + kMe)).epsilon(1e-12));
    const double l1 = c.hyperbolicity_rate(Vec3(0.8, 0, 0));
    CHECK(l1 >= 3 * kPi * std::pow(1 - 0.64, 1.5));
    CHECK(c.hyperbolicity_rate(Vec3(0, 0.8, 0)) == doctest::Approx(l1).epsilon(1e-12));
    const CoefficientSet c2(kMe, 4.0);
    CHECK(c2.hyperbolicity_rate(Vec3::Zero()) == doctest::Approx(3 * kPi * (1 + kMe)).epsilon(1e-12));
}

TEST_CASE("relaxation spectrum is real and positive")
{
    const CoefficientSet c(kMe, 1.0, 0.05);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const Vec3 v = random_velocity(rng, 0.95);
        const Vec3 s = c.relaxation_spectrum(v);
        CHECK(s(0) > 0.0);
        CHECK(s(0) <= s(1));
        CHECK(s(1) <= s(2));
        const double g = lorentz_gamma(c.clamp(v));
        CHECK(s(0) >= 3 * kPi / (g * g * g));
        // a^{-1} m has eigenvector v with the smallest or largest of its eigenvalues
        const Mat3 A = c.a(v).inverse() * c.mass(v);
        Eigen::EigenSolver<Mat3> es(A);
        CHECK(es.eigenvalues().imag().cwiseAbs().maxCoeff() < 1e-9 * s(2));
    }
}

TEST_CASE("clamp")
{
    const CoefficientSet c(kMe, 1.0, 0.1, 1e-3);
    const double sc = c.clamp_speed();
    CHECK(sc == doctest::Approx(0.9));
    CHECK(c.clamped_speed(0.5) == 0.5);
    CHECK(c.clamped_speed(0.95) == doctest::Approx(sc - 0.5e-3).epsilon(1e-14));
    CHECK(c.clamped_speed(0.99) == c.clamped_speed(0.95));
    // continuity on a ring of directions across the clamp speed and the blend start
    std::mt19937_64 rng(5);
    double jump = 0;
    for (int i = 0; i < 50; ++i) {
        const Vec3 d = random_velocity(rng, 1.0).normalized();
        for (double s0 : {sc, sc - 1e-3}) {
            const Vec3 lo = (s0 - 1e-13) * d, hi = (s0 + 1e-13) * d;
            jump = std::max(jump, max_abs(c.mass(lo) - c.mass(hi)) / max_abs(c.mass(hi)));
            jump = std::max(jump, max_abs(c.a(lo) - c.a(hi)) / max_abs(c.a(hi)));
            jump = std::max(jump, (c.b(lo, d) - c.b(hi, d)).norm() / c.b(hi, d).norm());
        }
        // constant along rays beyond the clamp speed
        CHECK(max_abs(c.mass(0.92 * d) - c.mass(0.99 * d)) < 1e-13);
    }
    CHECK(jump < 1e-10);
    // jacobian of the clamp map
    const Vec3 v = 0.8995 * Vec3(0.6, 0.8, 0), w(0.3, -0.2, 0.5);
    const double h = 1e-8;
    const Vec3 fd = (c.clamp(v + h * w) - c.clamp(v - h * w)) / (2 * h);
    CHECK((c.clamp_jacobian(v) * w - fd).norm() < 1e-6);
}

TEST_CASE("clamp margin")
{
    CHECK(clamp_margin(0.8, 0.7) == doctest::Approx(0.1));
    CHECK(clamp_margin(0.6, 0.7) == doctest::Approx(0.15));
}

TEST_CASE("potentials are consistent with their derivatives")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (auto kind : {PotentialKind::Zero, PotentialKind::Harmonic, PotentialKind::GaussianWell,
                      PotentialKind::DoubleWell, PotentialKind::ConfiningQuartic}) {
        PotentialParams p;
        p.kind = kind;
        p.stiffness = 1.3;
        p.depth = 0.8;
        p.width = 0.9;
        p.center = Vec3(0.1, -0.2, 0.3);
        const PotentialModel V(p);
        for (int i = 0; i < 20; ++i) {
            const Vec3 q(u(rng), u(rng), u(rng));
            const double h = 1e-5;
            Vec3 g;
            Mat3 H;
            Tensor3 T;
            for (int j = 0; j < 3; ++j) {
                Vec3 d = Vec3::Zero();
                d(j) = h;
                g(j) = (V.value(q + d) - V.value(q - d)) / (2 * h);
                H.col(j) = (V.gradient(q + d) - V.gradient(q - d)) / (2 * h);
                T[j] = (V.hessian(q + d) - V.hessian(q - d)) / (2 * h);
            }
            const double scale = std::max(1.0, V.gradient(q).norm());
            CHECK((V.gradient(q) - g).norm() < 1e-6 * scale);
            CHECK(max_abs(V.hessian(q) - H) < 1e-6 * std::max(1.0, max_abs(H)));
            const auto Tv = V.third(q);
            for (int j = 0; j < 3; ++j)
                CHECK(max_abs(Tv[j] - T[j]) < 1e-6 * std::max(1.0, max_abs(T[j])));
        }
    }
}

TEST_CASE("potential catalogue properties")
{
    PotentialParams p;
    p.kind = PotentialKind::GaussianWell;
    p.depth = 2.0;
    const PotentialModel well(p);
    CHECK(well.bounded());
    CHECK_FALSE(well.confining());
    CHECK(well.infimum() == doctest::Approx(-2.0));
    CHECK(well.value(p.center) == doctest::Approx(-2.0));

    p.kind = PotentialKind::ConfiningQuartic;
    const PotentialModel quartic(p);
    CHECK(quartic.confining());
    CHECK_FALSE(quartic.bounded());
    CHECK(quartic.infimum() == 0.0);
    const double R = quartic.level_set_radius(0.7);
    CHECK(quartic.value(Vec3(R, 0, 0)) == doctest::Approx(0.7));

    p.kind = PotentialKind::Harmonic;
    const PotentialModel h(p);
    const PotentialModel ht = h.translated(Vec3(1, 2, 3));
    CHECK(ht.value(Vec3(1.5, 2, 3)) == doctest::Approx(h.value(Vec3(0.5, 0, 0))));
    CHECK(parse_potential_kind("double-well") == PotentialKind::DoubleWell);
    CHECK_THROWS_AS(parse_potential_kind("coulomb"), std::invalid_argument);
}
