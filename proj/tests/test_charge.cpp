#include "doctest.h"

#include "radreact/charge.hpp"
#include "radreact/common.hpp"
#include "radreact/quadrature.hpp"

#include <cmath>
#include <stdexcept>

using namespace radreact;

namespace {

ChargeModel gaussian(double sigma = 1.0, double e = 1.0)
{
    ChargeParams p;
    p.kind = ChargeKind::Gaussian;
    p.radius = sigma;
    p.total_charge = e;
    return ChargeModel(p);
}

const double kNorm = std::pow(2 * kPi, -1.5);

} // namespace

TEST_CASE("gaussian form factor matches its closed form")
{
    const auto c = gaussian();
    for (double k : {0.0, 1.0, 2.0})
        CHECK(c.form_factor(k) == doctest::Approx(kNorm * std::exp(-k * k / 2)).epsilon(1e-12));
}

TEST_CASE("zero frequency form factor is the total charge")
{
    ChargeParams p;
    p.total_charge = -2.5;
    CHECK(ChargeModel(p).form_factor(0.0) == doctest::Approx(kNorm * -2.5).epsilon(1e-13));
    CHECK(gaussian(0.7, 3.0).form_factor(0.0) == doctest::Approx(kNorm * 3.0).epsilon(1e-13));
}

TEST_CASE("bump form factor against a three dimensional cartesian quadrature")
{
    // spectrally accurate trapezoid sum over the cube enclosing the support,
    // with the wave vector off every axis
    const ChargeModel c(ChargeParams{});
    const int n = 96;
    const double h = 2.0 / n;
    const double k[3] = {1.0 / std::sqrt(3.0), -1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
    double sum = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                const double x = -1 + (i + 0.5) * h, y = -1 + (j + 0.5) * h, z = -1 + (l + 0.5) * h;
                const double r = std::sqrt(x * x + y * y + z * z);
                if (r < 1.0)
                    sum += c.density(r) * std::cos(k[0] * x + k[1] * y + k[2] * z);
            }
    const double cube = kNorm * sum * h * h * h;
    CHECK(std::abs(cube - c.form_factor(1.0)) < 1e-4 * std::abs(c.form_factor(1.0)));
}

TEST_CASE("density integrates to the total charge")
{
    ChargeParams p;
    p.radius = 0.6;
    p.total_charge = 1.7;
    const ChargeModel c(p);
    const double q = gauss_legendre(32).integrate([&](double r) { return 4 * kPi * r * r * c.density(r); }, 0, 0.6, 16);
    CHECK(q == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(c.density(0.6) == 0.0);
    CHECK(c.density(0.7) == 0.0);
}

TEST_CASE("field mass")
{
    SUBCASE("gaussian closed form")
    {
        CHECK(gaussian().field_mass() == doctest::Approx(1.0 / (12 * std::pow(kPi, 1.5))).epsilon(1e-12));
    }
    SUBCASE("quadratic in the charge")
    {
        ChargeParams p;
        const double m1 = ChargeModel(p).field_mass();
        p.total_charge = 2.0;
        CHECK(ChargeModel(p).field_mass() == doctest::Approx(4 * m1).epsilon(1e-13));
        p.total_charge = -0.3;
        CHECK(ChargeModel(p).field_mass() == doctest::Approx(0.09 * m1).epsilon(1e-13));
    }
    SUBCASE("bump value against an independent gauss-legendre spectral integral")
    {
        const ChargeModel c(ChargeParams{});
        const double kmax = c.k_max();
        const double ref = 4 * kPi / 3 *
                           gauss_legendre(16).integrate(
                               [&](double k) {
                                   const double f = c.form_factor(k);
                                   return f * f;
                               },
                               0.0, kmax, 200);
        CHECK(c.field_mass() == doctest::Approx(ref).epsilon(1e-6));
        // frozen reference for the unit bump
        CHECK(c.field_mass() == doctest::Approx(0.0428672601254239).epsilon(1e-10));
    }
    SUBCASE("scales inversely with the radius")
    {
        ChargeParams p;
        p.radius = 0.5;
        CHECK(ChargeModel(p).field_mass() == doctest::Approx(2 * ChargeModel(ChargeParams{}).field_mass()).epsilon(1e-9));
    }
}

TEST_CASE("spectral table decays before the cutoff")
{
    for (const auto& c : {ChargeModel(ChargeParams{}), gaussian()}) {
        const auto& ff = c.form_factor_table();
        double peak = 0;
        for (double f : ff)
            peak = std::max(peak, std::abs(f));
        CHECK(std::abs(ff.back()) < 1e-12 * peak);
        CHECK(c.spectral_tail() < 1e-12);
    }
}

TEST_CASE("inverse radial transform reconstructs the bump")
{
    const ChargeModel c(ChargeParams{});
    const auto& k = c.k_grid();
    const auto& ff = c.form_factor_table();
    const double dk = c.dk();
    const double peak = c.density(0.0);
    for (int i = 0; i < 10; ++i) {
        const double r = 0.05 + 0.1 * i;
        double s = 0;
        for (std::size_t j = 1; j < k.size(); ++j)
            s += (j + 1 == k.size() ? 0.5 : 1.0) * k[j] * ff[j] * std::sin(k[j] * r);
        const double rho = kNorm * 4 * kPi / r * s * dk;
        CHECK(std::abs(rho - c.density(r)) < 1e-6 * peak);
    }
}

TEST_CASE("outer flux")
{
    const ChargeModel c(ChargeParams{});
    for (double a : {0.0, 0.2, 0.5, 0.9}) {
        const double ref = gauss_legendre(32).integrate([&](double u) { return u * c.density(u); }, a, 1.0, 8);
        CHECK(c.outer_flux(a) == doctest::Approx(ref).epsilon(1e-10));
    }
    CHECK(c.outer_flux(1.2) == 0.0);
}

TEST_CASE("construction errors")
{
    ChargeParams p;
    p.radius = 0.0;
    CHECK_THROWS_AS(ChargeModel{p}, std::invalid_argument);
    p = ChargeParams{};
    p.total_charge = 0.0;
    CHECK_THROWS_AS(ChargeModel{p}, std::invalid_argument);
    p = ChargeParams{};
    p.spectral_resolution = 100;
    CHECK_THROWS_AS(ChargeModel{p}, std::invalid_argument);
    p = ChargeParams{};
    p.kind = ChargeKind::Gaussian;
    p.strict_compact = true;
    CHECK_THROWS_AS(ChargeModel{p}, std::invalid_argument);
    CHECK_THROWS_AS(parse_charge_kind("cube"), std::invalid_argument);
    CHECK(parse_charge_kind("gaussian") == ChargeKind::Gaussian);
    CHECK(to_string(ChargeKind::CompactBump) == "compact-bump");
}

TEST_CASE("gaussian support is truncated at eight sigma")
{
    const auto c = gaussian(0.5);
    CHECK(c.truncated());
    CHECK(c.support_radius() == doctest::Approx(4.0));
}

TEST_CASE("hash identifies the parameters")
{
    ChargeParams p;
    const auto h = ChargeModel(p).hash();
    CHECK(ChargeModel(p).hash() == h);
    p.radius = 1.1;
    CHECK(ChargeModel(p).hash() != h);
    CHECK(ChargeModel(ChargeParams{}).hash_hex().size() == 16);
}
