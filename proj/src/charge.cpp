#include "radreact/charge.hpp"

#include "radreact/common.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace radreact {

namespace {

constexpr int kRadialNodes = 2048;
constexpr double kTailRatio = 1e-12;
constexpr double kGaussianCut = 8.0;

} // namespace

ChargeKind parse_charge_kind(const std::string& name)
{
    if (name == "compact-bump")
        return ChargeKind::CompactBump;
    if (name == "gaussian")
        return ChargeKind::Gaussian;
    throw std::invalid_argument("unknown charge kind '" + name + "'");
}

std::string to_string(ChargeKind kind)
{
    return kind == ChargeKind::CompactBump ? "compact-bump" : "gaussian";
}

// Unnormalized profile b(r) with p = b'/b and dp = p'.
double ChargeModel::raw_profile(double r, double& p, double& dp) const
{
    const double R = p_.radius;
    if (p_.kind == ChargeKind::Gaussian) {
        const double s2 = R * R;
        p = -r / s2;
        dp = -1.0 / s2;
        if (std::abs(r) >= support_)
            return 0.0;
        return std::exp(-0.5 * r * r / s2);
    }
    const double w = R * R - r * r;
    if (w <= 0.0) {
        p = dp = 0.0;
        return 0.0;
    }
    const double b = std::exp(-R * R / w);
    if (b == 0.0) {
        p = dp = 0.0;
        return 0.0;
    }
    p = -2.0 * R * R * r / (w * w);
    dp = -2.0 * R * R * (1.0 / (w * w) + 4.0 * r * r / (w * w * w));
    return b;
}

ChargeModel::ChargeModel(const ChargeParams& p) : p_(p)
{
    if (!(p.radius > 0.0) || !std::isfinite(p.radius))
        throw std::invalid_argument("charge radius must be positive");
    if (p.total_charge == 0.0 || !std::isfinite(p.total_charge))
        throw std::invalid_argument("total charge must be nonzero");
    if (p.spectral_resolution < 256)
        throw std::invalid_argument("spectral_resolution must be at least 256");
    if (p.kind == ChargeKind::Gaussian && p.strict_compact)
        throw std::invalid_argument("gaussian charge has no compact support");

    support_ = p.kind == ChargeKind::Gaussian ? kGaussianCut * p.radius : p.radius;

    // r^2 rho and r rho sin(kr) are even in r, so the trapezoid rule on
    // [0, support] converges faster than any power
    const double dr = support_ / kRadialNodes;
    rnodes_.resize(kRadialNodes + 1);
    rweights_.resize(kRadialNodes + 1);
    double q = 0.0;
    for (int i = 0; i <= kRadialNodes; ++i) {
        rnodes_[i] = i * dr;
        rweights_[i] = (i == 0 || i == kRadialNodes) ? 0.5 * dr : dr;
        double a, b;
        q += rweights_[i] * rnodes_[i] * rnodes_[i] * raw_profile(rnodes_[i], a, b);
    }
    norm_ = p.total_charge / (4.0 * kPi * q);

    double l2 = 0.0;
    for (int i = 0; i <= kRadialNodes; ++i) {
        const double rho = density(rnodes_[i]);
        l2 += rweights_[i] * rnodes_[i] * rnodes_[i] * rho * rho;
    }
    l2_ = std::sqrt(4.0 * kPi * l2);

    // spectral cutoff: scan until a long run stays below the tail ratio
    const double peak = std::abs(form_factor(0.0));
    const double scan = 0.25 / support_;
    double last_big = 0.0;
    int quiet = 0;
    for (int j = 1; quiet < 400; ++j) {
        const double k = j * scan;
        if (std::abs(form_factor(k)) >= kTailRatio * peak) {
            last_big = k;
            quiet = 0;
        } else {
            ++quiet;
        }
        if (k > 1e4 / support_)
            throw NumericalError("form factor does not decay; cannot choose k_max");
    }
    const double kmax = last_big + 2.0 * scan;

    const int n = p.spectral_resolution;
    // trapezoid on the k grid is exact up to aliasing of a profile supported on
    // [-2 support, 2 support]; insist on a grid fine enough for that
    const double dk = kmax / (n - 1);
    if (2.0 * kPi / dk < 4.2 * support_)
        throw std::invalid_argument("spectral_resolution too small for this charge; need at least " +
                                    std::to_string(static_cast<int>(kmax * 4.2 * support_ / (2 * kPi)) + 2));
    k_.resize(n);
    ff_.resize(n);
    for (int i = 0; i < n; ++i) {
        k_[i] = i * dk;
        ff_[i] = form_factor(k_[i]);
    }

    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += (i == 0 || i == n - 1 ? 0.5 : 1.0) * ff_[i] * ff_[i];
    s *= dk;
    field_mass_ = 4.0 * kPi / 3.0 * s;
    tail_ = ff_[n - 1] * ff_[n - 1] * dk / s;
    if (!(field_mass_ > 0.0) || tail_ > kTailRatio)
        throw NumericalError("field mass spectral tail not converged");

    // outer flux table on [0, support]
    const int cells = 512;
    const double h = support_ / cells;
    std::vector<double> f(cells + 1), d1(cells + 1), d2(cells + 1);
    const auto& gl = gauss_legendre(12);
    f[cells] = 0.0;
    for (int i = cells - 1; i >= 0; --i)
        f[i] = f[i + 1] + gl.integrate([&](double u) { return u * density(u); }, i * h, (i + 1) * h);
    for (int i = 0; i <= cells; ++i) {
        const double a = i * h;
        d1[i] = -a * density(a);
        d2[i] = -density(a) - a * density_derivative(a);
    }
    flux_ = QuinticTable(h, f, d1, d2, 0.0);
}

double ChargeModel::density(double r) const
{
    double a, b;
    return norm_ * raw_profile(std::abs(r), a, b);
}

double ChargeModel::density_derivative(double r) const
{
    double pp, dp;
    const double b = raw_profile(r, pp, dp);
    return norm_ * b * pp;
}

double ChargeModel::moment(double r, int order) const
{
    double pp, dp;
    const double b = norm_ * raw_profile(r, pp, dp);
    if (b == 0.0)
        return 0.0;
    switch (order) {
    case 0:
        return r * b;
    case 1:
        return b * (1.0 + r * pp);
    case 2:
        return b * (2.0 * pp + r * (dp + pp * pp));
    default:
        throw std::invalid_argument("moment order must be 0, 1 or 2");
    }
}

double ChargeModel::form_factor(double k) const
{
    const double pre = std::pow(2.0 * kPi, -1.5);
    double s = 0.0;
    if (k == 0.0) {
        for (std::size_t i = 0; i < rnodes_.size(); ++i)
            s += rweights_[i] * rnodes_[i] * rnodes_[i] * density(rnodes_[i]);
        return pre * 4.0 * kPi * s;
    }
    for (std::size_t i = 0; i < rnodes_.size(); ++i)
        s += rweights_[i] * rnodes_[i] * density(rnodes_[i]) * std::sin(k * rnodes_[i]);
    return pre * 4.0 * kPi / k * s;
}

double ChargeModel::outer_flux(double a) const
{
    a = std::abs(a);
    if (a >= support_)
        return 0.0;
    return flux_(a);
}

std::uint64_t ChargeModel::hash() const
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const void* data, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    const int kind = static_cast<int>(p_.kind);
    mix(&kind, sizeof kind);
    mix(&p_.radius, sizeof p_.radius);
    mix(&p_.total_charge, sizeof p_.total_charge);
    mix(&p_.spectral_resolution, sizeof p_.spectral_resolution);
    return h;
}

std::string ChargeModel::hash_hex() const
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
    return buf;
}

ChargeModel build_charge(const ChargeParams& p) { return ChargeModel(p); }

double field_mass(const ChargeModel& c) { return c.field_mass(); }

} // namespace radreact
