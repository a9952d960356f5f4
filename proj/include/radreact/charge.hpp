#pragma once

#include "radreact/quadrature.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace radreact {

enum class ChargeKind { CompactBump, Gaussian };

ChargeKind parse_charge_kind(const std::string& name);
std::string to_string(ChargeKind kind);

struct ChargeParams {
    ChargeKind kind = ChargeKind::CompactBump;
    double radius = 1.0;        // support radius, or sigma for the gaussian
    double total_charge = 1.0;
    int spectral_resolution = 4096;
    bool strict_compact = false;
};

// Rigid radial charge distribution with its radial form factor.
// Immutable after construction.
class ChargeModel {
public:
    explicit ChargeModel(const ChargeParams& p);

    ChargeKind kind() const { return p_.kind; }
    double radius() const { return p_.radius; }
    double total_charge() const { return p_.total_charge; }
    const ChargeParams& params() const { return p_; }

    // Radius beyond which the density is (treated as) zero: R for the bump, 8 sigma for the gaussian.
    double support_radius() const { return support_; }
    bool truncated() const { return p_.kind == ChargeKind::Gaussian; }

    double density(double r) const;            // rho_r(|r|)
    double density_derivative(double r) const; // d rho_r / dr, odd in r

    // g(r) = r rho_r(r), extended as an odd function, and its first two derivatives.
    double moment(double r, int order) const;

    // Direct radial quadrature of the form factor.
    double form_factor(double k) const;

    const std::vector<double>& k_grid() const { return k_; }
    const std::vector<double>& form_factor_table() const { return ff_; }
    double k_max() const { return k_.back(); }
    double dk() const { return k_[1] - k_[0]; }

    // m_e = (4 pi / 3) int |ff|^2 dk, trapezoid on the table
    double field_mass() const { return field_mass_; }
    // share of the spectral integral carried by the last table cell
    double spectral_tail() const { return tail_; }
    double l2_norm() const { return l2_; }

    // int_a^inf u rho_r(u) du, used by the retarded field quadrature
    double outer_flux(double a) const;

    std::uint64_t hash() const;
    std::string hash_hex() const;

private:
    double raw_profile(double r, double& p, double& dp) const;

    ChargeParams p_;
    double support_ = 0.0;
    double norm_ = 1.0;
    double field_mass_ = 0.0, tail_ = 0.0, l2_ = 0.0;
    std::vector<double> rnodes_, rweights_;
    std::vector<double> k_, ff_;
    QuinticTable flux_;
};

ChargeModel build_charge(const ChargeParams& p);
double field_mass(const ChargeModel& c);

} // namespace radreact
