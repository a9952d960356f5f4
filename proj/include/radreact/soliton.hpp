#pragma once

#include "radreact/charge.hpp"
#include "radreact/common.hpp"

namespace radreact {

// Bracket function of the soliton momentum and the derived radial
// quantities used by the field mass matrix:
//   dphi = phi', chi = phi'/s, omega = chi'/s.
struct BracketValues {
    double phi, dphi, chi, omega;
};

double bracket_phi(double s);
BracketValues bracket_values(double s);
// bracket of the soliton energy, E_s = gamma - 1 + 3 m_e * energy_bracket(|v|)
double energy_bracket(double s);

// below this speed the brackets are summed from their power series
inline constexpr double kBracketSeriesSwitch = 0.35;

class SolitonCharts {
public:
    explicit SolitonCharts(double field_mass);

    double field_mass() const { return me_; }

    double energy(const Vec3& v) const;
    Vec3 momentum(const Vec3& v) const;
    double energy_of_speed(double s) const;
    double momentum_of_speed(double s) const;

    Vec3 velocity_from_momentum(const Vec3& P) const;
    double energy_of_momentum(const Vec3& P) const { return energy(velocity_from_momentum(P)); }

    // speed at which E_s reaches the given level (inverse of the monotone radial profile)
    double speed_at_energy(double level) const;

private:
    double me_;
};

struct SolitonFieldValue {
    double phi = 0.0;
    double pi = 0.0;
    bool inside_support = false;
};

// Field of an eternally uniformly moving charge at offset x_rel from its centre,
// as a quadrature of the boosted Coulomb kernel over the charge.
SolitonFieldValue soliton_field(const ChargeModel& charge, const Vec3& v, const Vec3& x_rel,
                                int nodes = 40);

} // namespace radreact
