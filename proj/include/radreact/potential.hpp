#pragma once

#include "radreact/common.hpp"

#include <array>
#include <limits>
#include <string>

namespace radreact {

enum class PotentialKind { Zero, Harmonic, GaussianWell, DoubleWell, ConfiningQuartic };

PotentialKind parse_potential_kind(const std::string& name);
std::string to_string(PotentialKind kind);

// Parameters used by the kinds (unused ones ignored):
//   harmonic          1/2 k |x|^2
//   gaussian-well     -depth exp(-|x|^2 / 2 width^2)
//   double-well       depth (x1^2/width^2 - 1)^2 + 1/2 k (x2^2 + x3^2)
//   confining-quartic 1/4 k |x|^4
// with x = q - center.
struct PotentialParams {
    PotentialKind kind = PotentialKind::Zero;
    double stiffness = 1.0;
    double depth = 1.0;
    double width = 1.0;
    Vec3 center = Vec3::Zero();
};

using Tensor3 = std::array<Mat3, 3>; // T[i](j, k) = d_i d_j d_k V

class PotentialModel {
public:
    PotentialModel() = default;
    explicit PotentialModel(const PotentialParams& p);

    const PotentialParams& params() const { return p_; }
    PotentialKind kind() const { return p_.kind; }

    double value(const Vec3& q) const;
    Vec3 gradient(const Vec3& q) const;
    Mat3 hessian(const Vec3& q) const;
    Tensor3 third(const Vec3& q) const;

    bool bounded() const;   // globally bounded with bounded derivatives
    bool confining() const; // V -> infinity at infinity
    double infimum() const;
    // sup |V|, sup |grad V|, sup |hess V| for bounded kinds, +inf otherwise
    std::array<double, 3> bounds() const;
    // radius about the centre containing {V <= level}; +inf for bounded kinds
    double level_set_radius(double level) const;

    PotentialModel translated(const Vec3& shift) const;

private:
    PotentialParams p_;
};

} // namespace radreact
