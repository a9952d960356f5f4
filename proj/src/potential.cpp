#include "radreact/potential.hpp"

#include <cmath>

namespace radreact {

PotentialKind parse_potential_kind(const std::string& name)
{
    if (name == "zero")
        return PotentialKind::Zero;
    if (name == "harmonic")
        return PotentialKind::Harmonic;
    if (name == "gaussian-well")
        return PotentialKind::GaussianWell;
    if (name == "double-well")
        return PotentialKind::DoubleWell;
    if (name == "confining-quartic")
        return PotentialKind::ConfiningQuartic;
    throw std::invalid_argument("unknown potential kind '" + name + "'");
}

std::string to_string(PotentialKind kind)
{
    switch (kind) {
    case PotentialKind::Zero: return "zero";
    case PotentialKind::Harmonic: return "harmonic";
    case PotentialKind::GaussianWell: return "gaussian-well";
    case PotentialKind::DoubleWell: return "double-well";
    case PotentialKind::ConfiningQuartic: return "confining-quartic";
    }
    return "?";
}

PotentialModel::PotentialModel(const PotentialParams& p) : p_(p)
{
    if (p.kind != PotentialKind::Zero && !(p.stiffness > 0.0) && p.kind != PotentialKind::GaussianWell)
        throw std::invalid_argument("potential stiffness must be positive");
    if ((p.kind == PotentialKind::GaussianWell || p.kind == PotentialKind::DoubleWell) &&
        !(p.width > 0.0 && p.depth >= 0.0))
        throw std::invalid_argument("potential width must be positive and depth nonnegative");
}

double PotentialModel::value(const Vec3& q) const
{
    const Vec3 x = q - p_.center;
    switch (p_.kind) {
    case PotentialKind::Zero:
        return 0.0;
    case PotentialKind::Harmonic:
        return 0.5 * p_.stiffness * x.squaredNorm();
    case PotentialKind::GaussianWell:
        return -p_.depth * std::exp(-0.5 * x.squaredNorm() / (p_.width * p_.width));
    case PotentialKind::DoubleWell: {
        const double z = x(0) * x(0) / (p_.width * p_.width) - 1.0;
        return p_.depth * z * z + 0.5 * p_.stiffness * (x(1) * x(1) + x(2) * x(2));
    }
    case PotentialKind::ConfiningQuartic: {
        const double r2 = x.squaredNorm();
        return 0.25 * p_.stiffness * r2 * r2;
    }
    }
    return 0.0;
}

Vec3 PotentialModel::gradient(const Vec3& q) const
{
    const Vec3 x = q - p_.center;
    switch (p_.kind) {
    case PotentialKind::Zero:
        return Vec3::Zero();
    case PotentialKind::Harmonic:
        return p_.stiffness * x;
    case PotentialKind::GaussianWell: {
        const double w2 = p_.width * p_.width;
        return p_.depth / w2 * std::exp(-0.5 * x.squaredNorm() / w2) * x;
    }
    case PotentialKind::DoubleWell: {
        const double a2 = p_.width * p_.width;
        const double z = x(0) * x(0) / a2 - 1.0;
        return Vec3(4 * p_.depth * z * x(0) / a2, p_.stiffness * x(1), p_.stiffness * x(2));
    }
    case PotentialKind::ConfiningQuartic:
        return p_.stiffness * x.squaredNorm() * x;
    }
    return Vec3::Zero();
}

Mat3 PotentialModel::hessian(const Vec3& q) const
{
    const Vec3 x = q - p_.center;
    const Mat3 I = Mat3::Identity();
    switch (p_.kind) {
    case PotentialKind::Zero:
        return Mat3::Zero();
    case PotentialKind::Harmonic:
        return p_.stiffness * I;
    case PotentialKind::GaussianWell: {
        const double w2 = p_.width * p_.width;
        const double E = std::exp(-0.5 * x.squaredNorm() / w2);
        return p_.depth / w2 * E * (I - x * x.transpose() / w2);
    }
    case PotentialKind::DoubleWell: {
        const double a2 = p_.width * p_.width;
        Mat3 H = Mat3::Zero();
        H(0, 0) = 4 * p_.depth * (3 * x(0) * x(0) / a2 - 1.0) / a2;
        H(1, 1) = H(2, 2) = p_.stiffness;
        return H;
    }
    case PotentialKind::ConfiningQuartic:
        return p_.stiffness * (x.squaredNorm() * I + 2 * x * x.transpose());
    }
    return Mat3::Zero();
}

Tensor3 PotentialModel::third(const Vec3& q) const
{
    const Vec3 x = q - p_.center;
    Tensor3 T{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    auto sym = [&](double c) { // c (delta_ij x_k + delta_ik x_j + delta_jk x_i)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    T[i](j, k) += c * ((i == j) * x(k) + (i == k) * x(j) + (j == k) * x(i));
    };
    switch (p_.kind) {
    case PotentialKind::Zero:
    case PotentialKind::Harmonic:
        break;
    case PotentialKind::GaussianWell: {
        const double w2 = p_.width * p_.width;
        const double c = p_.depth / w2 * std::exp(-0.5 * x.squaredNorm() / w2);
        sym(-c / w2);
        for (int i = 0; i < 3; ++i)
            T[i] += c / (w2 * w2) * x(i) * x * x.transpose();
        break;
    }
    case PotentialKind::DoubleWell: {
        const double a2 = p_.width * p_.width;
        T[0](0, 0) = 24 * p_.depth * x(0) / (a2 * a2);
        break;
    }
    case PotentialKind::ConfiningQuartic:
        sym(2 * p_.stiffness);
        break;
    }
    return T;
}

bool PotentialModel::bounded() const
{
    return p_.kind == PotentialKind::Zero || p_.kind == PotentialKind::GaussianWell;
}

bool PotentialModel::confining() const { return !bounded(); }

double PotentialModel::infimum() const
{
    return p_.kind == PotentialKind::GaussianWell ? -p_.depth : 0.0;
}

std::array<double, 3> PotentialModel::bounds() const
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (p_.kind == PotentialKind::Zero)
        return {0.0, 0.0, 0.0};
    if (p_.kind == PotentialKind::GaussianWell) {
        const double A = p_.depth, w = p_.width;
        // max of r exp(-r^2/2w^2) is w e^{-1/2}; the Hessian eigenvalues are bounded by A/w^2
        return {A, A / w * std::exp(-0.5), A / (w * w)};
    }
    return {inf, inf, inf};
}

double PotentialModel::level_set_radius(double level) const
{
    if (bounded())
        return std::numeric_limits<double>::infinity();
    if (level < 0.0)
        return 0.0;
    switch (p_.kind) {
    case PotentialKind::Harmonic:
        return std::sqrt(2 * level / p_.stiffness);
    case PotentialKind::ConfiningQuartic:
        return std::pow(4 * level / p_.stiffness, 0.25);
    case PotentialKind::DoubleWell: {
        const double x1 = p_.width * std::sqrt(1.0 + std::sqrt(level / p_.depth));
        const double xp = std::sqrt(2 * level / p_.stiffness);
        return std::sqrt(x1 * x1 + xp * xp);
    }
    default:
        return std::numeric_limits<double>::infinity();
    }
}

PotentialModel PotentialModel::translated(const Vec3& shift) const
{
    PotentialParams p = p_;
    p.center += shift;
    return PotentialModel(p);
}

} // namespace radreact
