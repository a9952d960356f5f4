#pragma once

#include "radreact/charge.hpp"
#include "radreact/quadrature.hpp"

#include <string>

namespace radreact {

// Self-force kernel K(tau, d) = 4 pi int k^2 |ff|^2 sin(k tau) j1(k d) dk,
// evaluated through the one-dimensional profile
//   C(x) = int_0^inf |ff(k)|^2 cos(k x) dk,
// which is supported on |x| <= 2 R and satisfies C'' = -A/2 with A the
// autocorrelation of r rho(r). Immutable, shareable across threads.
class MemoryKernel {
public:
    MemoryKernel(const ChargeModel& charge, double velocity_bound, int cells = 1024);

    double velocity_bound() const { return vbar_; }
    double support_width() const { return width_; }     // 2 R
    double memory_time() const { return width_ / (1.0 - vbar_); }
    std::uint64_t charge_hash() const { return hash_; }

    double autocorrelation(double x) const;
    double profile(double x) const;    // C
    double profile_d1(double x) const; // C'
    double profile_d3(double x) const; // C'''

    // K / d, finite at d = 0
    double reduced(double tau, double d) const;
    double kernel(double tau, double d) const { return d * reduced(tau, d); }

    // CSV dump of the profile tables, first line carries the charge hash
    void save(const std::string& path) const;
    // Returns true and fills *this when the file matches the charge hash.
    bool load(const std::string& path);

private:
    double vbar_ = 0.0, width_ = 0.0, dswitch_ = 0.0;
    std::uint64_t hash_ = 0;
    int cells_ = 0;
    std::vector<double> A_[4]; // A and its first three derivatives on the grid
    QuinticTable autocorr_, c0_, c1_, c3_;

    void build_tables();
};

} // namespace radreact
