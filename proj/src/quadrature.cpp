#include "radreact/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace radreact {

GaussLegendre::GaussLegendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("Gauss-Legendre order must be positive");
    // boost returns the nonnegative zeros in increasing order
    const auto zeros = boost::math::legendre_p_zeros<double>(n);
    for (double z : zeros) {
        const double dp = boost::math::legendre_p_prime<double>(n, z);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        if (z == 0.0) {
            x_.push_back(0.0);
            w_.push_back(w);
        } else {
            x_.push_back(z);
            w_.push_back(w);
            x_.push_back(-z);
            w_.push_back(w);
        }
    }
    std::vector<std::size_t> idx(x_.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x_[a] < x_[b]; });
    std::vector<double> xs, ws;
    for (auto i : idx) {
        xs.push_back(x_[i]);
        ws.push_back(w_[i]);
    }
    x_ = std::move(xs);
    w_ = std::move(ws);
}

const GaussLegendre& gauss_legendre(int n)
{
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<GaussLegendre>(n);
    return *slot;
}

QuinticTable::QuinticTable(double dx, std::vector<double> f, std::vector<double> d1,
                           std::vector<double> d2, double outside)
    : dx_(dx), outside_(outside), f_(std::move(f)), d1_(std::move(d1)), d2_(std::move(d2))
{
    if (f_.size() < 2 || d1_.size() != f_.size() || d2_.size() != f_.size() || !(dx_ > 0))
        throw std::invalid_argument("malformed interpolation table");
}

double QuinticTable::operator()(double x) const
{
    if (x < 0.0 || x >= x_max())
        return x == x_max() ? f_.back() : outside_;
    const auto i = static_cast<std::size_t>(x / dx_);
    const double t0 = static_cast<double>(i) * dx_;
    return quintic_hermite(t0, t0 + dx_, f_[i], f_[i + 1], d1_[i], d1_[i + 1], d2_[i], d2_[i + 1], x);
}

double QuinticTable::derivative(double x) const
{
    if (x < 0.0 || x >= x_max())
        return x == x_max() ? d1_.back() : 0.0;
    const auto i = static_cast<std::size_t>(x / dx_);
    const double t0 = static_cast<double>(i) * dx_;
    return quintic_hermite_derivative(t0, t0 + dx_, f_[i], f_[i + 1], d1_[i], d1_[i + 1], d2_[i],
                                      d2_[i + 1], x);
}

} // namespace radreact
