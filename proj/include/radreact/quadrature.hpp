#pragma once

#include <cstddef>
#include <type_traits>
#include <vector>

namespace radreact {

// Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
public:
    explicit GaussLegendre(int n);

    int size() const { return static_cast<int>(x_.size()); }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& weights() const { return w_; }

    template <class F>
    auto integrate(F&& f, double a, double b) const
    {
        using R = std::decay_t<decltype(f(a))>;
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        R acc = f(c + h * x_[0]) * w_[0];
        for (std::size_t i = 1; i < x_.size(); ++i)
            acc += f(c + h * x_[i]) * w_[i];
        return R(acc * h);
    }

    // composite rule over `panels` equal sub-intervals
    template <class F>
    auto integrate(F&& f, double a, double b, int panels) const
    {
        using R = std::decay_t<decltype(f(a))>;
        const double dx = (b - a) / panels;
        R acc = integrate(f, a, a + dx);
        for (int p = 1; p < panels; ++p)
            acc += integrate(f, a + p * dx, a + (p + 1) * dx);
        return acc;
    }

private:
    std::vector<double> x_, w_;
};

// Shared cached rules, safe to use from several threads after first call.
const GaussLegendre& gauss_legendre(int n);

template <class T>
T cubic_hermite(double t0, double t1, const T& y0, const T& y1, const T& d0, const T& d1, double t)
{
    const double h = t1 - t0, s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return h00 * y0 + (h10 * h) * d0 + h01 * y1 + (h11 * h) * d1;
}

template <class T>
T cubic_hermite_derivative(double t0, double t1, const T& y0, const T& y1, const T& d0, const T& d1,
                           double t)
{
    const double h = t1 - t0, s = (t - t0) / h;
    const double s2 = s * s;
    const double g00 = (6 * s2 - 6 * s) / h, g10 = 3 * s2 - 4 * s + 1;
    const double g01 = (-6 * s2 + 6 * s) / h, g11 = 3 * s2 - 2 * s;
    return g00 * y0 + g10 * d0 + g01 * y1 + g11 * d1;
}

// Quintic Hermite through value, first and second derivative at both ends.
template <class T>
T quintic_hermite(double t0, double t1, const T& y0, const T& y1, const T& d0, const T& d1,
                  const T& s0, const T& s1, double t)
{
    const double h = t1 - t0, s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double H0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
    const double H1 = s - 6 * s3 + 8 * s4 - 3 * s5;
    const double H2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    const double H3 = 0.5 * s3 - s4 + 0.5 * s5;
    const double H4 = -4 * s3 + 7 * s4 - 3 * s5;
    const double H5 = 10 * s3 - 15 * s4 + 6 * s5;
    return H0 * y0 + (H1 * h) * d0 + (H2 * h * h) * s0 + (H3 * h * h) * s1 + (H4 * h) * d1 + H5 * y1;
}

template <class T>
T quintic_hermite_derivative(double t0, double t1, const T& y0, const T& y1, const T& d0,
                             const T& d1, const T& s0, const T& s1, double t)
{
    const double h = t1 - t0, s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
    const double G0 = (-30 * s2 + 60 * s3 - 30 * s4) / h;
    const double G1 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
    const double G2 = (s - 4.5 * s2 + 6 * s3 - 2.5 * s4) * h;
    const double G3 = (1.5 * s2 - 4 * s3 + 2.5 * s4) * h;
    const double G4 = -12 * s2 + 28 * s3 - 15 * s4;
    const double G5 = (30 * s2 - 60 * s3 + 30 * s4) / h;
    return G0 * y0 + G1 * d0 + G2 * s0 + G3 * s1 + G4 * d1 + G5 * y1;
}

// Table on a uniform grid x_i = i*dx, i = 0..n, holding f, f', f'' and
// interpolated by piecewise quintic Hermite. Outside [0, x_n] returns `outside`.
class QuinticTable {
public:
    QuinticTable() = default;
    QuinticTable(double dx, std::vector<double> f, std::vector<double> d1, std::vector<double> d2,
                 double outside = 0.0);

    double operator()(double x) const;
    double derivative(double x) const;
    double x_max() const { return dx_ * static_cast<double>(f_.size() - 1); }
    bool empty() const { return f_.empty(); }

private:
    double dx_ = 0.0, outside_ = 0.0;
    std::vector<double> f_, d1_, d2_;
};

} // namespace radreact
