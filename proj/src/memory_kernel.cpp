#include "radreact/memory_kernel.hpp"

#include "radreact/common.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace radreact {

namespace {

constexpr int kRadialRefine = 4; // radial nodes per table cell
constexpr int kSmallDNodes = 24;

// exact integral of the quintic Hermite interpolant over one cell
double cell_integral(double h, double y0, double y1, double d0, double d1, double s0, double s1)
{
    return h * (0.5 * (y0 + y1) + h * (d0 - d1) / 10.0 + h * h * (s0 + s1) / 120.0);
}

} // namespace

MemoryKernel::MemoryKernel(const ChargeModel& charge, double velocity_bound, int cells)
    : vbar_(velocity_bound), width_(2.0 * charge.support_radius()), hash_(charge.hash()), cells_(cells)
{
    if (!(velocity_bound >= 0.0 && velocity_bound < 1.0))
        throw std::invalid_argument("velocity bound must lie in [0, 1)");
    if (cells < 64)
        throw std::invalid_argument("kernel table needs at least 64 cells");
    dswitch_ = 0.125 * width_;

    const double Rs = charge.support_radius();
    const int nr = kRadialRefine * cells / 2; // nodes per unit R... over [-R, R] there are 2*nr
    const double dr = Rs / nr;
    const int total = 2 * nr;
    std::vector<double> g0(total + 1), g1(total + 1), g2(total + 1);
    for (int j = 0; j <= total; ++j) {
        const double r = -Rs + j * dr;
        g0[j] = charge.moment(r, 0);
        g1[j] = charge.moment(r, 1);
        g2[j] = charge.moment(r, 2);
    }
    for (auto& a : A_)
        a.assign(cells + 1, 0.0);
    for (int i = 0; i <= cells; ++i) {
        const int off = kRadialRefine * i;
        double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
        for (int j = 0; j + off <= total; ++j) {
            s0 += g0[j] * g0[j + off];
            s1 += g0[j] * g1[j + off];
            s2 += g0[j] * g2[j + off];
            s3 -= g1[j] * g2[j + off];
        }
        A_[0][i] = s0 * dr;
        A_[1][i] = s1 * dr;
        A_[2][i] = s2 * dr;
        A_[3][i] = s3 * dr;
    }
    build_tables();
}

void MemoryKernel::build_tables()
{
    const int n = cells_;
    const double h = width_ / n;
    const auto& A = A_[0];
    const auto& A1 = A_[1];
    const auto& A2 = A_[2];
    const auto& A3 = A_[3];

    std::vector<double> c1(n + 1), c2(n + 1), c3(n + 1), c4(n + 1), c5(n + 1), c0(n + 1);
    for (int i = 0; i <= n; ++i) {
        c2[i] = -0.5 * A[i];
        c3[i] = -0.5 * A1[i];
        c4[i] = -0.5 * A2[i];
        c5[i] = -0.5 * A3[i];
    }
    c1[n] = 0.0;
    for (int i = n - 1; i >= 0; --i)
        c1[i] = c1[i + 1] + 0.5 * cell_integral(h, A[i], A[i + 1], A1[i], A1[i + 1], A2[i], A2[i + 1]);
    c0[n] = 0.0;
    for (int i = n - 1; i >= 0; --i)
        c0[i] = c0[i + 1] - cell_integral(h, c1[i], c1[i + 1], c2[i], c2[i + 1], c3[i], c3[i + 1]);

    autocorr_ = QuinticTable(h, A, A1, A2, 0.0);
    c0_ = QuinticTable(h, c0, c1, c2, 0.0);
    c1_ = QuinticTable(h, c1, c2, c3, 0.0);
    c3_ = QuinticTable(h, c3, c4, c5, 0.0);
}

double MemoryKernel::autocorrelation(double x) const { return autocorr_(std::abs(x)); }
double MemoryKernel::profile(double x) const { return c0_(std::abs(x)); }
double MemoryKernel::profile_d1(double x) const { return x < 0 ? -c1_(-x) : c1_(x); }
double MemoryKernel::profile_d3(double x) const { return x < 0 ? -c3_(-x) : c3_(x); }

double MemoryKernel::reduced(double tau, double d) const
{
    if (tau - d >= width_)
        return 0.0;
    if (d >= dswitch_) {
        const double d2 = d * d;
        return 2.0 * kPi / (d2 * d) * (profile(tau - d) - profile(tau + d)) +
               2.0 * kPi / d2 * (profile_d1(tau + d) + profile_d1(tau - d));
    }
    if (d == 0.0)
        return 4.0 * kPi / 3.0 * profile_d3(tau);
    const auto& gl = gauss_legendre(kSmallDNodes);
    const double s = gl.integrate([&](double mu) { return (1.0 - mu * mu) * profile_d3(tau + d * mu); },
                                  -1.0, 1.0);
    return kPi * s;
}

void MemoryKernel::save(const std::string& path) const
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write kernel cache " + path);
    char buf[64];
    out << "# charge " << hash_ << " cells " << cells_ << " width ";
    auto res = std::to_chars(buf, buf + sizeof buf, width_);
    out << std::string(buf, res.ptr) << "\n";
    out << "x,A,A1,A2,A3\n";
    const double h = width_ / cells_;
    for (int i = 0; i <= cells_; ++i) {
        double row[5] = {i * h, A_[0][i], A_[1][i], A_[2][i], A_[3][i]};
        for (int c = 0; c < 5; ++c) {
            res = std::to_chars(buf, buf + sizeof buf, row[c]);
            out << std::string(buf, res.ptr) << (c < 4 ? ',' : '\n');
        }
    }
    if (!out)
        throw std::runtime_error("error writing kernel cache " + path);
}

bool MemoryKernel::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        return false;
    std::string line;
    std::getline(in, line);
    std::istringstream hdr(line);
    std::string tag1, tag2, tag3, hash_s;
    int cells = 0;
    std::string width_s;
    hdr >> tag1 >> tag2 >> hash_s >> tag3 >> cells >> tag1 >> width_s;
    if (hash_s != std::to_string(hash_) || cells != cells_)
        return false;
    std::getline(in, line);
    std::vector<double> cols[5];
    while (std::getline(in, line)) {
        const char* p = line.data();
        const char* end = p + line.size();
        for (int c = 0; c < 5; ++c) {
            double v;
            auto r = std::from_chars(p, end, v);
            if (r.ec != std::errc())
                return false;
            cols[c].push_back(v);
            p = r.ptr + 1;
        }
    }
    if (static_cast<int>(cols[0].size()) != cells_ + 1)
        return false;
    for (int k = 0; k < 4; ++k)
        A_[k] = cols[k + 1];
    build_tables();
    return true;
}

} // namespace radreact
