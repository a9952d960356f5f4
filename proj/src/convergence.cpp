#include "radreact/convergence.hpp"

#include "radreact/csv.hpp"
#include "radreact/lorentz_dirac.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <stdexcept>

#ifndef RADREACT_VERSION
#define RADREACT_VERSION "0.1.0"
#endif

namespace radreact {

const char* const kVersion = RADREACT_VERSION;

double level_speed(const SolitonCharts& charts, const PotentialModel& V, const Vec3& q0, const Vec3& v0)
{
    const double level = charts.energy(v0) + V.value(q0) - V.infimum();
    return charts.speed_at_energy(level);
}

double derive_velocity_bound(double max_speed) { return std::min(max_speed + 0.02, 0.5 * (1.0 + max_speed)); }

RunSetup::RunSetup(const RunConfig& c)
    : charge(c.charge), potential(c.potential), charts(charge.field_mass()),
      max_speed(level_speed(charts, potential, c.q0, c.v0)),
      velocity_bound(c.velocity_bound ? *c.velocity_bound : derive_velocity_bound(max_speed)),
      coefficients(charge.field_mass(), charge.total_charge() * charge.total_charge(),
                   c.clamp_delta ? *c.clamp_delta : clamp_margin(velocity_bound, max_speed)),
      kernel(charge, velocity_bound, c.kernel_cells)
{
    full_options.step = c.micro_step;
    full_options.quad.nodes = c.force_nodes;
    full_options.quad.panel = c.force_panel;
}

SlopeFit fit_order(const std::vector<std::pair<double, double>>& pairs)
{
    SlopeFit f;
    std::vector<std::pair<double, double>> pts;
    int dropped = 0;
    for (const auto& [e, err] : pairs) {
        if (!(e > 0.0) || err < 0.0 || !std::isfinite(err))
            throw std::invalid_argument("fit_order needs positive eps and finite nonnegative errors");
        if (err == 0.0)
            ++dropped;
        else
            pts.emplace_back(std::log(e), std::log(err));
    }
    if (dropped > 0)
        f.note = "dropped " + std::to_string(dropped) + " pair(s) with zero error";
    const auto n = static_cast<int>(pts.size());
    if (n < 3)
        throw std::invalid_argument("fit_order needs at least 3 pairs with nonzero error");
    double mx = 0, my = 0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (!(sxx > 0.0))
        throw std::invalid_argument("fit_order needs at least two distinct eps values");
    f.slope = sxy / sxx;
    double rss = 0;
    for (const auto& [x, y] : pts) {
        const double r = y - my - f.slope * (x - mx);
        rss += r * r;
    }
    const boost::math::students_t dist(n - 2);
    f.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * std::sqrt(rss / (n - 2) / sxx);
    f.points = n;
    return f;
}

RunMetrics compare_one(const RunSetup& setup, const RunConfig& config, double eps)
{
    RunMetrics m;
    m.eps = eps;
    const double t1 = setup.kernel.memory_time();
    m.match_time = eps * t1;
    m.full = integrate_full(config.q0, config.v0, eps, setup.kernel, setup.potential, m.match_time + config.horizon,
                            setup.full_options);
    if (m.full.aborted) {
        m.aborted = true;
        m.diagnostic = "full run: " + m.full.diagnostic;
        return m;
    }
    const Vec3 r0 = m.full.macro_position(m.match_time), u0 = m.full.macro_velocity(m.match_time);
    const ComparisonDynamics cd(setup.coefficients, setup.potential, eps);
    m.manifold = cd.integrate_on_manifold(r0, u0, config.horizon, config.macro_step);
    if (m.manifold.aborted) {
        m.aborted = true;
        m.diagnostic = "manifold run: " + m.manifold.diagnostic;
        return m;
    }
    const auto& man = m.manifold;
    m.match_mismatch = std::hypot((man.position(0.0) - r0).norm(), (man.velocity(0.0) - u0).norm());

    const auto& S = m.full.samples;
    for (const auto& s : S) {
        const double tt = eps * s.t - m.match_time;
        if (tt < 0.0)
            continue;
        if (tt > man.t_end())
            break;
        const Vec3 q = eps * s.q;
        const Vec3 r = man.position(tt), u = man.velocity(tt), y = man.acceleration(tt);
        const double dq = (q - r).norm(), dv = (s.v - u).norm();
        m.position = std::max(m.position, dq);
        m.velocity = std::max(m.velocity, dv);
        m.acceleration = std::max(m.acceleration, (s.a / eps - y).norm());
        const double H_full = setup.charts.energy(s.v) + setup.potential.value(q);
        const double H_man = setup.charts.energy(u) + setup.potential.value(r);
        m.energy = std::max(m.energy, std::abs(H_full - H_man));
        if (tt <= eps * config.short_window) {
            m.short_position = std::max(m.short_position, dq);
            m.short_velocity = std::max(m.short_velocity, dv);
        }
    }

    const auto stride = static_cast<std::size_t>(config.derivative_stride);
    for (std::size_t i = 2 * stride; i + 2 * stride < S.size(); ++i) {
        if (S[i].t < t1)
            continue;
        const Vec3 d = acceleration_derivatives(m.full, i, config.derivative_stride);
        m.sup_accel = std::max(m.sup_accel, d(0));
        m.sup_jerk = std::max(m.sup_jerk, d(1));
        m.sup_snap = std::max(m.sup_snap, d(2));
        m.taylor_residual = std::max(
            m.taylor_residual, taylor_residual(m.full, setup.coefficients, i, config.derivative_stride).norm());
    }
    for (auto& s : m.manifold.samples)
        s.t += m.match_time;
    return m;
}

namespace {

struct MetricColumn {
    const char* name;
    double RunMetrics::*field;
};

const MetricColumn kMetrics[] = {
    {"position", &RunMetrics::position},
    {"velocity", &RunMetrics::velocity},
    {"acceleration", &RunMetrics::acceleration},
    {"energy", &RunMetrics::energy},
    {"short_position", &RunMetrics::short_position},
    {"short_velocity", &RunMetrics::short_velocity},
    {"taylor_residual", &RunMetrics::taylor_residual},
    {"sup_accel", &RunMetrics::sup_accel},
    {"sup_jerk", &RunMetrics::sup_jerk},
    {"sup_snap", &RunMetrics::sup_snap},
};

std::string sanitize(std::string s)
{
    for (char& c : s)
        if (c == ',' || c == '\n')
            c = ';';
    return s;
}

} // namespace

ConvergenceReport run_comparison(const RunConfig& config)
{
    validate(config);
    const RunSetup setup(config);
    ConvergenceReport rep;
    rep.config_hash = config_hash(config);
    rep.charge_hash = setup.charge.hash_hex();
    rep.velocity_bound = setup.velocity_bound;
    rep.memory_time = setup.kernel.memory_time();
    rep.clamp_delta = setup.coefficients.clamp_delta();
    rep.field_mass = setup.charge.field_mass();
    rep.potential = config.potential;

    std::vector<std::future<RunMetrics>> jobs;
    for (double e : config.eps)
        jobs.push_back(std::async(std::launch::async, [&setup, &config, e] { return compare_one(setup, config, e); }));
    for (auto& j : jobs)
        rep.runs.push_back(j.get());

    for (const auto& col : kMetrics) {
        std::vector<std::pair<double, double>> pairs;
        for (const auto& r : rep.runs)
            if (!r.aborted)
                pairs.emplace_back(r.eps, r.*col.field);
        SlopeFit f;
        try {
            f = fit_order(pairs);
        } catch (const std::invalid_argument& e) {
            f.slope = f.half_width = std::numeric_limits<double>::quiet_NaN();
            f.points = static_cast<int>(pairs.size());
            f.note = e.what();
        }
        f.metric = col.name;
        rep.slopes.push_back(f);
    }
    return rep;
}

void write_macro_csv(const std::string& path, const MacroTrajectory& t, const SolitonCharts& charts,
                     const PotentialModel& V, bool with_manifold_columns)
{
    std::vector<std::string> header{"t", "r1", "r2", "r3", "u1", "u2", "u3", "H"};
    if (with_manifold_columns)
        header.insert(header.end(), {"y1", "y2", "y3", "G", "dG_dt", "distance"});
    CsvWriter w(path, header);
    for (const auto& s : t.samples) {
        w << s.t << s.r << s.u << charts.energy(s.u) + V.value(s.r);
        if (with_manifold_columns)
            w << s.y << s.energy << s.rate << s.distance;
        w.end_row();
    }
    w.close();
}

void write_full_csv(const std::string& path, const FullTrajectory& t, const SolitonCharts& charts,
                    const PotentialModel& V)
{
    CsvWriter w(path, {"t", "r1", "r2", "r3", "u1", "u2", "u3", "H", "F1", "F2", "F3"});
    for (const auto& s : t.samples) {
        const Vec3 q = t.eps * s.q;
        w << t.eps * s.t << q << s.v << charts.energy(s.v) + V.value(q) << s.force;
        w.end_row();
    }
    w.close();
}

void emit_report(const ConvergenceReport& report, const std::string& directory)
{
    if (report.runs.empty())
        throw std::invalid_argument("report has no runs: the eps list was empty");
    std::filesystem::create_directories(directory);
    const std::filesystem::path dir(directory);

    CsvWriter rep((dir / "report.csv").string(),
                  {"eps", "match_time", "match_mismatch", "position", "velocity", "acceleration", "energy",
                   "short_position", "short_velocity", "taylor_residual", "sup_accel", "sup_jerk", "sup_snap",
                   "aborted", "diagnostic"});
    for (const auto& r : report.runs) {
        rep << r.eps << r.match_time << r.match_mismatch;
        for (const auto& col : kMetrics)
            rep << r.*col.field;
        rep << std::string(r.aborted ? "1" : "0") << sanitize(r.diagnostic);
        rep.end_row();
    }
    rep.close();

    CsvWriter sl((dir / "slopes.csv").string(), {"metric", "slope", "half_width", "points", "note"});
    for (const auto& f : report.slopes) {
        sl << f.metric << f.slope << f.half_width << static_cast<double>(f.points) << sanitize(f.note);
        sl.end_row();
    }
    sl.close();

    const SolitonCharts charts(report.field_mass);
    const PotentialModel V(report.potential);
    for (const auto& r : report.runs) {
        const std::string tag = format_short(r.eps);
        if (!r.full.samples.empty())
            write_full_csv((dir / ("full_eps_" + tag + ".csv")).string(), r.full, charts, V);
        if (!r.manifold.samples.empty())
            write_macro_csv((dir / ("manifold_eps_" + tag + ".csv")).string(), r.manifold, charts, V, true);
    }

    std::ofstream man(dir / "manifest");
    if (!man)
        throw std::runtime_error((dir / "manifest").string() + ": cannot open");
    man << "version " << kVersion << '\n'
        << "config_hash " << report.config_hash << '\n'
        << "charge_hash " << report.charge_hash << '\n'
        << "field_mass " << format_double(report.field_mass) << '\n'
        << "velocity_bound " << format_double(report.velocity_bound) << '\n'
        << "memory_time " << format_double(report.memory_time) << '\n'
        << "clamp_delta " << format_double(report.clamp_delta) << '\n';
    if (!man)
        throw std::runtime_error((dir / "manifest").string() + ": write failed");
}

} // namespace radreact
