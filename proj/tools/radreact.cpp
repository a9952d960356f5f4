#include "radreact/config.hpp"
#include "radreact/convergence.hpp"
#include "radreact/csv.hpp"
#include "radreact/effective.hpp"
#include "radreact/fields.hpp"
#include "radreact/fullfield.hpp"
#include "radreact/lorentz_dirac.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

using namespace radreact;

namespace {

struct Options {
    std::string config, out, eps;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

RunConfig resolve(const Options& o)
{
    RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (!o.out.empty())
        c.output = o.out;
    if (!o.eps.empty()) {
        c.eps.clear();
        std::stringstream ss(o.eps);
        std::string item;
        while (std::getline(ss, item, ','))
            c.eps.push_back(std::stod(item));
    }
    if (o.seed_given)
        c.seed = o.seed;
    validate(c);
    std::filesystem::create_directories(c.output);
    return c;
}

std::string out_path(const RunConfig& c, const std::string& name) { return (std::filesystem::path(c.output) / name).string(); }

int simulate_effective(const RunConfig& c)
{
    const RunSetup s(c);
    const auto t = integrate_effective(c.q0, c.v0, s.coefficients, s.potential, c.horizon, c.macro_step);
    write_macro_csv(out_path(c, "effective.csv"), t, s.charts, s.potential, false);
    if (t.aborted)
        std::cerr << "aborted: " << t.diagnostic << '\n';
    return t.aborted ? 2 : 0;
}

int simulate_manifold(const RunConfig& c)
{
    const RunSetup s(c);
    int rc = 0;
    for (double e : c.eps) {
        const ComparisonDynamics cd(s.coefficients, s.potential, e);
        const auto t = cd.integrate_on_manifold(c.q0, c.v0, c.horizon, c.macro_step);
        write_macro_csv(out_path(c, "manifold_eps_" + format_short(e) + ".csv"), t, s.charts, s.potential, true);
        if (t.aborted) {
            std::cerr << "eps " << e << " aborted: " << t.diagnostic << '\n';
            rc = 2;
        }
    }
    return rc;
}

int simulate_third_order(const RunConfig& c)
{
    const RunSetup s(c);
    for (double e : c.eps) {
        const ComparisonDynamics cd(s.coefficients, s.potential, e);
        const double lmax = s.coefficients.relaxation_spectrum(c.v0)(2);
        const double step = std::min(c.macro_step, 0.05 * e / lmax);
        const auto shot = cd.backward_shooting(c.q0, c.v0);
        const auto res = cd.integrate_third_order(c.q0, c.v0, shot.y0, c.horizon, step);
        write_macro_csv(out_path(c, "third_order_eps_" + format_short(e) + ".csv"), res.trajectory, s.charts,
                        s.potential, true);
        std::cout << "eps " << format_double(e) << (res.runaway ? " run-away at t = " + format_double(res.divergence_time) : " bounded")
                  << '\n';
    }
    return 0;
}

int simulate_full(const RunConfig& c)
{
    const RunSetup s(c);
    int rc = 0;
    for (double e : c.eps) {
        const auto t = integrate_full(c.q0, c.v0, e, s.kernel, s.potential, c.horizon, s.full_options);
        write_full_csv(out_path(c, "full_eps_" + format_short(e) + ".csv"), t, s.charts, s.potential);
        if (t.aborted) {
            std::cerr << "eps " << e << " aborted: " << t.diagnostic << '\n';
            rc = 2;
        }
    }
    return rc;
}

int converge(const RunConfig& c)
{
    const auto rep = run_comparison(c);
    emit_report(rep, c.output);
    int rc = 0;
    for (const auto& r : rep.runs)
        if (r.aborted) {
            std::cerr << "eps " << r.eps << " aborted: " << r.diagnostic << '\n';
            rc = 2;
        }
    for (const auto& f : rep.slopes)
        std::cout << f.metric << " slope " << format_double(f.slope) << " +- " << format_double(f.half_width)
                  << (f.note.empty() ? "" : "  (" + f.note + ")") << '\n';
    return rc;
}

std::vector<Vec3> field_points(const RunConfig& c)
{
    if (!c.field_points.empty())
        return c.field_points;
    return {Vec3(3, 0, 0), Vec3(0, 3, 0), Vec3(-2, -2, 1), Vec3(1, 1, 3), Vec3(4, -1, -1)};
}

int fields(const RunConfig& c)
{
    const RunSetup s(c);
    const auto eff = integrate_effective(c.q0, c.v0, s.coefficients, s.potential, c.field_time, c.macro_step);
    const MacroWorldline limit(eff, s.velocity_bound);
    const double e_charge = s.charge.total_charge();
    for (double e : c.eps) {
        const auto full = integrate_full(c.q0, c.v0, e, s.kernel, s.potential, c.field_time + e * c.micro_step, s.full_options);
        const FullWorldline w(full, s.velocity_bound);
        CsvWriter out(out_path(c, "fields_eps_" + format_short(e) + ".csv"),
                      {"x1", "x2", "x3", "t", "phi_lim", "pi_lim", "phi_eps"});
        for (const auto& x : field_points(c)) {
            const auto lim = limit_fields(limit, x, c.field_time, e_charge);
            double phi_eps = std::nan("");
            if (!full.aborted)
                phi_eps = finite_eps_field(s.charge, e, w, x, c.field_time, c.field_nodes);
            out << x << c.field_time << lim.phi << (lim.on_light_cone ? std::nan("") : lim.pi) << phi_eps;
            out.end_row();
        }
        out.close();
    }
    return 0;
}

int radiation(const RunConfig& c)
{
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const double e2 = c.charge.total_charge * c.charge.total_charge;
    CsvWriter out(out_path(c, "radiation.csv"),
                  {"u1", "u2", "u3", "udot1", "udot2", "udot3", "power", "flux", "relative_difference"});
    double worst = 0.0;
    for (int i = 0; i < c.radiation_samples; ++i) {
        Vec3 u(uni(rng), uni(rng), uni(rng));
        u *= 0.9 * std::abs(uni(rng)) / std::max(1.0, u.norm());
        const Vec3 ud(uni(rng), uni(rng), uni(rng));
        const double p = radiated_power(u, ud, e2), f = flux_sphere_quadrature(u, ud, e2);
        const double rel = std::abs(p - f) / p;
        worst = std::max(worst, rel);
        out << u << ud << p << f << rel;
        out.end_row();
    }
    out.close();
    std::cout << "max relative difference " << format_double(worst) << '\n';
    return 0;
}

int selftest()
{
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
        failures += ok ? 0 : 1;
    };
    ChargeParams gp;
    gp.kind = ChargeKind::Gaussian;
    const ChargeModel gauss(gp);
    check("gaussian field mass", std::abs(gauss.field_mass() - 1.0 / (12 * std::pow(kPi, 1.5))) < 1e-8);
    const ChargeModel bump(ChargeParams{});
    const double k0 = kernel_time_integral(bump, Vec3::Zero());
    check("kernel time integral at rest", std::abs(k0 * 4 * kPi - 1.0) < 1e-4);
    const StraightWorldline rest(Vec3::Zero(), Vec3::Zero());
    check("static retarded time", std::abs(retarded_time(rest, Vec3(2, 0, 0), 5.0) - 3.0) < 1e-12);
    const Vec3 u(0.5, -0.3, 0.2), ud(0.4, 1.0, -0.7);
    check("radiated power quadrature",
          std::abs(flux_sphere_quadrature(u, ud, 1.0) / radiated_power(u, ud, 1.0) - 1.0) < 1e-8);
    check("order fit", std::abs(fit_order({{1, 8}, {0.5, 1}, {0.25, 0.125}}).slope - 3.0) < 1e-12);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Radiation reaction of a charged soliton: effective, comparison and full dynamics"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", o.out, "output directory");
    app.add_option("--eps", o.eps, "comma separated eps list, strictly decreasing");
    app.add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { o.seed = s, o.seed_given = true; }, "random seed");

    struct Cmd {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&);
    };
    const Cmd cmds[] = {
        {"simulate-effective", "integrate the effective Hamiltonian dynamics", simulate_effective},
        {"simulate-manifold", "integrate the comparison dynamics on its first order chart", simulate_manifold},
        {"simulate-third-order", "integrate the third order comparison dynamics from a shot start", simulate_third_order},
        {"simulate-full", "integrate the coupled particle-field dynamics", simulate_full},
        {"converge", "full versus comparison sweep over eps with order fits", converge},
        {"fields", "limit and finite-eps potentials at observation points", fields},
        {"radiation", "radiated power against the far-field flux on random states", radiation},
    };
    int rc = 0;
    for (const auto& c : cmds)
        app.add_subcommand(c.name, c.help)->callback([&o, &rc, run = c.run] { rc = run(resolve(o)); });
    app.add_subcommand("selftest", "quick consistency checks")->callback([&rc] { rc = selftest(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
