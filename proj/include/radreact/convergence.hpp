#pragma once

#include "radreact/charge.hpp"
#include "radreact/config.hpp"
#include "radreact/fullfield.hpp"
#include "radreact/kinematics.hpp"
#include "radreact/memory_kernel.hpp"
#include "radreact/potential.hpp"
#include "radreact/soliton.hpp"
#include "radreact/trajectory.hpp"

#include <string>
#include <utility>
#include <vector>

namespace radreact {

// Everything derived once from a configuration and shared by all eps.
struct RunSetup {
    ChargeModel charge;
    PotentialModel potential;
    SolitonCharts charts;
    double max_speed; // effective speed bound at the initial energy level
    double velocity_bound;
    CoefficientSet coefficients;
    MemoryKernel kernel;
    FullOptions full_options;

    explicit RunSetup(const RunConfig& c);
};

// speed s_max with E_s(s_max) = H0 - inf V, H0 the initial effective energy
double level_speed(const SolitonCharts& charts, const PotentialModel& V, const Vec3& q0, const Vec3& v0);
// s_max + 0.02, kept below 1
double derive_velocity_bound(double max_speed);

struct RunMetrics {
    double eps = 0.0;
    double match_time = 0.0;     // macroscopic eps t1
    double match_mismatch = 0.0; // |(q', v) - (r, u)| at the matching instant
    // maxima over [eps t1, eps t1 + horizon]
    double position = 0.0, velocity = 0.0, acceleration = 0.0, energy = 0.0;
    // maxima over [eps t1, eps t1 + eps short_window]
    double short_position = 0.0, short_velocity = 0.0;
    // over microscopic t >= t1
    double taylor_residual = 0.0;
    double sup_accel = 0.0, sup_jerk = 0.0, sup_snap = 0.0;
    bool aborted = false;
    std::string diagnostic;
    FullTrajectory full;
    MacroTrajectory manifold;
};

struct SlopeFit {
    std::string metric;
    double slope = 0.0, half_width = 0.0; // 95% confidence half width
    int points = 0;
    std::string note;
};

struct ConvergenceReport {
    std::string config_hash, charge_hash;
    double velocity_bound = 0.0, memory_time = 0.0, clamp_delta = 0.0, field_mass = 0.0;
    PotentialParams potential;
    std::vector<RunMetrics> runs;
    std::vector<SlopeFit> slopes;
};

// log-log least squares; pairs with err == 0 are dropped and noted
SlopeFit fit_order(const std::vector<std::pair<double, double>>& pairs);

RunMetrics compare_one(const RunSetup& setup, const RunConfig& config, double eps);
ConvergenceReport run_comparison(const RunConfig& config);

// report.csv, slopes.csv, full_eps_<eps>.csv, manifold_eps_<eps>.csv, manifest
void emit_report(const ConvergenceReport& report, const std::string& directory);

void write_macro_csv(const std::string& path, const MacroTrajectory& t, const SolitonCharts& charts,
                     const PotentialModel& V, bool with_manifold_columns);
void write_full_csv(const std::string& path, const FullTrajectory& t, const SolitonCharts& charts,
                    const PotentialModel& V);

extern const char* const kVersion;

} // namespace radreact
