#pragma once

#include "radreact/charge.hpp"
#include "radreact/common.hpp"
#include "radreact/potential.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace radreact {

struct RunConfig {
    ChargeParams charge;
    PotentialParams potential{PotentialKind::Harmonic};
    std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
    Vec3 q0{1.0, 0.0, 0.0};
    Vec3 v0{0.0, 0.3, 0.0};
    double horizon = 2.0;      // macroscopic comparison window after matching
    double short_window = 2.0; // short window length in units of eps
    std::optional<double> velocity_bound; // derived from the energy level when absent
    std::optional<double> clamp_delta;    // derived from the velocity bound when absent
    double micro_step = 0.05;
    double macro_step = 1e-3;
    int force_nodes = 8;
    double force_panel = 0.25;
    int kernel_cells = 1024;
    int field_nodes = 48;
    int derivative_stride = 10;
    std::vector<Vec3> field_points;
    double field_time = 1.0;
    int radiation_samples = 100;
    std::string output = "out";
    std::uint64_t seed = 1;
};

// Strict JSON reading: unknown keys and wrongly typed values are errors.
// Absent keys keep their defaults.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
// canonical JSON of every field, defaults included
std::string to_json(const RunConfig& c);
// throws std::invalid_argument naming the offending field
void validate(const RunConfig& c);
// FNV-1a of the canonical JSON, output directory excluded
std::string config_hash(const RunConfig& c);

} // namespace radreact
