#include "radreact/config.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace radreact {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed)
{
    if (!j.is_object())
        throw std::invalid_argument(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("unknown configuration key '" + where + it.key() + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where)
{
    if (!j.contains(key))
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw std::invalid_argument("configuration key '" + where + key + "': " + e.what());
    }
}

Vec3 to_vec(const json& j, const std::string& name)
{
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("configuration key '" + name + "' must be an array of 3 numbers");
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_number())
            throw std::invalid_argument("configuration key '" + name + "' must be an array of 3 numbers");
        v(i) = j[i].get<double>();
    }
    return v;
}

json from_vec(const Vec3& v) { return json::array({v(0), v(1), v(2)}); }

} // namespace

RunConfig parse_config(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("configuration is not valid JSON: ") + e.what());
    }
    RunConfig c;
    check_keys(j, "", {"charge", "potential", "eps", "initial", "horizon", "short_window", "velocity_bound",
                       "clamp_delta", "steps", "quadrature", "fields", "radiation_samples", "output", "seed"});
    if (j.contains("charge")) {
        const auto& s = j["charge"];
        check_keys(s, "charge.", {"kind", "radius", "total_charge", "spectral_resolution", "strict_compact"});
        std::string kind = to_string(c.charge.kind);
        read(s, "kind", kind, "charge.");
        c.charge.kind = parse_charge_kind(kind);
        read(s, "radius", c.charge.radius, "charge.");
        read(s, "total_charge", c.charge.total_charge, "charge.");
        read(s, "spectral_resolution", c.charge.spectral_resolution, "charge.");
        read(s, "strict_compact", c.charge.strict_compact, "charge.");
    }
    if (j.contains("potential")) {
        const auto& s = j["potential"];
        check_keys(s, "potential.", {"kind", "stiffness", "depth", "width", "center"});
        std::string kind = to_string(c.potential.kind);
        read(s, "kind", kind, "potential.");
        c.potential.kind = parse_potential_kind(kind);
        read(s, "stiffness", c.potential.stiffness, "potential.");
        read(s, "depth", c.potential.depth, "potential.");
        read(s, "width", c.potential.width, "potential.");
        if (s.contains("center"))
            c.potential.center = to_vec(s["center"], "potential.center");
    }
    read(j, "eps", c.eps, "");
    if (j.contains("initial")) {
        const auto& s = j["initial"];
        check_keys(s, "initial.", {"position", "velocity"});
        if (s.contains("position"))
            c.q0 = to_vec(s["position"], "initial.position");
        if (s.contains("velocity"))
            c.v0 = to_vec(s["velocity"], "initial.velocity");
    }
    read(j, "horizon", c.horizon, "");
    read(j, "short_window", c.short_window, "");
    if (j.contains("velocity_bound") && !j["velocity_bound"].is_null()) {
        double v = 0;
        read(j, "velocity_bound", v, "");
        c.velocity_bound = v;
    }
    if (j.contains("clamp_delta") && !j["clamp_delta"].is_null()) {
        double v = 0;
        read(j, "clamp_delta", v, "");
        c.clamp_delta = v;
    }
    if (j.contains("steps")) {
        const auto& s = j["steps"];
        check_keys(s, "steps.", {"micro", "macro"});
        read(s, "micro", c.micro_step, "steps.");
        read(s, "macro", c.macro_step, "steps.");
    }
    if (j.contains("quadrature")) {
        const auto& s = j["quadrature"];
        check_keys(s, "quadrature.",
                   {"force_nodes", "force_panel", "kernel_cells", "field_nodes", "derivative_stride"});
        read(s, "force_nodes", c.force_nodes, "quadrature.");
        read(s, "force_panel", c.force_panel, "quadrature.");
        read(s, "kernel_cells", c.kernel_cells, "quadrature.");
        read(s, "field_nodes", c.field_nodes, "quadrature.");
        read(s, "derivative_stride", c.derivative_stride, "quadrature.");
    }
    if (j.contains("fields")) {
        const auto& s = j["fields"];
        check_keys(s, "fields.", {"points", "time"});
        if (s.contains("points")) {
            if (!s["points"].is_array())
                throw std::invalid_argument("configuration key 'fields.points' must be an array");
            c.field_points.clear();
            for (const auto& p : s["points"])
                c.field_points.push_back(to_vec(p, "fields.points"));
        }
        read(s, "time", c.field_time, "fields.");
    }
    read(j, "radiation_samples", c.radiation_samples, "");
    read(j, "output", c.output, "");
    read(j, "seed", c.seed, "");
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open configuration " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_json(const RunConfig& c)
{
    json j;
    j["charge"] = {{"kind", to_string(c.charge.kind)},
                   {"radius", c.charge.radius},
                   {"total_charge", c.charge.total_charge},
                   {"spectral_resolution", c.charge.spectral_resolution},
                   {"strict_compact", c.charge.strict_compact}};
    j["potential"] = {{"kind", to_string(c.potential.kind)},
                      {"stiffness", c.potential.stiffness},
                      {"depth", c.potential.depth},
                      {"width", c.potential.width},
                      {"center", from_vec(c.potential.center)}};
    j["eps"] = c.eps;
    j["initial"] = {{"position", from_vec(c.q0)}, {"velocity", from_vec(c.v0)}};
    j["horizon"] = c.horizon;
    j["short_window"] = c.short_window;
    j["velocity_bound"] = c.velocity_bound ? json(*c.velocity_bound) : json(nullptr);
    j["clamp_delta"] = c.clamp_delta ? json(*c.clamp_delta) : json(nullptr);
    j["steps"] = {{"micro", c.micro_step}, {"macro", c.macro_step}};
    j["quadrature"] = {{"force_nodes", c.force_nodes},
                       {"force_panel", c.force_panel},
                       {"kernel_cells", c.kernel_cells},
                       {"field_nodes", c.field_nodes},
                       {"derivative_stride", c.derivative_stride}};
    json pts = json::array();
    for (const auto& p : c.field_points)
        pts.push_back(from_vec(p));
    j["fields"] = {{"points", pts}, {"time", c.field_time}};
    j["radiation_samples"] = c.radiation_samples;
    j["output"] = c.output;
    j["seed"] = c.seed;
    return j.dump(2);
}

void validate(const RunConfig& c)
{
    auto fail = [](const std::string& m) { throw std::invalid_argument("invalid configuration: " + m); };
    if (c.eps.empty())
        fail("eps list is empty");
    for (std::size_t i = 0; i < c.eps.size(); ++i) {
        if (!(c.eps[i] > 0.0))
            fail("eps values must be positive");
        if (i > 0 && !(c.eps[i] < c.eps[i - 1]))
            fail("eps list must be strictly decreasing");
    }
    if (!(c.v0.norm() < 1.0))
        fail("initial speed must be below 1");
    if (!(c.horizon > 0.0))
        fail("horizon must be positive");
    if (!(c.short_window > 0.0))
        fail("short_window must be positive");
    if (c.velocity_bound && !(*c.velocity_bound > c.v0.norm() && *c.velocity_bound < 1.0))
        fail("velocity_bound must lie between the initial speed and 1");
    if (c.clamp_delta && !(*c.clamp_delta > 0.0 && *c.clamp_delta < 1.0))
        fail("clamp_delta must lie in (0, 1)");
    if (!(c.micro_step > 0.0) || !(c.macro_step > 0.0))
        fail("steps must be positive");
    if (c.force_nodes < 2 || !(c.force_panel > 0.0) || c.kernel_cells < 16 || c.field_nodes < 4 ||
        c.derivative_stride < 1)
        fail("quadrature settings out of range");
    if (!(c.charge.radius > 0.0))
        fail("charge radius must be positive");
    if (c.radiation_samples < 1)
        fail("radiation_samples must be positive");
}

std::string config_hash(const RunConfig& c)
{
    // where results are written does not change them
    RunConfig keyed = c;
    keyed.output.clear();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : to_json(keyed)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace radreact
