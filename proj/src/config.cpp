#include "relaysurv/config.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace relaysurv {

using nlohmann::json;

double dbm_to_mw(double dbm) {
    return std::pow(10.0, dbm / 10.0);
}

namespace {

[[noreturn]] void fail(const std::string& src, const std::string& msg) {
    throw ConfigError(src + ": " + msg);
}

std::string joined(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

// Typos should not silently fall back to defaults.
void reject_unknown_keys(const std::string& src, const json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known) fail(src, "unknown key \"" + joined(path, it.key()) + "\"");
    }
}

const json& child_object(const std::string& src, const json& root, const char* key) {
    const json& v = root.at(key);
    if (!v.is_object()) fail(src, std::string(key) + " must be an object");
    return v;
}

double get_number(const std::string& src, const json& obj, const std::string& path,
                  const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(src, joined(path, key) + " must be a number");
    return v.get<double>();
}

int get_int(const std::string& src, const json& obj, const std::string& path,
            const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(src, joined(path, key) + " must be an integer");
    return v.get<int>();
}

// dBm fields take a number or the string "-inf" (zero linear power).
double get_dbm_linear(const std::string& src, const json& obj, const std::string& path,
                      const char* key, double fallback_linear) {
    if (!obj.contains(key)) return fallback_linear;
    const json& v = obj.at(key);
    if (v.is_string()) {
        if (v.get<std::string>() == "-inf") return 0.0;
        fail(src, joined(path, key) + " must be a number or \"-inf\"");
    }
    if (!v.is_number()) fail(src, joined(path, key) + " must be a number or \"-inf\"");
    const double linear = dbm_to_mw(v.get<double>());
    if (!std::isfinite(linear))
        fail(src, joined(path, key) + " converts to a non-finite linear power");
    return linear;
}

Vec2 get_vec2(const std::string& src, const json& obj, const std::string& path,
              const char* key, Vec2 fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail(src, joined(path, key) + " must be an array of two numbers");
    return {v[0].get<double>(), v[1].get<double>()};
}

} // namespace

AppConfig parse_config(const std::string& text, const std::string& source_name) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(source_name, e.what()); // includes the byte position of the defect
    }
    if (!root.is_object()) fail(source_name, "top level must be an object");
    reject_unknown_keys(source_name, root, "",
                        {"params", "geometry", "path_loss", "region", "sweep", "seed"});

    AppConfig cfg;
    SystemParams params = cfg.region.params; // defaults
    Vec2 alice = cfg.region.alice, relay = cfg.region.relay, bob = cfg.region.bob;
    PathLossModel pl = cfg.region.path_loss;

    if (root.contains("params")) {
        const json& pj = child_object(source_name, root, "params");
        reject_unknown_keys(source_name, pj, "params",
                            {"power_alice_dbm", "power_relay_dbm", "noise_power_dbm",
                             "jam_budget_dbm"});
        params.power_alice =
            get_dbm_linear(source_name, pj, "params", "power_alice_dbm", params.power_alice);
        params.power_relay =
            get_dbm_linear(source_name, pj, "params", "power_relay_dbm", params.power_relay);
        params.noise_power =
            get_dbm_linear(source_name, pj, "params", "noise_power_dbm", params.noise_power);
        params.jam_budget =
            get_dbm_linear(source_name, pj, "params", "jam_budget_dbm", params.jam_budget);
    }
    if (!(params.power_alice > 0.0))
        fail(source_name, "params.power_alice_dbm must yield a positive transmit power");
    if (!(params.power_relay > 0.0))
        fail(source_name, "params.power_relay_dbm must yield a positive transmit power");
    if (!(params.noise_power > 0.0))
        fail(source_name, "params.noise_power_dbm must yield a positive noise power");
    if (!(params.jam_budget >= 0.0))
        fail(source_name, "params.jam_budget_dbm must yield a non-negative budget");

    if (root.contains("geometry")) {
        const json& gj = child_object(source_name, root, "geometry");
        reject_unknown_keys(source_name, gj, "geometry", {"alice", "relay", "bob"});
        alice = get_vec2(source_name, gj, "geometry", "alice", alice);
        relay = get_vec2(source_name, gj, "geometry", "relay", relay);
        bob = get_vec2(source_name, gj, "geometry", "bob", bob);
    }

    if (root.contains("path_loss")) {
        const json& lj = child_object(source_name, root, "path_loss");
        reject_unknown_keys(source_name, lj, "path_loss",
                            {"ref_gain_db", "ref_distance", "exponent"});
        const double ref_gain_db = get_number(source_name, lj, "path_loss", "ref_gain_db",
                                              10.0 * std::log10(pl.kappa));
        pl.kappa = std::pow(10.0, ref_gain_db / 10.0);
        pl.ref_distance =
            get_number(source_name, lj, "path_loss", "ref_distance", pl.ref_distance);
        pl.exponent = get_number(source_name, lj, "path_loss", "exponent", pl.exponent);
        if (!(pl.kappa > 0.0) || !std::isfinite(pl.kappa))
            fail(source_name, "path_loss.ref_gain_db must yield a positive finite gain");
        if (!(pl.ref_distance > 0.0))
            fail(source_name, "path_loss.ref_distance must be positive");
        if (!(pl.exponent >= 0.0))
            fail(source_name, "path_loss.exponent must be non-negative");
    }

    if (root.contains("region")) {
        const json& rj = child_object(source_name, root, "region");
        reject_unknown_keys(source_name, rj, "region",
                            {"x_min", "x_max", "x_points", "y_min", "y_max", "y_points"});
        RegionMapSpec& r = cfg.region;
        r.x_min = get_number(source_name, rj, "region", "x_min", r.x_min);
        r.x_max = get_number(source_name, rj, "region", "x_max", r.x_max);
        r.x_points = get_int(source_name, rj, "region", "x_points", r.x_points);
        r.y_min = get_number(source_name, rj, "region", "y_min", r.y_min);
        r.y_max = get_number(source_name, rj, "region", "y_max", r.y_max);
        r.y_points = get_int(source_name, rj, "region", "y_points", r.y_points);
        if (r.x_points < 1) fail(source_name, "region.x_points must be at least 1");
        if (r.y_points < 1) fail(source_name, "region.y_points must be at least 1");
        if (r.x_max < r.x_min) fail(source_name, "region.x_max must not be below region.x_min");
        if (r.y_max < r.y_min) fail(source_name, "region.y_max must not be below region.y_min");
    }

    double sweep_x_min = 0.0, sweep_x_max = 1000.0, sweep_x_step = 50.0;
    if (root.contains("sweep")) {
        const json& sj = child_object(source_name, root, "sweep");
        reject_unknown_keys(source_name, sj, "sweep",
                            {"y", "x_min", "x_max", "x_step", "trials"});
        cfg.sweep.y = get_number(source_name, sj, "sweep", "y", cfg.sweep.y);
        sweep_x_min = get_number(source_name, sj, "sweep", "x_min", sweep_x_min);
        sweep_x_max = get_number(source_name, sj, "sweep", "x_max", sweep_x_max);
        sweep_x_step = get_number(source_name, sj, "sweep", "x_step", sweep_x_step);
        cfg.sweep.trials = get_int(source_name, sj, "sweep", "trials", cfg.sweep.trials);
        if (cfg.sweep.trials < 1) fail(source_name, "sweep.trials must be at least 1");
        if (!(sweep_x_step > 0.0)) fail(source_name, "sweep.x_step must be positive");
        if (sweep_x_max < sweep_x_min)
            fail(source_name, "sweep.x_max must not be below sweep.x_min");
    }

    if (root.contains("seed")) {
        const json& v = root.at("seed");
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                       v.get<long long>() < 0))
            fail(source_name, "seed must be a non-negative integer");
        cfg.seed = v.get<std::uint64_t>();
    }

    // Sync the shared pieces into both experiment specs.
    cfg.region.params = params;
    cfg.region.alice = alice;
    cfg.region.relay = relay;
    cfg.region.bob = bob;
    cfg.region.path_loss = pl;
    cfg.sweep.params = params;
    cfg.sweep.alice = alice;
    cfg.sweep.relay = relay;
    cfg.sweep.bob = bob;
    cfg.sweep.path_loss = pl;
    cfg.sweep.seed = cfg.seed;

    const int steps =
        static_cast<int>(std::floor((sweep_x_max - sweep_x_min) / sweep_x_step + 1e-9));
    cfg.sweep.xs.clear();
    for (int i = 0; i <= steps; ++i)
        cfg.sweep.xs.push_back(sweep_x_min + sweep_x_step * i);

    return cfg;
}

AppConfig load_config_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_config(buffer.str(), path);
}

} // namespace relaysurv
