#include "relaysurv/cli.hpp"

#include "relaysurv/config.hpp"
#include "relaysurv/experiments.hpp"
#include "relaysurv/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>

namespace relaysurv {

namespace {

using nlohmann::json;

json outcome_to_json(const ModeOutcome& o) {
    json j;
    j["mode"] = std::string(mode_label(o.mode));
    j["eavesdropping_rate"] = o.eavesdropping_rate;
    j["success"] = o.success;
    j["comm_rate_under_jamming"] = o.comm_rate_under_jamming;
    if (const auto* n = std::get_if<NoiseJamDecision>(&o.decision)) {
        j["jam_power_mw"] = n->jam_power;
    } else if (const auto* h = std::get_if<HybridJamDecision>(&o.decision)) {
        j["forward_gain"] = h->forward_gain;
        j["jam_power_mw"] = h->jam_power;
    }
    return j;
}

int write_csv(const std::string& path, std::ostream& out, std::ostream& err,
              const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(out);
        return 0;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "cannot open output file " << path << "\n";
        return 1;
    }
    writer(file);
    return 0;
}

void print_check(std::ostream& out, const CheckResult& c) {
    out << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  (checked " << c.checked
        << ", failures " << c.failures << ", worst error " << c.worst_error << ")\n";
    if (!c.detail.empty()) out << "      " << c.detail << "\n";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"eavesdropping planner for a monitored two-hop relay link"};
    app.name("relaysurv");

    std::string config_path;
    app.add_option("--config", config_path, "JSON configuration file");
    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: RELAYSURV_THREADS or all cores)");
    std::uint64_t seed_value = 0;
    CLI::Option* seed_opt = app.add_option("--seed", seed_value, "override the random seed");
    app.require_subcommand(1);

    CLI::App* region_cmd =
        app.add_subcommand("region", "map the winning mode over monitor positions");
    std::string region_out;
    region_cmd->add_option("--out", region_out, "write CSV here instead of stdout");
    double rx_min = 0, rx_max = 0, ry_min = 0, ry_max = 0;
    int rx_points = 0, ry_points = 0;
    CLI::Option* rx_min_opt = region_cmd->add_option("--x-min", rx_min);
    CLI::Option* rx_max_opt = region_cmd->add_option("--x-max", rx_max);
    CLI::Option* rx_points_opt = region_cmd->add_option("--x-points", rx_points);
    CLI::Option* ry_min_opt = region_cmd->add_option("--y-min", ry_min);
    CLI::Option* ry_max_opt = region_cmd->add_option("--y-max", ry_max);
    CLI::Option* ry_points_opt = region_cmd->add_option("--y-points", ry_points);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "average rates under fading along a monitor path");
    std::string sweep_out;
    sweep_cmd->add_option("--out", sweep_out, "write CSV here instead of stdout");
    int sweep_trials = 0;
    CLI::Option* sweep_trials_opt =
        sweep_cmd->add_option("--trials", sweep_trials, "fading realizations per position");
    double sweep_y = 0;
    CLI::Option* sweep_y_opt = sweep_cmd->add_option("--y", sweep_y, "monitor y position");

    CLI::App* eval_cmd =
        app.add_subcommand("eval", "evaluate one monitor placement and print JSON");
    double mon_x = 0, mon_y = 0;
    eval_cmd->add_option("--monitor-x", mon_x, "monitor x position")->required();
    eval_cmd->add_option("--monitor-y", mon_y, "monitor y position")->required();
    std::string fading = "awgn";
    eval_cmd->add_option("--fading", fading, "channel model: awgn or rayleigh")
        ->check(CLI::IsMember({"awgn", "rayleigh"}));
    std::uint64_t trial = 0;
    eval_cmd->add_option("--trial", trial, "fading trial index");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "cross-check the closed forms against brute force");
    VerifyOptions vopt;
    verify_cmd->add_option("--instances", vopt.instances, "instances per comparison");
    verify_cmd->add_option("--invariant-instances", vopt.invariant_instances,
                           "instances for the invariant sweep");
    verify_cmd->add_option("--rate-tol", vopt.rate_tol, "rate comparison tolerance");
    verify_cmd->add_option("--residual-tol", vopt.residual_tol, "target solver tolerance");
    verify_cmd->add_option("--power-tol", vopt.power_tol, "budget tightness tolerance");
    verify_cmd->add_option("--grid-1d", vopt.grid_1d, "power grid for the hop-1 search");
    verify_cmd->add_option("--grid-2d", vopt.grid_2d, "per-axis grid for the hop-2 search");
    verify_cmd->add_option("--gain-draws", vopt.gain_draws, "draws for the fading mean check");

    // CLI11's vector parse reorders; go through the argv form instead.
    std::vector<const char*> argv;
    argv.push_back("relaysurv");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    AppConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config_file(config_path);
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return 2;
    }
    if (seed_opt->count() > 0) {
        cfg.seed = seed_value;
        cfg.sweep.seed = seed_value;
    }

    try {
        if (region_cmd->parsed()) {
            RegionMapSpec spec = cfg.region;
            if (rx_min_opt->count()) spec.x_min = rx_min;
            if (rx_max_opt->count()) spec.x_max = rx_max;
            if (rx_points_opt->count()) spec.x_points = rx_points;
            if (ry_min_opt->count()) spec.y_min = ry_min;
            if (ry_max_opt->count()) spec.y_max = ry_max;
            if (ry_points_opt->count()) spec.y_points = ry_points;
            if (spec.x_points < 1 || spec.y_points < 1) {
                err << "region grid needs at least one point per axis\n";
                return 2;
            }
            const RegionMap map = region_map(spec, threads);
            return write_csv(region_out, out, err,
                             [&](std::ostream& os) { write_region_csv(map, os); });
        }

        if (sweep_cmd->parsed()) {
            SweepSpec spec = cfg.sweep;
            if (sweep_trials_opt->count()) spec.trials = sweep_trials;
            if (sweep_y_opt->count()) spec.y = sweep_y;
            if (spec.trials < 1) {
                err << "sweep needs at least one trial\n";
                return 2;
            }
            const SweepResult res = fading_sweep(spec, threads);
            return write_csv(sweep_out, out, err,
                             [&](std::ostream& os) { write_sweep_csv(res, os); });
        }

        if (eval_cmd->parsed()) {
            Scenario sc;
            sc.alice = cfg.region.alice;
            sc.relay = cfg.region.relay;
            sc.bob = cfg.region.bob;
            sc.path_loss = cfg.region.path_loss;
            sc.monitor = {mon_x, mon_y};
            const FadingModel model =
                fading == "awgn" ? FadingModel::awgn : FadingModel::rayleigh;
            const Diagnostics d =
                evaluate_single(sc, cfg.region.params, model, cfg.seed, trial);

            json j;
            j["monitor"] = {mon_x, mon_y};
            j["fading"] = fading;
            j["rate_relay"] = d.rate_relay;
            j["rate_destination"] = d.rate_dest;
            j["comm_rate"] = d.comm_rate;
            j["best_mode"] = std::string(mode_label(d.selection.best.mode));
            j["best_rate"] = d.selection.best.eavesdropping_rate;
            json modes = json::array();
            for (const ModeOutcome& o : d.selection.per_mode) modes.push_back(outcome_to_json(o));
            j["modes"] = modes;
            out << j.dump(2) << "\n";
            return 0;
        }

        // verify
        if (seed_opt->count() > 0) vopt.seed = seed_value;
        const VerifyReport rep = run_verification(vopt);
        print_check(out, rep.noise_jam);
        print_check(out, rep.bob_min);
        print_check(out, rep.hybrid);
        print_check(out, rep.hybrid_complete);
        print_check(out, rep.target_residual);
        print_check(out, rep.invariants);
        print_check(out, rep.channel_gain);
        out << "amplification-capable instances set aside: " << rep.amplification_instances
            << "\n";
        out << (rep.all_passed ? "all checks passed\n" : "some checks FAILED\n");
        return rep.all_passed ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace relaysurv
