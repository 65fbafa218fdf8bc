#include "relaysurv/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <thread>

namespace relaysurv {

namespace {

// Fixed-format numbers so experiment outputs are byte-stable across runs,
// worker counts, and toolchains.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double lerp_grid(double lo, double hi, int i, int n) {
    if (n <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    if (threads <= 0) threads = default_thread_count();
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&fn, t, n, threads] {
            for (int i = t; i < n; i += threads) fn(i);
        });
    for (auto& th : pool) th.join();
}

void write_geometry_header(std::ostream& out, const SystemParams& p, Vec2 alice,
                           Vec2 relay, Vec2 bob, const PathLossModel& pl) {
    out << "# alice " << fmt(alice.x) << ' ' << fmt(alice.y) << '\n';
    out << "# relay " << fmt(relay.x) << ' ' << fmt(relay.y) << '\n';
    out << "# bob " << fmt(bob.x) << ' ' << fmt(bob.y) << '\n';
    out << "# power_alice_mw " << fmt(p.power_alice) << " power_relay_mw "
        << fmt(p.power_relay) << " noise_mw " << fmt(p.noise_power) << " jam_budget_mw "
        << fmt(p.jam_budget) << '\n';
    out << "# path_loss kappa " << fmt(pl.kappa) << " ref_distance " << fmt(pl.ref_distance)
        << " exponent " << fmt(pl.exponent) << '\n';
}

} // namespace

int default_thread_count() {
    if (const char* env = std::getenv("RELAYSURV_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string_view cell_label(CellKind k) {
    switch (k) {
    case CellKind::mode_i:   return "I";
    case CellKind::mode_ii:  return "II";
    case CellKind::mode_iii: return "III";
    case CellKind::none:     return "none";
    }
    return "?";
}

RegionMap region_map(const RegionMapSpec& spec, int threads) {
    RegionMap map;
    map.spec = spec;
    map.cells.resize(static_cast<std::size_t>(spec.x_points) * spec.y_points);

    Scenario sc;
    sc.alice = spec.alice;
    sc.relay = spec.relay;
    sc.bob = spec.bob;
    sc.path_loss = spec.path_loss;

    parallel_for(spec.y_points, threads, [&](int iy) {
        Scenario local = sc;
        const double y = lerp_grid(spec.y_min, spec.y_max, iy, spec.y_points);
        for (int ix = 0; ix < spec.x_points; ++ix) {
            const double x = lerp_grid(spec.x_min, spec.x_max, ix, spec.x_points);
            local.monitor = {x, y};
            const ChannelState ch = awgn_channels(local);
            const SelectionResult sel = select_mode(ch, spec.params);

            RegionCell& cell = map.cells[static_cast<std::size_t>(iy) * spec.x_points + ix];
            cell.x = x;
            cell.y = y;
            cell.rate = sel.best.eavesdropping_rate;
            if (cell.rate > 0.0) {
                switch (sel.best.mode) {
                case Mode::passive:    cell.kind = CellKind::mode_i; break;
                case Mode::noise_jam:  cell.kind = CellKind::mode_ii; break;
                case Mode::hybrid_jam: cell.kind = CellKind::mode_iii; break;
                }
            } else {
                cell.kind = CellKind::none;
            }
        }
    });
    return map;
}

void write_region_csv(const RegionMap& map, std::ostream& out) {
    const RegionMapSpec& s = map.spec;
    out << "# monitor placement region map\n";
    write_geometry_header(out, s.params, s.alice, s.relay, s.bob, s.path_loss);
    out << "# x " << fmt(s.x_min) << ' ' << fmt(s.x_max) << ' ' << s.x_points << '\n';
    out << "# y " << fmt(s.y_min) << ' ' << fmt(s.y_max) << ' ' << s.y_points << '\n';
    out << "x,y,mode,rate\n";
    for (const RegionCell& c : map.cells)
        out << fmt(c.x) << ',' << fmt(c.y) << ',' << cell_label(c.kind) << ','
            << fmt(c.rate) << '\n';
}

std::vector<double> default_sweep_xs() {
    std::vector<double> xs;
    for (int i = 0; i <= 20; ++i) xs.push_back(50.0 * i);
    return xs;
}

SweepResult fading_sweep(const SweepSpec& spec, int threads) {
    SweepResult result;
    result.spec = spec;
    if (result.spec.xs.empty()) result.spec.xs = default_sweep_xs();
    const std::vector<double>& xs = result.spec.xs;
    result.rows.resize(xs.size());

    Scenario sc;
    sc.alice = spec.alice;
    sc.relay = spec.relay;
    sc.bob = spec.bob;
    sc.path_loss = spec.path_loss;

    // One worker owns one column and walks its trials in index order, so the
    // accumulation order (and thus every rounding) is fixed by (seed, column,
    // trial) alone.
    parallel_for(static_cast<int>(xs.size()), threads, [&](int j) {
        Scenario local = sc;
        local.monitor = {xs[static_cast<std::size_t>(j)], spec.y};
        SweepRow row;
        row.x = local.monitor.x;
        double sum_best = 0.0;
        double sum_mode[3] = {0.0, 0.0, 0.0};
        for (int t = 0; t < spec.trials; ++t) {
            GaussianStream gs(substream_seed(spec.seed, static_cast<std::uint64_t>(j),
                                             static_cast<std::uint64_t>(t)));
            const ChannelState ch = rayleigh_channels(local, gs);
            const SelectionResult sel = select_mode(ch, spec.params);
            sum_best += sel.best.eavesdropping_rate;
            for (int m = 0; m < 3; ++m)
                sum_mode[m] += sel.per_mode[m].eavesdropping_rate;
            ++row.picks[static_cast<int>(sel.best.mode)];
        }
        row.mean_selected = sum_best / spec.trials;
        for (int m = 0; m < 3; ++m) row.mean_mode[m] = sum_mode[m] / spec.trials;
        result.rows[static_cast<std::size_t>(j)] = row;
    });
    return result;
}

void write_sweep_csv(const SweepResult& sweep, std::ostream& out) {
    const SweepSpec& s = sweep.spec;
    out << "# fading sweep of the monitor position\n";
    write_geometry_header(out, s.params, s.alice, s.relay, s.bob, s.path_loss);
    out << "# monitor_y " << fmt(s.y) << " trials " << s.trials << " seed " << s.seed
        << '\n';
    out << "x,selected,mode_i,mode_ii,mode_iii,picks_i,picks_ii,picks_iii\n";
    for (const SweepRow& r : sweep.rows)
        out << fmt(r.x) << ',' << fmt(r.mean_selected) << ',' << fmt(r.mean_mode[0]) << ','
            << fmt(r.mean_mode[1]) << ',' << fmt(r.mean_mode[2]) << ',' << r.picks[0]
            << ',' << r.picks[1] << ',' << r.picks[2] << '\n';
}

Diagnostics evaluate_single(const Scenario& sc, const SystemParams& params,
                            FadingModel fading, std::uint64_t seed, std::uint64_t trial) {
    Diagnostics d;
    if (fading == FadingModel::awgn) {
        d.ch = awgn_channels(sc);
    } else {
        GaussianStream gs(substream_seed(seed, 0, trial));
        d.ch = rayleigh_channels(sc, gs);
    }
    d.rate_relay = rate_hop1(d.ch, params);
    d.rate_dest = rate_hop2_plain(d.ch, params);
    d.comm_rate = end_to_end_rate(d.rate_relay, d.rate_dest);
    d.selection = select_mode(d.ch, params);
    return d;
}

} // namespace relaysurv
