#pragma once

#include "relaysurv/geometry.hpp"
#include "relaysurv/model.hpp"
#include "relaysurv/optimize.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace relaysurv {

// Worker count for the experiment drivers: RELAYSURV_THREADS when set to a
// positive integer, otherwise the hardware concurrency. The outputs are
// byte-identical for every worker count; threads only change wall time.
int default_thread_count();

// Which eavesdropping strategy wins at a monitor location, if any.
enum class CellKind {
    mode_i,
    mode_ii,
    mode_iii,
    none, // no mode achieves a positive rate
};

std::string_view cell_label(CellKind k);

struct RegionMapSpec {
    SystemParams params{10000.0, 10000.0, 1e-8, 100000.0};
    Vec2 alice{0.0, 0.0};
    Vec2 relay{500.0, 0.0};
    Vec2 bob{1000.0, 0.0};
    PathLossModel path_loss{};
    double x_min = -200.0, x_max = 1200.0;
    int x_points = 141;
    double y_min = -1000.0, y_max = 1000.0;
    int y_points = 201;
};

struct RegionCell {
    double x = 0.0;
    double y = 0.0;
    CellKind kind = CellKind::none;
    double rate = 0.0;
};

struct RegionMap {
    RegionMapSpec spec;
    std::vector<RegionCell> cells; // row-major, y outer, x inner
};

// Sweeps the monitor over the grid under deterministic distance-only
// channels and records the winning mode per cell.
RegionMap region_map(const RegionMapSpec& spec, int threads = 0);

void write_region_csv(const RegionMap& map, std::ostream& out);

struct SweepSpec {
    SystemParams params{10000.0, 10000.0, 1e-8, 100000.0};
    Vec2 alice{0.0, 0.0};
    Vec2 relay{500.0, 0.0};
    Vec2 bob{1000.0, 0.0};
    PathLossModel path_loss{};
    std::vector<double> xs;   // monitor x positions; default_sweep_xs() if empty
    double y = 500.0;         // monitor y position
    int trials = 10000;       // fading realizations per position
    std::uint64_t seed = 2024;
};

std::vector<double> default_sweep_xs(); // 0..1000 in steps of 50

struct SweepRow {
    double x = 0.0;
    double mean_selected = 0.0;
    double mean_mode[3] = {0.0, 0.0, 0.0};
    int picks[3] = {0, 0, 0}; // how often each mode won (ties to lowest index)
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
};

// Monte-Carlo average of the best and per-mode eavesdropping rates under
// independent fading, one row per monitor position. Trial t of column j
// always uses the same substream, so results do not depend on the worker
// count or on which other columns are present.
SweepResult fading_sweep(const SweepSpec& spec, int threads = 0);

void write_sweep_csv(const SweepResult& sweep, std::ostream& out);

// One monitor placement evaluated end to end, for the CLI's inspection
// command. Fading draws use substream (seed, 0, trial).
struct Diagnostics {
    ChannelState ch;
    double rate_relay = 0.0;
    double rate_dest = 0.0;
    double comm_rate = 0.0;
    SelectionResult selection;
};

Diagnostics evaluate_single(const Scenario& sc, const SystemParams& params,
                            FadingModel fading, std::uint64_t seed = 0,
                            std::uint64_t trial = 0);

} // namespace relaysurv
