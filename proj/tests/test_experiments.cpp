#include "doctest.h"

#include "relaysurv/experiments.hpp"
#include "relaysurv/geometry.hpp"

#include <cstdlib>
#include <sstream>
#include <string>

using namespace relaysurv;

namespace {

RegionMapSpec single_cell_spec(double x, double y) {
    RegionMapSpec spec;
    spec.x_min = spec.x_max = x;
    spec.x_points = 1;
    spec.y_min = spec.y_max = y;
    spec.y_points = 1;
    return spec;
}

} // namespace

TEST_CASE("worker count honours the environment override") {
    setenv("RELAYSURV_THREADS", "3", 1);
    CHECK(default_thread_count() == 3);
    setenv("RELAYSURV_THREADS", "garbage", 1);
    CHECK(default_thread_count() >= 1);
    unsetenv("RELAYSURV_THREADS");
    CHECK(default_thread_count() >= 1);
}

TEST_CASE("cell labels") {
    CHECK(cell_label(CellKind::mode_i) == "I");
    CHECK(cell_label(CellKind::mode_ii) == "II");
    CHECK(cell_label(CellKind::mode_iii) == "III");
    CHECK(cell_label(CellKind::none) == "none");
}

TEST_CASE("region map single cells land on the expected strategies") {
    SUBCASE("next to the source the passive monitor hears everything") {
        const RegionMap map = region_map(single_cell_spec(10.0, 0.0), 1);
        REQUIRE(map.cells.size() == 1);
        CHECK(map.cells[0].kind == CellKind::mode_i);
        CHECK(map.cells[0].rate == doctest::Approx(1.584962500721156).epsilon(1e-12));
    }
    SUBCASE("beyond the destination only hop-2 interference works") {
        const RegionMap map = region_map(single_cell_spec(1200.0, -900.0), 1);
        REQUIRE(map.cells.size() == 1);
        CHECK(map.cells[0].kind == CellKind::mode_iii);
        CHECK(map.cells[0].rate == doctest::Approx(0.18719775739074893).epsilon(1e-12));
    }
    SUBCASE("far out no strategy achieves a positive rate") {
        const RegionMap map = region_map(single_cell_spec(-200.0, -1000.0), 1);
        REQUIRE(map.cells.size() == 1);
        CHECK(map.cells[0].kind == CellKind::none);
        CHECK(map.cells[0].rate == 0.0);
    }
}

TEST_CASE("region map grid layout is row major with y outer") {
    RegionMapSpec spec;
    spec.x_min = 0.0;
    spec.x_max = 100.0;
    spec.x_points = 3;
    spec.y_min = -50.0;
    spec.y_max = 50.0;
    spec.y_points = 2;
    const RegionMap map = region_map(spec, 2);
    REQUIRE(map.cells.size() == 6);
    CHECK(map.cells[0].x == 0.0);
    CHECK(map.cells[0].y == -50.0);
    CHECK(map.cells[1].x == 50.0);
    CHECK(map.cells[2].x == 100.0);
    CHECK(map.cells[3].y == 50.0);
    // a positive rate goes with a real mode, a zero rate with none
    for (const RegionCell& c : map.cells) {
        if (c.kind == CellKind::none)
            CHECK(c.rate == 0.0);
        else
            CHECK(c.rate > 0.0);
    }
}

TEST_CASE("region map is byte stable across worker counts") {
    RegionMapSpec spec;
    spec.x_min = 0.0;
    spec.x_max = 1000.0;
    spec.x_points = 11;
    spec.y_min = -400.0;
    spec.y_max = 400.0;
    spec.y_points = 5;

    std::ostringstream one, four;
    write_region_csv(region_map(spec, 1), one);
    write_region_csv(region_map(spec, 4), four);
    CHECK(one.str() == four.str());
    CHECK(one.str().find("x,y,mode,rate") != std::string::npos);
    CHECK(one.str().find(",I,") != std::string::npos);
}

TEST_CASE("fading sweep is reproducible and coherent") {
    SweepSpec spec;
    spec.xs = {0.0, 500.0, 1000.0};
    spec.trials = 400;

    const SweepResult a = fading_sweep(spec, 1);
    const SweepResult b = fading_sweep(spec, 4);
    REQUIRE(a.rows.size() == 3);
    REQUIRE(b.rows.size() == 3);

    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const SweepRow& ra = a.rows[i];
        const SweepRow& rb = b.rows[i];
        // worker count must not change a single bit
        CHECK(ra.mean_selected == rb.mean_selected);
        for (int m = 0; m < 3; ++m) {
            CHECK(ra.mean_mode[m] == rb.mean_mode[m]);
            CHECK(ra.picks[m] == rb.picks[m]);
        }
        // the selected rate dominates every single mode on average
        for (int m = 0; m < 3; ++m) CHECK(ra.mean_selected >= ra.mean_mode[m]);
        CHECK(ra.picks[0] + ra.picks[1] + ra.picks[2] == spec.trials);
        CHECK(ra.mean_selected > 0.0);
    }
}

TEST_CASE("one sweep trial matches a by-hand replay of its substream") {
    SweepSpec spec;
    spec.xs = {250.0};
    spec.trials = 1;
    spec.seed = 77;

    const SweepResult sweep = fading_sweep(spec, 1);
    REQUIRE(sweep.rows.size() == 1);

    Scenario sc;
    sc.alice = spec.alice;
    sc.relay = spec.relay;
    sc.bob = spec.bob;
    sc.monitor = {250.0, spec.y};
    sc.path_loss = spec.path_loss;
    GaussianStream gs(substream_seed(spec.seed, 0, 0));
    const ChannelState ch = rayleigh_channels(sc, gs);
    const SelectionResult sel = select_mode(ch, spec.params);

    CHECK(sweep.rows[0].mean_selected == sel.best.eavesdropping_rate);
    for (int m = 0; m < 3; ++m)
        CHECK(sweep.rows[0].mean_mode[m] == sel.per_mode[m].eavesdropping_rate);
}

TEST_CASE("sweep csv carries one line per position") {
    SweepSpec spec;
    spec.xs = {0.0, 50.0};
    spec.trials = 16;
    std::ostringstream out;
    write_sweep_csv(fading_sweep(spec, 2), out);
    const std::string text = out.str();
    CHECK(text.find("x,selected,mode_i,mode_ii,mode_iii,picks_i,picks_ii,picks_iii") !=
          std::string::npos);
    CHECK(text.find("\n0,") != std::string::npos);
    CHECK(text.find("\n50,") != std::string::npos);
}

TEST_CASE("single placement diagnostics") {
    Scenario sc;
    sc.alice = {0.0, 0.0};
    sc.relay = {500.0, 0.0};
    sc.bob = {1000.0, 0.0};
    sc.monitor = {1200.0, -900.0};
    const SystemParams params{10000.0, 10000.0, 1e-8, 100000.0};

    SUBCASE("distance-only channels reproduce the frozen cell") {
        const Diagnostics d = evaluate_single(sc, params, FadingModel::awgn);
        CHECK(d.comm_rate == doctest::Approx(1.5849625007211563).epsilon(1e-12));
        CHECK(d.selection.best.mode == Mode::hybrid_jam);
        CHECK(d.selection.best.eavesdropping_rate ==
              doctest::Approx(0.18719775739074893).epsilon(1e-12));
        CHECK(d.rate_relay == d.rate_dest); // symmetric 500 m hops
    }
    SUBCASE("fading draws are trial addressed") {
        const Diagnostics d0 = evaluate_single(sc, params, FadingModel::rayleigh, 9, 0);
        const Diagnostics d0_again = evaluate_single(sc, params, FadingModel::rayleigh, 9, 0);
        const Diagnostics d1 = evaluate_single(sc, params, FadingModel::rayleigh, 9, 1);
        CHECK(d0.ch.h_ar == d0_again.ch.h_ar);
        CHECK(d0.selection.best.eavesdropping_rate ==
              d0_again.selection.best.eavesdropping_rate);
        CHECK(d0.ch.h_ar != d1.ch.h_ar);
    }
}
