#include "doctest.h"

#include "relaysurv/config.hpp"

#include <string>

using namespace relaysurv;

namespace {

bool fails_mentioning(const std::string& text, const std::string& needle) {
    try {
        (void)parse_config(text, "cfg");
    } catch (const ConfigError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

} // namespace

TEST_CASE("dbm conversion landmarks") {
    CHECK(dbm_to_mw(0.0) == 1.0);
    CHECK(dbm_to_mw(40.0) == doctest::Approx(10000.0).epsilon(1e-12));
    CHECK(dbm_to_mw(50.0) == doctest::Approx(100000.0).epsilon(1e-12));
    CHECK(dbm_to_mw(-80.0) == doctest::Approx(1e-8).epsilon(1e-12));
}

TEST_CASE("empty config yields the built-in defaults") {
    const AppConfig cfg = parse_config("{}", "cfg");
    CHECK(cfg.region.params.power_alice == 10000.0);
    CHECK(cfg.region.params.power_relay == 10000.0);
    CHECK(cfg.region.params.noise_power == 1e-8);
    CHECK(cfg.region.params.jam_budget == 100000.0);
    CHECK(cfg.region.x_points == 141);
    CHECK(cfg.region.y_points == 201);
    CHECK(cfg.sweep.y == 500.0);
    CHECK(cfg.sweep.trials == 10000);
    CHECK(cfg.sweep.xs.size() == 21);
    CHECK(cfg.sweep.xs.front() == 0.0);
    CHECK(cfg.sweep.xs.back() == 1000.0);
    CHECK(cfg.seed == 2024);
    CHECK(cfg.sweep.seed == 2024);
    CHECK(cfg.region.relay.x == 500.0);
}

TEST_CASE("partial overrides leave everything else untouched") {
    const std::string text = R"({
        "params": {"power_alice_dbm": 30, "noise_power_dbm": -90},
        "geometry": {"relay": [400, 10]},
        "sweep": {"x_min": 100, "x_max": 300, "x_step": 100, "trials": 64},
        "seed": 7
    })";
    const AppConfig cfg = parse_config(text, "cfg");
    CHECK(cfg.region.params.power_alice == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(cfg.region.params.power_relay == 10000.0);
    CHECK(cfg.region.params.noise_power == doctest::Approx(1e-9).epsilon(1e-12));
    CHECK(cfg.region.relay.x == 400.0);
    CHECK(cfg.region.relay.y == 10.0);
    CHECK(cfg.sweep.relay.x == 400.0);
    CHECK(cfg.sweep.params.power_alice == cfg.region.params.power_alice);
    REQUIRE(cfg.sweep.xs.size() == 3);
    CHECK(cfg.sweep.xs[1] == 200.0);
    CHECK(cfg.sweep.trials == 64);
    CHECK(cfg.seed == 7);
    CHECK(cfg.sweep.seed == 7);
}

TEST_CASE("a jamming budget of minus infinity dbm means zero power") {
    const AppConfig cfg =
        parse_config(R"({"params": {"jam_budget_dbm": "-inf"}})", "cfg");
    CHECK(cfg.region.params.jam_budget == 0.0);
}

TEST_CASE("rejects configurations that cannot run") {
    CHECK(fails_mentioning(R"({"params": {"noise_power_dbm": "-inf"}})",
                           "params.noise_power_dbm"));
    CHECK(fails_mentioning(R"({"params": {"power_alice_dbm": "loud"}})",
                           "params.power_alice_dbm"));
    CHECK(fails_mentioning(R"({"sweep": {"trials": 0}})", "sweep.trials"));
    CHECK(fails_mentioning(R"({"sweep": {"x_step": 0}})", "sweep.x_step"));
    CHECK(fails_mentioning(R"({"sweep": {"x_step": -5}})", "sweep.x_step"));
    CHECK(fails_mentioning(R"({"region": {"x_points": 0}})", "region.x_points"));
    CHECK(fails_mentioning(R"({"region": {"x_min": 10, "x_max": 0}})", "region.x_max"));
    CHECK(fails_mentioning(R"({"seed": -3})", "seed"));
    CHECK(fails_mentioning(R"({"seed": 1.5})", "seed"));
    CHECK(fails_mentioning(R"({"geometry": {"relay": [1, 2, 3]}})", "geometry.relay"));
}

TEST_CASE("unknown keys are named rather than ignored") {
    CHECK(fails_mentioning(R"({"params": {"power_alice_db": 40}})",
                           "params.power_alice_db"));
    CHECK(fails_mentioning(R"({"speed": 9})", "speed"));
    CHECK(fails_mentioning(R"({"sweep": {"step": 10}})", "sweep.step"));
}

TEST_CASE("malformed json errors carry the source label") {
    CHECK(fails_mentioning("{not json", "cfg"));
    CHECK(fails_mentioning("[1, 2]", "top level"));
}

TEST_CASE("missing config files are reported by path") {
    try {
        (void)load_config_file("/nonexistent/relaysurv.json");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/relaysurv.json") !=
              std::string::npos);
    }
}
