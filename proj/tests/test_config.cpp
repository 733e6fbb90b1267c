#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "fogsched/config.hpp"

using namespace fogsched;

TEST_SUITE_BEGIN("config");

TEST_CASE("defaults reproduce the simulated network") {
    NetworkConfig c;
    CHECK(validate(c).empty());
    CHECK(c.num_fog == 8);
    CHECK(c.num_wd == 40);
    CHECK(c.area_side == 150.0);
    CHECK(c.slot_len == 1e-3);
    CHECK(c.cycles_per_bit == 500.0);
    CHECK(c.kappa == 1e-27);
    CHECK(c.f_max == 2e9);
    CHECK(c.p_max == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(c.a_max == 4000.0);
    CHECK(c.c0 == 64.0);
    CHECK(c.antennas == 3);
    CHECK(c.bandwidth == 1e7);
    CHECK(c.pathloss_d0 == 1.0);
    CHECK(c.pathloss_exp == 5.0);
    CHECK(c.num_slots == 10000);
    // -40 dB and -174 dBm/Hz in linear units
    CHECK(c.pathloss_g0 == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(c.noise_n0 == doctest::Approx(std::pow(10.0, -20.4)).epsilon(1e-12));
}

TEST_CASE("every violation is reported with its field") {
    NetworkConfig c;
    c.v_param = 0.0;
    c.antennas = 0;
    c.kappa = -1.0;
    const auto errs = validate(c);
    REQUIRE(errs.size() == 3);
    bool saw_v = false, saw_r = false, saw_kappa = false;
    for (const auto& e : errs) {
        if (e.find("V must be positive") != std::string::npos) saw_v = true;
        if (e.find("antennas") != std::string::npos) saw_r = true;
        if (e.find("kappa") != std::string::npos) saw_kappa = true;
    }
    CHECK(saw_v);
    CHECK(saw_r);
    CHECK(saw_kappa);
}

TEST_CASE("parse rejects invalid configs with all problems listed") {
    const std::string bad = R"({"algorithm": {"v_param": 0}, "network": {"antennas": 0}})";
    try {
        config_from_json_text(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.violations.size() == 2);
        CHECK(std::string(e.what()).find("V must be positive") != std::string::npos);
    }
}

TEST_CASE("dB fields convert exactly once at load") {
    const std::string text = R"({
      "channel": {"pathloss_g0_db": -40.0, "noise_n0_dbm": -174.0}
    })";
    const NetworkConfig c = config_from_json_text(text);
    CHECK(c.pathloss_g0 == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(c.noise_n0 == doctest::Approx(std::pow(10.0, -20.4)).epsilon(1e-12));
}

TEST_CASE("serialize/reload round-trips linear values to 1e-12") {
    NetworkConfig c;
    c.num_fog = 5;
    c.v_param = 2.5e6;
    c.pathloss_g0 = 3.7e-5;
    c.noise_n0 = 1.9e-21;
    c.kappa = 2e-27;
    c.rng_seed = 99;
    const NetworkConfig back = config_from_json_text(config_to_json_text(c));
    CHECK(back.num_fog == c.num_fog);
    CHECK(back.v_param == doctest::Approx(c.v_param).epsilon(1e-12));
    CHECK(back.pathloss_g0 == doctest::Approx(c.pathloss_g0).epsilon(1e-12));
    CHECK(back.noise_n0 == doctest::Approx(c.noise_n0).epsilon(1e-12));
    CHECK(back.kappa == doctest::Approx(c.kappa).epsilon(1e-12));
    CHECK(back.rng_seed == c.rng_seed);
    CHECK(config_hash(back) == config_hash(c));
}

TEST_CASE("manifest wrapper accepted by the loader") {
    NetworkConfig c;
    c.num_wd = 17;
    const std::string manifest =
        std::string("{\"seed\": 1, \"config\": ") + config_to_json_text(c) + "}";
    const NetworkConfig back = config_from_json_text(manifest);
    CHECK(back.num_wd == 17);
}

TEST_CASE("unknown utility kind rejected") {
    CHECK_THROWS_AS(config_from_json_text(R"({"algorithm": {"utility_kind": "cubic"}})"),
                    ConfigError);
}

TEST_CASE("zero arrivals bound is allowed") {
    NetworkConfig c;
    c.a_max = 0.0;
    CHECK(validate(c).empty());
}

TEST_SUITE_END();
