#include <doctest.h>

#include <cmath>

#include "fogsched/environment.hpp"

using namespace fogsched;

TEST_SUITE_BEGIN("environment");

TEST_CASE("node at waypoint with zero pause draws a fresh leg") {
    Rng rng(7);
    MobilityState m = init_mobility(1, 100.0, 1.0, 2.0, 0.0, rng);
    m.nodes[0].pos = {50.0, 50.0};
    m.nodes[0].waypoint = {50.0, 50.0};
    step_mobility(m, 1.0, rng);
    const auto& n = m.nodes[0];
    CHECK((n.waypoint.x != 50.0 || n.waypoint.y != 50.0));
    CHECK(n.waypoint.x >= 0.0);
    CHECK(n.waypoint.x <= 100.0);
    CHECK(n.waypoint.y >= 0.0);
    CHECK(n.waypoint.y <= 100.0);
    // moved toward the new waypoint at the redrawn speed
    CHECK(n.speed >= 1.0);
    CHECK(n.speed <= 2.0);
}

TEST_CASE("zero speed keeps the position fixed") {
    Rng rng(3);
    MobilityState m = init_mobility(4, 100.0, 0.0, 0.0, 0.0, rng);
    const auto before = m.nodes;
    step_mobility(m, 5.0, rng);
    for (std::size_t k = 0; k < m.nodes.size(); ++k) {
        CHECK(m.nodes[k].pos.x == before[k].pos.x);
        CHECK(m.nodes[k].pos.y == before[k].pos.y);
    }
}

TEST_CASE("kinematics: 10 m leg at 1 m/s") {
    Rng rng(5);
    MobilityState m = init_mobility(1, 100.0, 1.0, 1.0, 0.0, rng);
    m.nodes[0].pos = {10.0, 20.0};
    m.nodes[0].waypoint = {20.0, 20.0};
    m.nodes[0].speed = 1.0;

    SUBCASE("after 1 s: 1 m closer") {
        step_mobility(m, 1.0, rng);
        CHECK(m.nodes[0].pos.x == doctest::Approx(11.0).epsilon(1e-12));
        CHECK(m.nodes[0].pos.y == doctest::Approx(20.0).epsilon(1e-12));
    }
    SUBCASE("after 10 s: exactly at the waypoint (and onward on the next leg)") {
        step_mobility(m, 5.0, rng);
        CHECK(m.nodes[0].pos.x == doctest::Approx(15.0).epsilon(1e-12));
        step_mobility(m, 5.0, rng);
        // reached (20, 20) exactly, then immediately got a new waypoint
        const double d_from_wp = std::hypot(m.nodes[0].pos.x - 20.0, m.nodes[0].pos.y - 20.0);
        CHECK(d_from_wp <= 1e-9); // no residual time at arrival
    }
}

TEST_CASE("positions stay inside the area over many steps") {
    Rng rng(11);
    MobilityState m = init_mobility(10, 150.0, 1.0, 5.0, 0.5, rng);
    for (int t = 0; t < 5000; ++t) {
        step_mobility(m, 0.7, rng);
        for (const auto& n : m.nodes) {
            CHECK(n.pos.x >= 0.0);
            CHECK(n.pos.x <= 150.0);
            CHECK(n.pos.y >= 0.0);
            CHECK(n.pos.y <= 150.0);
        }
    }
}

TEST_CASE("gain formula at reference distance and at 10x") {
    NetworkConfig cfg;
    CHECK(pathloss_gain(1.0, cfg.pathloss_d0, cfg) == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(pathloss_gain(1.0, 10.0 * cfg.pathloss_d0, cfg) ==
          doctest::Approx(1e-4 * 1e-5).epsilon(1e-12));
}

TEST_CASE("distance below the reference is floored") {
    NetworkConfig cfg;
    CHECK(pathloss_gain(2.0, 0.0, cfg) == doctest::Approx(2.0 * cfg.pathloss_g0).epsilon(1e-12));
    CHECK(pathloss_gain(1.0, 0.5, cfg) == doctest::Approx(cfg.pathloss_g0).epsilon(1e-12));
}

TEST_CASE("gain nonincreasing in distance for fixed sigma") {
    NetworkConfig cfg;
    double prev = pathloss_gain(1.3, 0.1, cfg);
    for (double d = 1.0; d < 220.0; d += 0.7) {
        const double g = pathloss_gain(1.3, d, cfg);
        CHECK(g <= prev + 1e-18);
        prev = g;
    }
}

TEST_CASE("fading draws have unit mean and positive support") {
    Rng rng(23);
    double sum = 0.0;
    const int n = 1000000;
    for (int k = 0; k < n; ++k) {
        const double s = rng.exp_mean1();
        CHECK(s > 0.0);
        sum += s;
    }
    const double mean = sum / n;
    CHECK(mean > 0.99);
    CHECK(mean < 1.01);
}

TEST_CASE("arrivals uniform in [0, a_max]") {
    NetworkConfig cfg;
    Rng rng(31);
    double sum = 0.0;
    long count = 0;
    for (int t = 0; t < 2500; ++t) { // 2500 x 40 = 1e5 draws
        const auto a = draw_arrivals(cfg, rng);
        for (double x : a) {
            CHECK(x >= 0.0);
            CHECK(x <= cfg.a_max);
            sum += x;
            ++count;
        }
    }
    const double mean = sum / count;
    CHECK(mean > 0.99 * cfg.a_max / 2.0);
    CHECK(mean < 1.01 * cfg.a_max / 2.0);
}

TEST_CASE("arrivals all zero when a_max is zero") {
    NetworkConfig cfg;
    cfg.a_max = 0.0;
    Rng rng(1);
    for (double x : draw_arrivals(cfg, rng)) CHECK(x == 0.0);
}

TEST_CASE("waypoint steady state is center biased") {
    Rng rng(41);
    const double area = 120.0;
    MobilityState m = init_mobility(20, area, 1.0, 5.0, 0.0, rng);
    long center = 0, corners = 0, samples = 0;
    for (int t = 0; t < 10000; ++t) {
        step_mobility(m, 1.0, rng);
        if (t < 500) continue; // mix first
        for (const auto& n : m.nodes) {
            ++samples;
            const bool in_center = n.pos.x > area / 4 && n.pos.x < 3 * area / 4 &&
                                   n.pos.y > area / 4 && n.pos.y < 3 * area / 4;
            const bool in_corner = (n.pos.x < area / 4 || n.pos.x > 3 * area / 4) &&
                                   (n.pos.y < area / 4 || n.pos.y > 3 * area / 4);
            if (in_center) ++center;
            if (in_corner) ++corners;
        }
    }
    REQUIRE(samples >= 100000);
    // center square and the four corner squares have equal total area
    CHECK(center > corners);
}

TEST_CASE("full gain matrix dimensions and positivity") {
    NetworkConfig cfg;
    cfg.num_wd = 6;
    cfg.num_fog = 3;
    Rng rng(9);
    std::vector<Vec2> wd(6, {10.0, 10.0}), fog(3, {100.0, 100.0});
    const Mat g = draw_gains(wd, fog, cfg, rng);
    CHECK(g.rows == 6);
    CHECK(g.cols == 3);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 3; ++j) CHECK(g(i, j) > 0.0);
}

TEST_SUITE_END();
