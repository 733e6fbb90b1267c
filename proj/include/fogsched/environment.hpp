#pragma once

#include <vector>

#include "fogsched/config.hpp"
#include "fogsched/rng.hpp"
#include "fogsched/types.hpp"

namespace fogsched {

// Random-waypoint motion for one population of nodes.
struct NodeMotion {
    Vec2 pos;
    Vec2 waypoint;
    double speed = 0.0;      // m/s
    double pause_left = 0.0; // s
};

struct MobilityState {
    std::vector<NodeMotion> nodes;
    double area_side = 0.0;
    double speed_min = 0.0;
    double speed_max = 0.0;
    double pause_time = 0.0;
};

MobilityState init_mobility(int n, double area_side, double speed_min, double speed_max,
                            double pause_time, Rng& rng);

// Advance every node by dt: move toward the waypoint at the node speed; on
// arrival, pause, then draw a fresh uniform waypoint and speed.
void step_mobility(MobilityState& m, double dt, Rng& rng);

// Composite channel power gain for one pair: sigma * g0 * (d0/d)^theta with
// the distance floored at d0.
double pathloss_gain(double sigma, double dist, const NetworkConfig& cfg);

// Per-pair i.i.d. block-fading gains for one slot, wd x fog.
Mat draw_gains(const std::vector<Vec2>& pos_wd, const std::vector<Vec2>& pos_fog,
               const NetworkConfig& cfg, Rng& rng);

// A_i(t) ~ Uniform[0, a_max], i.i.d. across WDs and slots.
std::vector<double> draw_arrivals(const NetworkConfig& cfg, Rng& rng);

} // namespace fogsched
