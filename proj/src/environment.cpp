#include "fogsched/environment.hpp"

#include <cmath>

namespace fogsched {

namespace {

Vec2 uniform_point(double area_side, Rng& rng) {
    return {rng.uniform(0.0, area_side), rng.uniform(0.0, area_side)};
}

void assign_new_leg(NodeMotion& n, const MobilityState& m, Rng& rng) {
    n.waypoint = uniform_point(m.area_side, rng);
    n.speed = rng.uniform(m.speed_min, m.speed_max);
}

} // namespace

MobilityState init_mobility(int n, double area_side, double speed_min, double speed_max,
                            double pause_time, Rng& rng) {
    MobilityState m;
    m.area_side = area_side;
    m.speed_min = speed_min;
    m.speed_max = speed_max;
    m.pause_time = pause_time;
    m.nodes.resize(n);
    for (auto& node : m.nodes) {
        node.pos = uniform_point(area_side, rng);
        assign_new_leg(node, m, rng);
        node.pause_left = 0.0;
    }
    return m;
}

void step_mobility(MobilityState& m, double dt, Rng& rng) {
    for (auto& n : m.nodes) {
        double remaining = dt;
        while (remaining > 0.0) {
            if (n.pause_left > 0.0) {
                const double wait = std::min(n.pause_left, remaining);
                n.pause_left -= wait;
                remaining -= wait;
                if (n.pause_left > 0.0) break;
                assign_new_leg(n, m, rng);
                continue;
            }
            const double dx = n.waypoint.x - n.pos.x;
            const double dy = n.waypoint.y - n.pos.y;
            const double dist = std::hypot(dx, dy);
            if (dist <= 0.0) {
                if (m.pause_time > 0.0) {
                    n.pause_left = m.pause_time;
                    continue;
                }
                assign_new_leg(n, m, rng);
                if (n.speed <= 0.0) break; // zero-speed node stays put
                continue;
            }
            if (n.speed <= 0.0) break;
            const double step = n.speed * remaining;
            if (step >= dist) {
                n.pos = n.waypoint;
                remaining -= dist / n.speed;
                if (m.pause_time > 0.0) {
                    n.pause_left = m.pause_time;
                } else {
                    assign_new_leg(n, m, rng);
                }
            } else {
                n.pos.x += dx / dist * step;
                n.pos.y += dy / dist * step;
                remaining = 0.0;
            }
        }
    }
}

double pathloss_gain(double sigma, double dist, const NetworkConfig& cfg) {
    const double d = std::max(dist, cfg.pathloss_d0);
    return sigma * cfg.pathloss_g0 * std::pow(cfg.pathloss_d0 / d, cfg.pathloss_exp);
}

Mat draw_gains(const std::vector<Vec2>& pos_wd, const std::vector<Vec2>& pos_fog,
               const NetworkConfig& cfg, Rng& rng) {
    Mat g(static_cast<int>(pos_wd.size()), static_cast<int>(pos_fog.size()));
    for (int i = 0; i < g.rows; ++i) {
        for (int j = 0; j < g.cols; ++j) {
            const double d = std::hypot(pos_wd[i].x - pos_fog[j].x, pos_wd[i].y - pos_fog[j].y);
            g(i, j) = pathloss_gain(rng.exp_mean1(), d, cfg);
        }
    }
    return g;
}

std::vector<double> draw_arrivals(const NetworkConfig& cfg, Rng& rng) {
    std::vector<double> a(cfg.num_wd);
    for (auto& x : a) x = rng.uniform(0.0, cfg.a_max);
    return a;
}

} // namespace fogsched
