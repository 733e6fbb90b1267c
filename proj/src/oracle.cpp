#include "fogsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fogsched/environment.hpp"
#include "fogsched/queues.hpp"
#include "fogsched/rng.hpp"
#include "fogsched/utility.hpp"

namespace fogsched::oracle {

namespace {
constexpr double kTol = 1e-9;

double rel_slack(double bound) { return kTol * std::max(1.0, std::abs(bound)); }
} // namespace

namespace {

// Feasibility for the per-slot problem itself. Powers on unselected links are
// allowed here (they are box-constrained independently of the assignment);
// the stricter zero-power rule is an invariant of the scheduler's output.
std::string check_feasible(const Control& c, const SlotState& state, const NetworkConfig& cfg,
                           bool require_zero_power_off_links) {
    std::ostringstream msg;
    for (int j = 0; j < cfg.num_fog; ++j) {
        if (c.f[j] < 0.0 || c.f[j] > cfg.f_max + rel_slack(cfg.f_max)) {
            msg << "f[" << j << "]=" << c.f[j] << " outside [0, f_max]";
            return msg.str();
        }
    }
    for (int i = 0; i < cfg.num_wd; ++i) {
        double row = 0.0;
        for (int j = 0; j < cfg.num_fog; ++j) {
            const double a = c.alpha(i, j);
            if (a != 0.0 && a != 1.0) {
                msg << "alpha[" << i << "][" << j << "]=" << a << " not binary";
                return msg.str();
            }
            row += a;
            const double p = c.p_tr(i, j);
            if (p < 0.0 || p > cfg.p_max + rel_slack(cfg.p_max)) {
                msg << "p_tr[" << i << "][" << j << "]=" << p << " outside [0, p_max]";
                return msg.str();
            }
            if (require_zero_power_off_links && a == 0.0 && p != 0.0) {
                msg << "p_tr[" << i << "][" << j << "] nonzero on unselected link";
                return msg.str();
            }
        }
        if (row > 1.0) {
            msg << "wd " << i << " assigned to " << row << " fogs";
            return msg.str();
        }
        if (c.admitted[i] < 0.0 || c.admitted[i] > state.arrivals[i] + rel_slack(cfg.a_max)) {
            msg << "admitted[" << i << "]=" << c.admitted[i] << " outside [0, A_i]";
            return msg.str();
        }
        if (c.gamma[i] < 0.0 || c.gamma[i] > cfg.a_max + rel_slack(cfg.a_max)) {
            msg << "gamma[" << i << "]=" << c.gamma[i] << " outside [0, a_max]";
            return msg.str();
        }
    }
    for (int j = 0; j < cfg.num_fog; ++j) {
        double col = 0.0;
        for (int i = 0; i < cfg.num_wd; ++i) col += c.alpha(i, j);
        if (col > static_cast<double>(cfg.antennas)) {
            msg << "fog " << j << " serves " << col << " > R wds";
            return msg.str();
        }
    }
    return {};
}

} // namespace

std::string check_control(const Control& c, const SlotState& state, const NetworkConfig& cfg) {
    return check_feasible(c, state, cfg, /*require_zero_power_off_links=*/true);
}

double p4_objective(const Control& c, const SlotState& state, double eta,
                    const NetworkConfig& cfg) {
    const std::string err = check_feasible(c, state, cfg, false);
    if (!err.empty()) throw std::invalid_argument("p4_objective: infeasible control: " + err);

    double util = 0.0;
    for (int i = 0; i < cfg.num_wd; ++i) util += utility(cfg, c.gamma[i]);
    double exec_power = 0.0;
    for (int j = 0; j < cfg.num_fog; ++j) exec_power += execution_power(c.f[j], cfg);
    double tx_power = 0.0;
    for (int i = 0; i < cfg.num_wd; ++i)
        for (int j = 0; j < cfg.num_fog; ++j) tx_power += c.p_tr(i, j);

    double q_term = 0.0;
    for (int j = 0; j < cfg.num_fog; ++j) {
        double inflow = 0.0;
        for (int i = 0; i < cfg.num_wd; ++i)
            if (c.alpha(i, j) > 0.0)
                inflow += c.alpha(i, j) * link_capacity(c.p_tr(i, j), state.gains(i, j), cfg);
        q_term += state.q_fog[j] * (inflow - execution_amount(c.f[j], cfg));
    }
    double z_term = 0.0, s_term = 0.0;
    for (int i = 0; i < cfg.num_wd; ++i) {
        double offload = 0.0;
        for (int j = 0; j < cfg.num_fog; ++j)
            if (c.alpha(i, j) > 0.0)
                offload += c.alpha(i, j) * link_capacity(c.p_tr(i, j), state.gains(i, j), cfg);
        z_term += state.z_virtual[i] * (c.gamma[i] - c.admitted[i]);
        s_term += state.s_wd[i] * (c.admitted[i] - offload);
    }
    return -cfg.v_param * (util - eta * (exec_power + tx_power)) + q_term + z_term + s_term;
}

namespace {

// every wd -> {-1, 0..m-1} with per-fog counts <= cap
void enumerate_assignments(int n, int m, int cap, std::vector<int>& cur, std::vector<int>& load,
                           const std::function<void(const std::vector<int>&)>& visit) {
    if (static_cast<int>(cur.size()) == n) {
        visit(cur);
        return;
    }
    cur.push_back(-1);
    enumerate_assignments(n, m, cap, cur, load, visit);
    cur.pop_back();
    for (int j = 0; j < m; ++j) {
        if (load[j] >= cap) continue;
        cur.push_back(j);
        ++load[j];
        enumerate_assignments(n, m, cap, cur, load, visit);
        --load[j];
        cur.pop_back();
    }
}

} // namespace

EnumResult enumerate_matchings(const Mat& weights, int fog_cap) {
    const int n = weights.rows, m = weights.cols;
    if (n > 8 || m > 4) throw std::invalid_argument("enumerate_matchings: instance too large");
    EnumResult best;
    best.assignment.assign(n, -1);
    std::vector<int> cur, load(m, 0);
    cur.reserve(n);
    enumerate_assignments(n, m, fog_cap, cur, load, [&](const std::vector<int>& a) {
        double v = 0.0;
        for (int i = 0; i < n; ++i)
            if (a[i] >= 0) v += weights(i, a[i]);
        if (v > best.value) {
            best.value = v;
            best.assignment = a;
        }
    });
    return best;
}

double lp_relaxation_value(const Mat& weights, int fog_cap) {
    const int n = weights.rows, m = weights.cols;
    const int nv = n * m;     // structural variables
    const int mc = n + m;     // row-sum and column-sum constraints
    const int cols = nv + mc + 1;
    std::vector<std::vector<double>> t(mc + 1, std::vector<double>(cols, 0.0));

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) t[i][i * m + j] = 1.0;
        t[i][nv + i] = 1.0;
        t[i][cols - 1] = 1.0;
    }
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) t[n + j][i * m + j] = 1.0;
        t[n + j][nv + n + j] = 1.0;
        t[n + j][cols - 1] = static_cast<double>(fog_cap);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) t[mc][i * m + j] = -weights(i, j);

    std::vector<int> basis(mc);
    for (int r = 0; r < mc; ++r) basis[r] = nv + r;

    const double eps = 1e-9;
    while (true) {
        int enter = -1; // Bland: lowest index with negative reduced cost
        for (int cidx = 0; cidx < nv + mc; ++cidx)
            if (t[mc][cidx] < -eps) {
                enter = cidx;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        double best_ratio = 0.0;
        for (int r = 0; r < mc; ++r) {
            if (t[r][enter] > eps) {
                const double ratio = t[r][cols - 1] / t[r][enter];
                if (leave < 0 || ratio < best_ratio - eps ||
                    (ratio < best_ratio + eps && basis[r] < basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) throw std::logic_error("lp_relaxation_value: unbounded");
        const double piv = t[leave][enter];
        for (int cidx = 0; cidx < cols; ++cidx) t[leave][cidx] /= piv;
        for (int r = 0; r <= mc; ++r) {
            if (r == leave) continue;
            const double factor = t[r][enter];
            if (factor == 0.0) continue;
            for (int cidx = 0; cidx < cols; ++cidx) t[r][cidx] -= factor * t[leave][cidx];
        }
        basis[leave] = enter;
    }
    return t[mc][cols - 1];
}

namespace {

struct GridBest {
    double x = 0.0;
    double val = 0.0;
};

// Two-stage grid minimization: full sweep, then a second sweep around the
// winning cell. Effective resolution (hi-lo)/n^2 without derivative use.
template <typename F>
GridBest refined_grid_min(double lo, double hi, int n, F&& f) {
    GridBest best{lo, std::numeric_limits<double>::infinity()};
    if (hi <= lo || n < 2) {
        best.val = f(lo);
        return best;
    }
    double step = (hi - lo) / (n - 1);
    for (int k = 0; k < n; ++k) {
        const double x = lo + step * k;
        const double v = f(x);
        if (v < best.val) best = {x, v};
    }
    const double lo2 = std::max(lo, best.x - step);
    const double hi2 = std::min(hi, best.x + step);
    step = (hi2 - lo2) / (n - 1);
    for (int k = 0; k < n; ++k) {
        const double x = lo2 + step * k;
        const double v = f(x);
        if (v < best.val) best = {x, v};
    }
    return best;
}

} // namespace

Control brute_force_slot(const SlotState& state, double eta, const NetworkConfig& cfg,
                         const GridSizes& grid) {
    const int n = cfg.num_wd, m = cfg.num_fog;
    if (n > 4 || m > 2 || cfg.antennas > 2)
        throw std::invalid_argument("brute_force_slot: instance too large");

    Control best;
    best.f.assign(m, 0.0);
    best.p_tr = Mat(n, m, 0.0);
    best.alpha = Mat(n, m, 0.0);
    best.admitted.assign(n, 0.0);
    best.gamma.assign(n, 0.0);

    // gamma and admission: independent 1-D grids per wd
    for (int i = 0; i < n; ++i) {
        best.gamma[i] = refined_grid_min(0.0, cfg.a_max, grid.gamma, [&](double g) {
                            return -cfg.v_param * utility(cfg, g) + state.z_virtual[i] * g;
                        }).x;
        best.admitted[i] = refined_grid_min(0.0, state.arrivals[i], grid.admission, [&](double a) {
                               return a * (state.s_wd[i] - state.z_virtual[i]);
                           }).x;
    }

    // clock: independent 1-D grid per fog
    for (int j = 0; j < m; ++j) {
        best.f[j] = refined_grid_min(0.0, cfg.f_max, grid.freq, [&](double f) {
                        return cfg.v_param * eta * execution_power(f, cfg) -
                               state.q_fog[j] * execution_amount(f, cfg);
                    }).x;
    }

    // joint power/offloading: enumerate assignments, grid each selected link
    Mat best_p_pair(n, m, 0.0); // per-pair optimal power if selected
    Mat best_h_pair(n, m, 0.0); // its objective contribution
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const GridBest gb = refined_grid_min(0.0, cfg.p_max, grid.power, [&](double p) {
                return cfg.v_param * eta * p + (state.q_fog[j] - state.s_wd[i]) *
                                                   link_capacity(p, state.gains(i, j), cfg);
            });
            best_p_pair(i, j) = gb.x;
            best_h_pair(i, j) = gb.val;
        }
    }
    double best_sp4 = std::numeric_limits<double>::infinity();
    std::vector<int> best_assign(n, -1);
    std::vector<int> cur, load(m, 0);
    cur.reserve(n);
    enumerate_assignments(n, m, cfg.antennas, cur, load, [&](const std::vector<int>& a) {
        double v = 0.0;
        for (int i = 0; i < n; ++i)
            if (a[i] >= 0) v += best_h_pair(i, a[i]);
        if (v < best_sp4) {
            best_sp4 = v;
            best_assign = a;
        }
    });
    for (int i = 0; i < n; ++i) {
        if (best_assign[i] >= 0) {
            best.alpha(i, best_assign[i]) = 1.0;
            best.p_tr(i, best_assign[i]) = best_p_pair(i, best_assign[i]);
        }
    }
    return best;
}

MaxRates default_max_rates(const NetworkConfig& cfg) {
    MaxRates r;
    r.mu_max = execution_amount(cfg.f_max, cfg);
    const double gain_cap = pathloss_gain(cfg.gain_sigma_cap, cfg.pathloss_d0, cfg);
    r.c_max = link_capacity(cfg.p_max, gain_cap, cfg);
    r.a_max = cfg.a_max;
    r.gamma_max = cfg.a_max;
    return r;
}

double compute_vartheta(const NetworkConfig& cfg, const MaxRates& rates) {
    const double rc = static_cast<double>(cfg.antennas) * rates.c_max;
    const double g = std::max(rates.gamma_max, rates.a_max);
    return 0.5 * cfg.num_fog * (rates.mu_max * rates.mu_max + rc * rc) +
           0.5 * cfg.num_wd * (rates.a_max * rates.a_max + rates.c_max * rates.c_max) +
           0.5 * cfg.num_wd * g * g;
}

double max_total_power(const NetworkConfig& cfg) {
    return cfg.num_fog * execution_power(cfg.f_max, cfg) + cfg.num_wd * cfg.p_max;
}

double estimate_slater_epsilon(const NetworkConfig& cfg, std::uint64_t seed, int probe_slots) {
    const int n = cfg.num_wd, m = cfg.num_fog;
    Rng geo_rng(derive_seed(seed, 101));
    Rng fade_rng(derive_seed(seed, 102));
    Rng arr_rng(derive_seed(seed, 103));

    // rotating active set so every wd is drained with the same frequency;
    // the k-th active wd goes to fog k % m, which keeps fog degrees <= R
    const int k_active = std::min(n, cfg.antennas * m);
    auto active_assignment = [&](long t) {
        std::vector<std::vector<int>> assigned(m);
        const long start = (t * k_active) % n;
        for (int a = 0; a < k_active; ++a)
            assigned[a % m].push_back(static_cast<int>((start + a) % n));
        return assigned;
    };

    const double mu_max = execution_amount(cfg.f_max, cfg);
    auto draw_positions = [&](int count) {
        std::vector<Vec2> p(count);
        for (auto& v : p) v = {geo_rng.uniform(0.0, cfg.area_side), geo_rng.uniform(0.0, cfg.area_side)};
        return p;
    };

    // phase 1: mean full-power link capacity over active links
    const int warm = std::max(probe_slots / 4, 50);
    double cbar = 0.0;
    long cbar_cnt = 0;
    for (int t = 0; t < warm; ++t) {
        const auto pw = draw_positions(n);
        const auto pf = draw_positions(m);
        const Mat g = draw_gains(pw, pf, cfg, fade_rng);
        const auto assigned = active_assignment(t);
        for (int j = 0; j < m; ++j)
            for (int i : assigned[j]) {
                cbar += link_capacity(cfg.p_max, g(i, j), cfg);
                ++cbar_cnt;
            }
    }
    if (cbar_cnt == 0) throw std::runtime_error("slater probe: no assignable links");
    cbar /= static_cast<double>(cbar_cnt);
    if (!(cbar > 0.0)) throw std::runtime_error("slater probe: zero link capacity");

    // activation probability targeting half the fog service rate
    const int max_links = (k_active + m - 1) / m;
    const double p_on = std::min(1.0, 0.5 * mu_max / (std::max(max_links, 1) * cbar));
    // admission fraction targeting half the expected per-wd drain
    const double drain_est = p_on * cbar * static_cast<double>(k_active) / n;
    const double mean_arrival = cfg.a_max / 2.0;
    const double admit_frac =
        mean_arrival > 0.0 ? std::min(1.0, 0.5 * drain_est / mean_arrival) : 0.0;

    // phase 2: expected margins under the witness policy. Activation is an
    // independent coin, so its expectation integrates out exactly; this keeps
    // the estimate from being dominated by rare large-capacity events.
    std::vector<double> fog_margin(m, 0.0), wd_margin(n, 0.0), admit_mean(n, 0.0);
    for (int t = 0; t < probe_slots; ++t) {
        const auto pw = draw_positions(n);
        const auto pf = draw_positions(m);
        const Mat g = draw_gains(pw, pf, cfg, fade_rng);
        const auto arrivals = draw_arrivals(cfg, arr_rng);
        const auto assigned = active_assignment(t);
        for (int j = 0; j < m; ++j) {
            double inflow = 0.0;
            for (int i : assigned[j]) {
                const double c = p_on * link_capacity(cfg.p_max, g(i, j), cfg);
                inflow += c;
                wd_margin[i] += c;
            }
            fog_margin[j] += mu_max - inflow;
        }
        for (int i = 0; i < n; ++i) {
            const double a = admit_frac * arrivals[i];
            wd_margin[i] -= a;
            admit_mean[i] += a;
        }
    }
    double eps = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) eps = std::min(eps, fog_margin[j] / probe_slots);
    for (int i = 0; i < n; ++i) {
        eps = std::min(eps, wd_margin[i] / probe_slots);
        // gamma' set to half the realized admission mean
        eps = std::min(eps, 0.5 * admit_mean[i] / probe_slots);
    }
    if (!(eps > 0.0))
        throw std::runtime_error("slater probe: could not certify a positive slack");
    return eps;
}

BoundsReport bounds_report(const NetworkConfig& cfg, double eta_measured, double d_measured,
                           double eta_star_est, double epsilon_est) {
    BoundsReport r;
    r.vartheta = compute_vartheta(cfg, default_max_rates(cfg));
    r.e_max = max_total_power(cfg);
    r.epsilon_est = epsilon_est;
    r.eta_star_est = eta_star_est;
    r.v_param = cfg.v_param;
    r.eta_measured = eta_measured;
    r.d_measured = d_measured;
    r.eta_lower_bound = eta_star_est - r.vartheta / (cfg.v_param * cfg.c0);
    r.d_upper_bound = r.vartheta / epsilon_est + cfg.v_param * eta_measured * r.e_max / epsilon_est;
    r.eta_bound_holds = eta_measured >= r.eta_lower_bound;
    r.d_bound_holds = d_measured <= r.d_upper_bound;
    return r;
}

} // namespace fogsched::oracle
