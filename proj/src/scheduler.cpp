#include "fogsched/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fogsched/matching.hpp"
#include "fogsched/queues.hpp"
#include "fogsched/utility.hpp"

namespace fogsched {

double eta_update(EtaTracker& tracker, const std::vector<double>& gamma, double exec_power,
                  double tx_power, const NetworkConfig& cfg) {
    tracker.accumulate(gamma, exec_power + tx_power);
    const double t = static_cast<double>(tracker.slots_seen());
    double util = 0.0;
    for (double g : tracker.cum_gamma()) util += utility(cfg, g / t);
    const double ratio = util / (tracker.cum_power() / t + cfg.c0);
    // the clock and power closed forms divide by eta, so never let it hit zero
    if (std::isfinite(ratio) && ratio > 0.0) tracker.set_current(ratio);
    return tracker.current();
}

std::vector<double> solve_auxiliary(const std::vector<double>& z, const NetworkConfig& cfg) {
    std::vector<double> gamma(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double x = utility_prime_inverse(cfg, z[i] / cfg.v_param);
        gamma[i] = std::clamp(x, 0.0, cfg.a_max);
    }
    return gamma;
}

std::vector<double> solve_admission(const std::vector<double>& s, const std::vector<double>& z,
                                    const std::vector<double>& arrivals) {
    std::vector<double> a(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) a[i] = (s[i] - z[i] < 0.0) ? arrivals[i] : 0.0;
    return a;
}

std::vector<double> solve_cpu_clock(const std::vector<double>& q, double eta,
                                    const NetworkConfig& cfg) {
    if (!(eta > 0.0)) throw std::invalid_argument("solve_cpu_clock: eta must be positive");
    std::vector<double> f(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) {
        const double root =
            std::sqrt(q[j] * cfg.slot_len / (3.0 * cfg.kappa * cfg.v_param * eta * cfg.cycles_per_bit));
        f[j] = std::clamp(root, 0.0, cfg.f_max);
    }
    return f;
}

Mat solve_power_given_alpha(const Mat& alpha, const std::vector<double>& s,
                            const std::vector<double>& q, const Mat& gains, double eta,
                            const NetworkConfig& cfg) {
    Mat p(alpha.rows, alpha.cols, 0.0);
    const double ln2 = std::log(2.0);
    for (int i = 0; i < alpha.rows; ++i) {
        for (int j = 0; j < alpha.cols; ++j) {
            if (alpha(i, j) <= 0.0) continue;
            const double lhs = (s[i] - q[j]) * alpha(i, j) * cfg.bandwidth * cfg.slot_len /
                               (cfg.v_param * eta * ln2);
            const double cand = lhs - cfg.bandwidth * cfg.noise_n0 / gains(i, j);
            p(i, j) = std::min(cfg.p_max, std::max(cand, 0.0));
        }
    }
    return p;
}

Mat solve_offloading_given_power(const Mat& p_tr, const std::vector<double>& s,
                                 const std::vector<double>& q, const Mat& gains,
                                 const NetworkConfig& cfg) {
    Mat w(p_tr.rows, p_tr.cols, 0.0);
    for (int i = 0; i < p_tr.rows; ++i)
        for (int j = 0; j < p_tr.cols; ++j)
            w(i, j) = (s[i] - q[j]) * link_capacity(p_tr(i, j), gains(i, j), cfg);
    const MatchResult m = solve_b_matching(w, cfg.antennas);
    Mat alpha(p_tr.rows, p_tr.cols, 0.0);
    for (int i = 0; i < p_tr.rows; ++i)
        if (m.wd_to_fog[i] >= 0) alpha(i, m.wd_to_fog[i]) = 1.0;
    return alpha;
}

double sp4_objective(const Mat& p_tr, const Mat& alpha, const std::vector<double>& s,
                     const std::vector<double>& q, const Mat& gains, double eta,
                     const NetworkConfig& cfg) {
    double power_sum = 0.0, flow = 0.0;
    for (int i = 0; i < p_tr.rows; ++i) {
        for (int j = 0; j < p_tr.cols; ++j) {
            power_sum += p_tr(i, j);
            if (alpha(i, j) > 0.0)
                flow += alpha(i, j) * (q[j] - s[i]) * link_capacity(p_tr(i, j), gains(i, j), cfg);
        }
    }
    return cfg.v_param * eta * power_sum + flow;
}

Sp4Result gauss_seidel_sp4(const SlotState& state, double eta, const NetworkConfig& cfg) {
    Sp4Result r;
    r.p_tr = Mat(cfg.num_wd, cfg.num_fog, cfg.p_max);
    r.alpha = Mat(cfg.num_wd, cfg.num_fog, 0.0);

    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < cfg.gs_max_iters; ++it) {
        r.alpha = solve_offloading_given_power(r.p_tr, state.s_wd, state.q_fog, state.gains, cfg);
        r.p_tr = solve_power_given_alpha(r.alpha, state.s_wd, state.q_fog, state.gains, eta, cfg);
        const double obj =
            sp4_objective(r.p_tr, r.alpha, state.s_wd, state.q_fog, state.gains, eta, cfg);
        r.trace.objective.push_back(obj);
        r.trace.iterations = it + 1;
        bool selected = false;
        for (double a : r.alpha.v)
            if (a > 0.0) {
                selected = true;
                break;
            }
        if (!selected) { // nothing matched and all powers zero: a fixed point
            r.trace.converged = true;
            break;
        }
        const double scale = std::max({std::abs(obj), std::abs(prev), 1.0});
        if (std::isfinite(prev) && std::abs(prev - obj) <= cfg.gs_rel_tol * scale) {
            r.trace.converged = true;
            break;
        }
        prev = obj;
    }
    return r;
}

Control schedule_slot(const SlotState& state, double eta, const NetworkConfig& cfg,
                      GsTrace* trace_out) {
    Control c;
    c.gamma = solve_auxiliary(state.z_virtual, cfg);
    c.admitted = solve_admission(state.s_wd, state.z_virtual, state.arrivals);
    c.f = solve_cpu_clock(state.q_fog, eta, cfg);
    Sp4Result sp4 = gauss_seidel_sp4(state, eta, cfg);
    c.p_tr = std::move(sp4.p_tr);
    c.alpha = std::move(sp4.alpha);
    if (trace_out) *trace_out = std::move(sp4.trace);
    return c;
}

} // namespace fogsched
