#include "fogsched/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fogsched/environment.hpp"
#include "fogsched/matching.hpp"
#include "fogsched/oracle.hpp"
#include "fogsched/queues.hpp"
#include "fogsched/scheduler.hpp"
#include "fogsched/utility.hpp"

namespace fogsched {

SlotState make_random_state(const NetworkConfig& cfg, Rng& rng) {
    SlotState st;
    st.t = 0;
    st.pos_fog.resize(cfg.num_fog);
    st.pos_wd.resize(cfg.num_wd);
    for (auto& p : st.pos_fog) p = {rng.uniform(0.0, cfg.area_side), rng.uniform(0.0, cfg.area_side)};
    for (auto& p : st.pos_wd) p = {rng.uniform(0.0, cfg.area_side), rng.uniform(0.0, cfg.area_side)};
    st.gains = draw_gains(st.pos_wd, st.pos_fog, cfg, rng);
    st.arrivals.resize(cfg.num_wd);
    for (auto& a : st.arrivals) a = rng.uniform(0.0, cfg.a_max);
    st.q_fog.resize(cfg.num_fog);
    st.s_wd.resize(cfg.num_wd);
    st.z_virtual.resize(cfg.num_wd);
    for (auto& q : st.q_fog) q = rng.uniform(0.0, 5.0 * cfg.a_max);
    for (auto& s : st.s_wd) s = rng.uniform(0.0, 5.0 * cfg.a_max);
    for (auto& z : st.z_virtual) z = rng.uniform(0.0, 2.0 * cfg.v_param);
    return st;
}

namespace {

void note_worst(CheckResult& r, double violation, const std::string& what) {
    if (violation > r.worst) {
        r.worst = violation;
        r.detail = what;
    }
}

Mat random_weights(int n, int m, Rng& rng) {
    Mat w(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            // mix of signs so that leaving edges unmatched matters
            w(i, j) = rng.uniform(-0.5, 1.0) * rng.uniform(0.0, 100.0);
        }
    return w;
}

} // namespace

CheckResult verify_closed_forms(const NetworkConfig& cfg, std::uint64_t seed, int num_states,
                                int grid_points, double rel_tol) {
    CheckResult res;
    Rng rng(derive_seed(seed, 11));
    for (int s = 0; s < num_states; ++s) {
        const SlotState st = make_random_state(cfg, rng);
        const double eta = rng.uniform(0.05, 5.0);

        // sp1: per-wd auxiliary objective
        const auto gamma = solve_auxiliary(st.z_virtual, cfg);
        for (int i = 0; i < cfg.num_wd; ++i) {
            const double closed =
                -cfg.v_param * utility(cfg, gamma[i]) + st.z_virtual[i] * gamma[i];
            for (int k = 0; k < grid_points; ++k) {
                const double g = cfg.a_max * k / (grid_points - 1.0);
                const double val = -cfg.v_param * utility(cfg, g) + st.z_virtual[i] * g;
                const double slack = rel_tol * std::max(1.0, std::abs(val));
                if (val < closed - slack)
                    note_worst(res, (closed - val) / std::max(1.0, std::abs(val)),
                               "sp1 closed form beaten by grid");
            }
        }

        // sp3: per-fog clock objective
        const auto f = solve_cpu_clock(st.q_fog, eta, cfg);
        for (int j = 0; j < cfg.num_fog; ++j) {
            const double closed = cfg.v_param * eta * execution_power(f[j], cfg) -
                                  st.q_fog[j] * execution_amount(f[j], cfg);
            for (int k = 0; k < grid_points; ++k) {
                const double x = cfg.f_max * k / (grid_points - 1.0);
                const double val = cfg.v_param * eta * execution_power(x, cfg) -
                                   st.q_fog[j] * execution_amount(x, cfg);
                const double slack = rel_tol * std::max(1.0, std::abs(val));
                if (val < closed - slack)
                    note_worst(res, (closed - val) / std::max(1.0, std::abs(val)),
                               "sp3 closed form beaten by grid");
            }
        }

        // per-link power closed form; the check is per pair, so a single
        // selected column suffices
        Mat alpha(cfg.num_wd, cfg.num_fog, 0.0);
        for (int i = 0; i < cfg.num_wd; ++i) alpha(i, 0) = 1.0;
        const Mat p = solve_power_given_alpha(alpha, st.s_wd, st.q_fog, st.gains, eta, cfg);
        for (int i = 0; i < cfg.num_wd; ++i) {
            const int j = 0;
            const double closed =
                cfg.v_param * eta * p(i, j) +
                (st.q_fog[j] - st.s_wd[i]) * link_capacity(p(i, j), st.gains(i, j), cfg);
            for (int k = 0; k < grid_points; ++k) {
                const double x = cfg.p_max * k / (grid_points - 1.0);
                const double val = cfg.v_param * eta * x +
                                   (st.q_fog[j] - st.s_wd[i]) *
                                       link_capacity(x, st.gains(i, j), cfg);
                const double slack = rel_tol * std::max(1.0, std::abs(val));
                if (val < closed - slack)
                    note_worst(res, (closed - val) / std::max(1.0, std::abs(val)),
                               "power closed form beaten by grid");
            }
        }
    }
    res.pass = res.worst == 0.0;
    if (res.detail.empty()) res.detail = "closed forms optimal on every sampled grid";
    return res;
}

CheckResult verify_matching(std::uint64_t seed, int num_instances) {
    CheckResult res;
    Rng rng(derive_seed(seed, 13));
    for (int k = 0; k < num_instances; ++k) {
        const int n = 1 + static_cast<int>(rng.index(6));
        const int m = 1 + static_cast<int>(rng.index(3));
        const int cap = 1 + static_cast<int>(rng.index(2));
        const Mat w = random_weights(n, m, rng);
        const MatchResult got = solve_b_matching(w, cap);
        const oracle::EnumResult want = oracle::enumerate_matchings(w, cap);
        const double diff = std::abs(got.value - want.value);
        const double slack = 1e-9 * std::max(1.0, std::abs(want.value));
        if (diff > slack) {
            res.pass = false;
            std::ostringstream os;
            os << "instance " << k << " (n=" << n << ", m=" << m << ", cap=" << cap
               << "): solver " << got.value << " vs enumeration " << want.value;
            note_worst(res, diff, os.str());
        }
        // re-sum the solver's own assignment; catches inconsistent reporting
        double resum = 0.0;
        for (int i = 0; i < n; ++i)
            if (got.wd_to_fog[i] >= 0) resum += w(i, got.wd_to_fog[i]);
        if (std::abs(resum - got.value) > slack) {
            res.pass = false;
            note_worst(res, std::abs(resum - got.value), "solver value/assignment mismatch");
        }
    }
    if (res.detail.empty()) res.detail = "matching equals enumeration on every instance";
    return res;
}

CheckResult verify_integrality(std::uint64_t seed, int num_instances) {
    CheckResult res;
    Rng rng(derive_seed(seed, 17));
    for (int k = 0; k < num_instances; ++k) {
        const int n = 1 + static_cast<int>(rng.index(6));
        const int m = 1 + static_cast<int>(rng.index(3));
        const int cap = 1 + static_cast<int>(rng.index(2));
        const Mat w = random_weights(n, m, rng);
        const double lp = oracle::lp_relaxation_value(w, cap);
        const double binary = oracle::enumerate_matchings(w, cap).value;
        const double diff = std::abs(lp - binary);
        if (diff > 1e-7 * std::max(1.0, std::abs(binary))) {
            res.pass = false;
            std::ostringstream os;
            os << "instance " << k << ": LP " << lp << " vs binary " << binary;
            note_worst(res, diff, os.str());
        }
    }
    if (res.detail.empty()) res.detail = "LP relaxation optimum is binary on every instance";
    return res;
}

CheckResult verify_whole_slot(std::uint64_t seed, int num_instances, double rel_tol) {
    CheckResult res;
    Rng rng(derive_seed(seed, 19));
    for (int k = 0; k < num_instances; ++k) {
        NetworkConfig cfg;
        cfg.num_wd = 2 + static_cast<int>(rng.index(3)); // 2..4
        cfg.num_fog = 1 + static_cast<int>(rng.index(2));
        cfg.antennas = 1 + static_cast<int>(rng.index(2));
        const SlotState st = make_random_state(cfg, rng);
        const double eta = rng.uniform(0.1, 3.0);

        const Control mine = schedule_slot(st, eta, cfg);
        const Control brute = oracle::brute_force_slot(st, eta, cfg);
        const double v_mine = oracle::p4_objective(mine, st, eta, cfg);
        const double v_brute = oracle::p4_objective(brute, st, eta, cfg);
        const double slack = rel_tol * std::max(1.0, std::abs(v_brute));
        if (v_mine > v_brute + slack) {
            res.pass = false;
            std::ostringstream os;
            os << "instance " << k << " (n=" << cfg.num_wd << ", m=" << cfg.num_fog
               << ", R=" << cfg.antennas << "): scheduler " << v_mine << " > brute " << v_brute
               << " (rel gap " << (v_mine - v_brute) / std::max(1.0, std::abs(v_brute)) << ")";
            note_worst(res, v_mine - v_brute, os.str());
        }
    }
    if (res.detail.empty()) res.detail = "scheduler matches brute force on every tiny instance";
    return res;
}

} // namespace fogsched
