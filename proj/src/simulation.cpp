#include "fogsched/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fogsched/environment.hpp"
#include "fogsched/oracle.hpp"
#include "fogsched/queues.hpp"
#include "fogsched/rng.hpp"
#include "fogsched/scheduler.hpp"
#include "fogsched/utility.hpp"

namespace fogsched {

RunResult run_simulation(const NetworkConfig& cfg) {
    const int n = cfg.num_wd, m = cfg.num_fog;
    Rng mobility_rng(derive_seed(cfg.rng_seed, 0));
    Rng fading_rng(derive_seed(cfg.rng_seed, 1));
    Rng arrival_rng(derive_seed(cfg.rng_seed, 2));

    MobilityState fog_mob = init_mobility(m, cfg.area_side, cfg.fog_speed_min, cfg.fog_speed_max,
                                          cfg.pause_time, mobility_rng);
    MobilityState wd_mob = init_mobility(n, cfg.area_side, cfg.wd_speed_min, cfg.wd_speed_max,
                                         cfg.pause_time, mobility_rng);

    RunResult out;
    out.records.reserve(cfg.num_slots);
    out.mean_admitted_wd.assign(n, 0.0);
    out.mean_gamma_wd.assign(n, 0.0);

    SlotState state;
    state.q_fog.assign(m, 0.0);
    state.s_wd.assign(n, 0.0);
    state.z_virtual.assign(n, 0.0);

    EtaTracker tracker(n, cfg.eta_init);
    DelayMetric delay;
    double cum_exec = 0.0, cum_tx = 0.0;

    for (long t = 0; t < cfg.num_slots; ++t) {
        state.t = t;
        state.pos_fog.resize(m);
        state.pos_wd.resize(n);
        for (int j = 0; j < m; ++j) state.pos_fog[j] = fog_mob.nodes[j].pos;
        for (int i = 0; i < n; ++i) state.pos_wd[i] = wd_mob.nodes[i].pos;
        state.gains = draw_gains(state.pos_wd, state.pos_fog, cfg, fading_rng);
        state.arrivals = draw_arrivals(cfg, arrival_rng);

        const double eta_t = tracker.current();
        GsTrace trace;
        const Control c = schedule_slot(state, eta_t, cfg, &trace);

        ++out.gs_slots;
        if (trace.converged) ++out.gs_converged_slots;
        for (std::size_t k = 1; k < trace.objective.size(); ++k) {
            const double scale = std::max({std::abs(trace.objective[k - 1]),
                                           std::abs(trace.objective[k]), 1.0});
            if (trace.objective[k] > trace.objective[k - 1] + 1e-9 * scale) out.gs_monotone = false;
        }
        if (out.constraint_violation.empty()) {
            const std::string err = oracle::check_control(c, state, cfg);
            if (!err.empty()) {
                std::ostringstream os;
                os << "slot " << t << ": " << err;
                out.constraint_violation = os.str();
            }
        }

        // flows and powers for this slot
        std::vector<double> offload_total(n, 0.0);
        std::vector<double> transferred(m, 0.0);
        double exec_power = 0.0, tx_power = 0.0;
        std::vector<double> mu(m);
        for (int j = 0; j < m; ++j) {
            mu[j] = execution_amount(c.f[j], cfg);
            exec_power += execution_power(c.f[j], cfg);
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) {
                tx_power += c.p_tr(i, j);
                if (c.alpha(i, j) > 0.0) {
                    const double cap = link_capacity(c.p_tr(i, j), state.gains(i, j), cfg);
                    offload_total[i] += cap;
                    transferred[j] += std::min(cap, state.s_wd[i]);
                }
            }
        }

        // Lyapunov bookkeeping before the queue transition
        double lyap_before = 0.0, cross = 0.0;
        for (int j = 0; j < m; ++j) lyap_before += 0.5 * state.q_fog[j] * state.q_fog[j];
        for (int i = 0; i < n; ++i)
            lyap_before += 0.5 * (state.s_wd[i] * state.s_wd[i] +
                                  state.z_virtual[i] * state.z_virtual[i]);
        {
            std::vector<double> inflow_full(m, 0.0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j)
                    if (c.alpha(i, j) > 0.0)
                        inflow_full[j] += link_capacity(c.p_tr(i, j), state.gains(i, j), cfg);
            for (int j = 0; j < m; ++j) cross += state.q_fog[j] * (inflow_full[j] - mu[j]);
            for (int i = 0; i < n; ++i) {
                cross += state.z_virtual[i] * (c.gamma[i] - c.admitted[i]);
                cross += state.s_wd[i] * (c.admitted[i] - offload_total[i]);
            }
        }

        RunRecord rec;
        rec.t = t;
        rec.eta_t = eta_t;
        double qs = 0.0, ss = 0.0, zs = 0.0, sa = 0.0, sg = 0.0;
        for (int j = 0; j < m; ++j) qs += state.q_fog[j];
        for (int i = 0; i < n; ++i) {
            ss += state.s_wd[i];
            zs += state.z_virtual[i];
            sa += c.admitted[i];
            sg += c.gamma[i];
        }
        rec.mean_q_fog = qs / m;
        rec.mean_s_wd = ss / n;
        rec.mean_z = zs / n;
        rec.total_exec_power = exec_power;
        rec.total_tx_power = tx_power;
        rec.sum_admitted = sa;
        rec.sum_gamma = sg;
        delay.record(state.q_fog, state.s_wd);
        rec.d_metric = delay.value();
        if (!std::isfinite(rec.eta_t) || !std::isfinite(rec.mean_q_fog) ||
            !std::isfinite(rec.mean_s_wd) || !std::isfinite(rec.mean_z) ||
            !std::isfinite(exec_power) || !std::isfinite(tx_power) || !std::isfinite(sa) ||
            !std::isfinite(sg) || !std::isfinite(rec.d_metric)) {
            std::ostringstream os;
            os << "non-finite metric at slot " << t;
            throw std::runtime_error(os.str());
        }
        out.records.push_back(rec);

        // queue transitions; transferred[] already captured start-of-slot S
        for (int i = 0; i < n; ++i) {
            state.s_wd[i] = update_wd_queue(state.s_wd[i], offload_total[i], c.admitted[i]);
            state.z_virtual[i] = update_virtual_queue(state.z_virtual[i], c.gamma[i], c.admitted[i]);
        }
        for (int j = 0; j < m; ++j)
            state.q_fog[j] = update_fog_queue(state.q_fog[j], mu[j], transferred[j]);

        double lyap_after = 0.0;
        for (int j = 0; j < m; ++j) lyap_after += 0.5 * state.q_fog[j] * state.q_fog[j];
        for (int i = 0; i < n; ++i)
            lyap_after += 0.5 * (state.s_wd[i] * state.s_wd[i] +
                                 state.z_virtual[i] * state.z_virtual[i]);
        out.max_drift_excess = std::max(out.max_drift_excess, (lyap_after - lyap_before) - cross);

        eta_update(tracker, c.gamma, exec_power, tx_power, cfg);
        for (int i = 0; i < n; ++i) {
            out.mean_admitted_wd[i] += c.admitted[i];
            out.mean_gamma_wd[i] += c.gamma[i];
        }
        cum_exec += exec_power;
        cum_tx += tx_power;

        step_mobility(fog_mob, cfg.slot_len, mobility_rng);
        step_mobility(wd_mob, cfg.slot_len, mobility_rng);
    }

    const double slots = static_cast<double>(cfg.num_slots);
    for (int i = 0; i < n; ++i) {
        out.mean_admitted_wd[i] /= slots;
        out.mean_gamma_wd[i] /= slots;
    }
    double total_util = 0.0, sum_admitted = 0.0;
    for (int i = 0; i < n; ++i) {
        total_util += utility(cfg, out.mean_admitted_wd[i]);
        sum_admitted += out.mean_admitted_wd[i];
    }
    SummaryRow& s = out.summary;
    s.mean_exec_power = cum_exec / slots;
    s.mean_tx_power = cum_tx / slots;
    s.total_utility = total_util;
    s.eta = total_util / (s.mean_exec_power + s.mean_tx_power + cfg.c0);
    s.eta_tracker = tracker.current();
    s.d_metric = delay.value();
    s.mean_admitted = sum_admitted;
    return out;
}

NetworkConfig config_for_point(const ExperimentSpec& spec, double value, std::uint64_t seed) {
    NetworkConfig cfg = spec.base;
    switch (spec.axis) {
        case ExperimentSpec::Axis::V: cfg.v_param = value; break;
        case ExperimentSpec::Axis::Fog: cfg.num_fog = static_cast<int>(value); break;
        case ExperimentSpec::Axis::Wd: cfg.num_wd = static_cast<int>(value); break;
        case ExperimentSpec::Axis::None: break;
    }
    cfg.rng_seed = seed;
    return cfg;
}

std::vector<SummaryRow> sweep_raw(const ExperimentSpec& spec, std::vector<RunDiagnostics>* diags) {
    if (spec.axis != ExperimentSpec::Axis::None && spec.values.empty())
        throw std::invalid_argument("sweep: no sweep values given");
    std::vector<std::uint64_t> seeds = spec.seeds.empty() ? std::vector<std::uint64_t>{1}
                                                          : spec.seeds;
    for (std::size_t a = 0; a < seeds.size(); ++a)
        for (std::size_t b = a + 1; b < seeds.size(); ++b)
            if (seeds[a] == seeds[b]) throw std::invalid_argument("sweep: seeds must be distinct");

    std::vector<double> values = spec.values.empty() ? std::vector<double>{0.0} : spec.values;
    struct Point {
        double value;
        std::uint64_t seed;
    };
    struct PointResult {
        SummaryRow row;
        RunDiagnostics diag;
    };
    std::vector<Point> points;
    for (double v : values)
        for (std::uint64_t s : seeds) points.push_back({v, s});

    std::vector<std::future<PointResult>> futs(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        futs[k] = std::async(std::launch::async, [&spec, p = points[k]]() {
            try {
                NetworkConfig cfg = config_for_point(spec, p.value, p.seed);
                RunResult r = run_simulation(cfg);
                r.summary.sweep_value = p.value;
                PointResult out;
                out.row = r.summary;
                out.diag = {r.constraint_violation, r.gs_monotone, r.gs_slots,
                            r.gs_converged_slots, r.max_drift_excess};
                return out;
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << "sweep point value=" << p.value << " seed=" << p.seed
                   << " failed: " << e.what();
                throw std::runtime_error(os.str());
            }
        });
    }
    std::vector<SummaryRow> rows(points.size());
    if (diags) diags->resize(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        PointResult pr = futs[k].get();
        rows[k] = pr.row;
        if (diags) (*diags)[k] = pr.diag;
    }
    return rows;
}

std::vector<SummaryRow> sweep(const ExperimentSpec& spec) {
    const std::size_t n_seeds = spec.seeds.empty() ? 1 : spec.seeds.size();
    std::vector<SummaryRow> raw = sweep_raw(spec);
    std::vector<SummaryRow> rows;
    for (std::size_t base = 0; base < raw.size(); base += n_seeds) {
        SummaryRow avg = raw[base];
        for (std::size_t k = 1; k < n_seeds; ++k) {
            const SummaryRow& r = raw[base + k];
            avg.eta += r.eta;
            avg.eta_tracker += r.eta_tracker;
            avg.d_metric += r.d_metric;
            avg.total_utility += r.total_utility;
            avg.mean_exec_power += r.mean_exec_power;
            avg.mean_tx_power += r.mean_tx_power;
            avg.mean_admitted += r.mean_admitted;
        }
        const double inv = 1.0 / static_cast<double>(n_seeds);
        avg.eta *= inv;
        avg.eta_tracker *= inv;
        avg.d_metric *= inv;
        avg.total_utility *= inv;
        avg.mean_exec_power *= inv;
        avg.mean_tx_power *= inv;
        avg.mean_admitted *= inv;
        rows.push_back(avg);
    }
    return rows;
}

} // namespace fogsched
