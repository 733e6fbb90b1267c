#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fogsched/config.hpp"
#include "fogsched/environment.hpp"
#include "fogsched/oracle.hpp"
#include "fogsched/outputs.hpp"
#include "fogsched/simulation.hpp"
#include "fogsched/verification.hpp"

namespace {

using namespace fogsched;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> slots;
    std::optional<double> v;
};

NetworkConfig load_base(const CommonOpts& o) {
    NetworkConfig cfg = o.config_path.empty() ? NetworkConfig{} : load_config(o.config_path);
    if (o.seed) cfg.rng_seed = *o.seed;
    if (o.slots) cfg.num_slots = *o.slots;
    if (o.v) cfg.v_param = *o.v;
    const auto errs = validate(cfg);
    if (!errs.empty()) throw ConfigError("invalid configuration", errs);
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--seed", o.seed, "override rng seed");
    cmd->add_option("--slots", o.slots, "override slot count");
    cmd->add_option("--v", o.v, "override trade-off parameter V");
}

std::vector<std::uint64_t> parse_seeds(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stoull(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

int do_run(const CommonOpts& o, const std::string& tag, bool dump_positions) {
    NetworkConfig cfg = load_base(o);
    if (dump_positions) {
        // positions trace for debugging; one row per slot per node
        Rng mob_rng(derive_seed(cfg.rng_seed, 0));
        MobilityState fog = init_mobility(cfg.num_fog, cfg.area_side, cfg.fog_speed_min,
                                          cfg.fog_speed_max, cfg.pause_time, mob_rng);
        MobilityState wd = init_mobility(cfg.num_wd, cfg.area_side, cfg.wd_speed_min,
                                         cfg.wd_speed_max, cfg.pause_time, mob_rng);
        ensure_dir(o.out_dir);
        std::string path = o.out_dir + "/positions_" + tag + ".csv";
        FILE* f = std::fopen(path.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot open " + path);
        std::fprintf(f, "t,kind,node,x,y\n");
        for (int t = 0; t < cfg.num_slots; ++t) {
            for (int j = 0; j < cfg.num_fog; ++j)
                std::fprintf(f, "%d,fog,%d,%s,%s\n", t, j,
                             format_double(fog.nodes[j].pos.x).c_str(),
                             format_double(fog.nodes[j].pos.y).c_str());
            for (int i = 0; i < cfg.num_wd; ++i)
                std::fprintf(f, "%d,wd,%d,%s,%s\n", t, i,
                             format_double(wd.nodes[i].pos.x).c_str(),
                             format_double(wd.nodes[i].pos.y).c_str());
            step_mobility(fog, cfg.slot_len, mob_rng);
            step_mobility(wd, cfg.slot_len, mob_rng);
        }
        std::fclose(f);
    }
    RunResult r = run_simulation(cfg);
    ensure_dir(o.out_dir);
    write_slots_csv(o.out_dir, tag, r.records);
    r.summary.sweep_value = cfg.v_param;
    write_summary_csv(o.out_dir + "/summary.csv", {r.summary});
    write_manifest(o.out_dir + "/manifest.json", cfg);
    if (!r.constraint_violation.empty()) {
        std::cerr << "constraint violation: " << r.constraint_violation << "\n";
        return 1;
    }
    std::printf("run complete: %d slots, eta=%.6g, D=%.6g bits, power=%.6g W\n", cfg.num_slots,
                r.summary.eta, r.summary.d_metric,
                r.summary.mean_exec_power + r.summary.mean_tx_power);
    return 0;
}

int do_sweep(const CommonOpts& o, ExperimentSpec::Axis axis, std::vector<double> values,
             const std::string& seeds_arg) {
    ExperimentSpec spec;
    spec.base = load_base(o);
    spec.axis = axis;
    spec.values = std::move(values);
    spec.seeds = seeds_arg.empty() ? std::vector<std::uint64_t>{1, 2, 3} : parse_seeds(seeds_arg);
    const auto rows = sweep(spec);
    ensure_dir(o.out_dir);
    write_summary_csv(o.out_dir + "/summary.csv", rows);
    write_manifest(o.out_dir + "/manifest.json", spec.base);
    for (const auto& r : rows)
        std::printf("value=%-12g eta=%-10.6g D=%-12.6g utility=%-10.6g power=%.6g\n",
                    r.sweep_value, r.eta, r.d_metric, r.total_utility,
                    r.mean_exec_power + r.mean_tx_power);
    return 0;
}

int do_verify(const CommonOpts& o) {
    NetworkConfig cfg = load_base(o);
    int failures = 0;
    auto report = [&](const char* name, const CheckResult& r) {
        std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", name, r.detail.c_str());
        if (!r.pass) ++failures;
    };
    report("closed-forms-vs-grid", verify_closed_forms(cfg, cfg.rng_seed, 100, 10000, 1e-6));
    report("matching-vs-enumeration", verify_matching(cfg.rng_seed, 200));
    report("assignment-integrality", verify_integrality(cfg.rng_seed, 100));
    report("whole-slot-vs-brute-force", verify_whole_slot(cfg.rng_seed, 20, 1e-4));
    return failures == 0 ? 0 : 1;
}

int do_bounds(const CommonOpts& o, const std::string& seeds_arg) {
    NetworkConfig base = load_base(o);
    ExperimentSpec spec;
    spec.base = base;
    spec.axis = ExperimentSpec::Axis::V;
    spec.values = {1e6, 2e6, 3e6, 4e6, 5e6, 6e6, 7e6};
    spec.seeds = seeds_arg.empty() ? std::vector<std::uint64_t>{1} : parse_seeds(seeds_arg);
    const auto rows = sweep(spec);

    // eta* estimated from a high-V reference run
    NetworkConfig ref = base;
    ref.v_param = 1e7;
    double eta_star = run_simulation(ref).summary.eta;
    for (const auto& r : rows) eta_star = std::max(eta_star, r.eta);

    const double eps = oracle::estimate_slater_epsilon(base, base.rng_seed, 2000);
    std::vector<oracle::BoundsReport> reports;
    bool all_hold = true;
    for (const auto& r : rows) {
        NetworkConfig cfg = base;
        cfg.v_param = r.sweep_value;
        const auto rep = oracle::bounds_report(cfg, r.eta, r.d_metric, eta_star, eps);
        all_hold = all_hold && rep.eta_bound_holds && rep.d_bound_holds;
        reports.push_back(rep);
        std::printf("V=%-10g eta=%-10.6g >= %-12.6g : %s   D=%-12.6g <= %-12.6g : %s\n",
                    rep.v_param, rep.eta_measured, rep.eta_lower_bound,
                    rep.eta_bound_holds ? "ok" : "VIOLATED", rep.d_measured, rep.d_upper_bound,
                    rep.d_bound_holds ? "ok" : "VIOLATED");
    }
    ensure_dir(o.out_dir);
    write_bounds_json(o.out_dir + "/bounds.json", reports);
    write_summary_csv(o.out_dir + "/summary.csv", rows);
    return all_hold ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fog network utility-power efficient task scheduling simulator"};
    app.require_subcommand(1);

    CommonOpts run_o, sv_o, sf_o, sw_o, ver_o, b_o;
    std::string run_tag = "run";
    bool dump_positions = false;
    std::string sv_seeds, sf_seeds, sw_seeds, b_seeds;
    std::vector<double> sv_values{1e6, 2e6, 3e6, 4e6, 5e6, 6e6, 7e6};
    std::vector<double> sf_values{2, 4, 6, 8, 10, 12, 14, 16};
    std::vector<double> sw_values{10, 20, 30, 40, 50, 60};

    auto* run = app.add_subcommand("run", "single simulation run, writes per-slot CSV");
    add_common(run, run_o);
    run->add_option("--tag", run_tag, "output file tag");
    run->add_flag("--dump-positions", dump_positions, "also write per-slot positions CSV");

    auto* sv = app.add_subcommand("sweep-v", "sweep the trade-off parameter V");
    add_common(sv, sv_o);
    sv->add_option("--values", sv_values, "sweep values");
    sv->add_option("--seeds", sv_seeds, "comma-separated replication seeds");

    auto* sf = app.add_subcommand("sweep-fog", "sweep the number of fog nodes");
    add_common(sf, sf_o);
    sf->add_option("--values", sf_values, "sweep values");
    sf->add_option("--seeds", sf_seeds, "comma-separated replication seeds");

    auto* sw = app.add_subcommand("sweep-wd", "sweep the number of wireless devices");
    add_common(sw, sw_o);
    sw->add_option("--values", sw_values, "sweep values");
    sw->add_option("--seeds", sw_seeds, "comma-separated replication seeds");

    auto* ver = app.add_subcommand("verify", "run the brute-force oracle suite");
    add_common(ver, ver_o);

    auto* bnd = app.add_subcommand("bounds", "check the theoretical performance bounds");
    add_common(bnd, b_o);
    bnd->add_option("--seeds", b_seeds, "comma-separated replication seeds");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return do_run(run_o, run_tag, dump_positions);
        if (sv->parsed()) return do_sweep(sv_o, fogsched::ExperimentSpec::Axis::V, sv_values, sv_seeds);
        if (sf->parsed()) return do_sweep(sf_o, fogsched::ExperimentSpec::Axis::Fog, sf_values, sf_seeds);
        if (sw->parsed()) return do_sweep(sw_o, fogsched::ExperimentSpec::Axis::Wd, sw_values, sw_seeds);
        if (ver->parsed()) return do_verify(ver_o);
        if (bnd->parsed()) return do_bounds(b_o, b_seeds);
    } catch (const fogsched::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
