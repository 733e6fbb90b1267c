#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fogsched/config.hpp"
#include "fogsched/types.hpp"

namespace fogsched {

struct SummaryRow {
    double sweep_value = 0.0;
    double eta = 0.0;           // achieved: sum U(mean admitted) / (mean power + C0)
    double eta_tracker = 0.0;   // final value of the running ratio estimate
    double d_metric = 0.0;      // bits
    double total_utility = 0.0; // sum_i U(mean admitted_i)
    double mean_exec_power = 0.0; // W
    double mean_tx_power = 0.0;   // W
    double mean_admitted = 0.0;   // bits/slot, summed over WDs
};

struct RunResult {
    std::vector<RunRecord> records;
    SummaryRow summary;
    std::vector<double> mean_admitted_wd; // bits/slot per wd
    std::vector<double> mean_gamma_wd;    // bits/slot per wd

    // diagnostics gathered inline
    std::string constraint_violation; // empty when every slot was clean
    double max_drift_excess = 0.0;    // max over slots of (Lyapunov diff - cross terms)
    long gs_slots = 0;
    long gs_converged_slots = 0;
    bool gs_monotone = true;
};

// Executes the slot loop: observe state, update the ratio estimate, solve the
// per-slot problem, apply the queue laws, record, then move nodes. Throws
// std::runtime_error naming the slot on any non-finite metric.
RunResult run_simulation(const NetworkConfig& cfg);

struct ExperimentSpec {
    enum class Axis { None, V, Fog, Wd };
    NetworkConfig base;
    Axis axis = Axis::None;
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
};

// One summary row per sweep value, averaged over the replication seeds. Runs
// execute in parallel; any failure surfaces with its sweep context.
std::vector<SummaryRow> sweep(const ExperimentSpec& spec);

struct RunDiagnostics {
    std::string constraint_violation;
    bool gs_monotone = true;
    long gs_slots = 0;
    long gs_converged_slots = 0;
    double max_drift_excess = 0.0;
};

// Per-point rows before seed-averaging (one row per value x seed), in
// deterministic order; optionally surfaces per-run diagnostics.
std::vector<SummaryRow> sweep_raw(const ExperimentSpec& spec,
                                  std::vector<RunDiagnostics>* diags = nullptr);

NetworkConfig config_for_point(const ExperimentSpec& spec, double value, std::uint64_t seed);

} // namespace fogsched
