#pragma once

#include <string>
#include <vector>

#include "fogsched/config.hpp"
#include "fogsched/types.hpp"

namespace fogsched::oracle {

// Independent brute-force verifiers and the theoretical constants. Nothing
// here shares solver code with the scheduler.

// Empty string when the control satisfies every per-slot constraint,
// otherwise a description of the first violation found.
std::string check_control(const Control& c, const SlotState& state, const NetworkConfig& cfg);

// The per-slot objective the scheduler minimizes, evaluated exactly as posed
// (the control-node constant is not part of it). Throws std::invalid_argument
// when the control violates a constraint.
double p4_objective(const Control& c, const SlotState& state, double eta,
                    const NetworkConfig& cfg);

struct GridSizes {
    int gamma = 801;
    int admission = 101;
    int freq = 1001;
    int power = 601;
};

// Global minimizer of the per-slot objective up to grid resolution:
// independent per-variable grids plus exhaustive enumeration of feasible
// binary assignments. Throws when the instance is too large to enumerate.
Control brute_force_slot(const SlotState& state, double eta, const NetworkConfig& cfg,
                         const GridSizes& grid = {});

struct EnumResult {
    double value = 0.0;
    std::vector<int> assignment; // wd -> fog or -1
};

// Exhaustive search over every feasible assignment (wd degree <= 1, fog
// degree <= fog_cap). Guarded to |N| <= 8, |M| <= 4.
EnumResult enumerate_matchings(const Mat& weights, int fog_cap);

// Optimum of the continuous relaxation of the assignment problem
// (0 <= alpha <= 1, row sums <= 1, column sums <= fog_cap), via a dense
// tableau simplex with Bland's rule. Used to witness integrality.
double lp_relaxation_value(const Mat& weights, int fog_cap);

struct MaxRates {
    double mu_max = 0.0;    // bits/slot per fog
    double c_max = 0.0;     // bits/slot per link
    double a_max = 0.0;     // bits/slot per wd
    double gamma_max = 0.0; // bits/slot per wd
};

// Worst-case per-slot rates implied by the configuration; link capacity is
// evaluated at the reference distance with the configured fading cap.
MaxRates default_max_rates(const NetworkConfig& cfg);

// Drift bound constant: substitutes the rate caps into the squared terms of
// the one-slot Lyapunov expansion.
double compute_vartheta(const NetworkConfig& cfg, const MaxRates& rates);

// Aggregate service-minus-arrival slack measured under a stationary witness
// policy (full clock, sparse randomized offloading, throttled admission).
// Throws std::runtime_error when the probe cannot certify a positive slack.
double estimate_slater_epsilon(const NetworkConfig& cfg, std::uint64_t seed, int probe_slots);

struct BoundsReport {
    double vartheta = 0.0;        // bits^2
    double e_max = 0.0;           // W
    double epsilon_est = 0.0;     // bits/slot
    double eta_star_est = 0.0;    // utility/W
    double v_param = 0.0;
    double eta_measured = 0.0;
    double d_measured = 0.0;
    double eta_lower_bound = 0.0; // eta_star_est - vartheta / (V C0)
    double d_upper_bound = 0.0;   // vartheta/eps + V eta e_max / eps
    bool eta_bound_holds = false;
    bool d_bound_holds = false;
};

// Theoretical bound check for one run at one V.
BoundsReport bounds_report(const NetworkConfig& cfg, double eta_measured, double d_measured,
                           double eta_star_est, double epsilon_est);

double max_total_power(const NetworkConfig& cfg); // sum kappa f_max^3 + |N| p_max

} // namespace fogsched::oracle
