#pragma once

#include <vector>

#include "fogsched/config.hpp"
#include "fogsched/types.hpp"

namespace fogsched {

// Physical rate equations and the exact queue update laws.

// bits executed by one fog in a slot: tau * f / L
double execution_amount(double f_hz, const NetworkConfig& cfg);

// CPU power draw: kappa * f^3
double execution_power(double f_hz, const NetworkConfig& cfg);

// bits one link can carry in a slot: omega * tau * log2(1 + p*g / (omega*N0))
double link_capacity(double p_watts, double gain, const NetworkConfig& cfg);

// S' = [S - offload_total]^+ + a
double update_wd_queue(double s, double offload_total, double a);

// Q' = [Q - mu]^+ + transferred_sum
double update_fog_queue(double q, double mu, double transferred_sum);

// Z' = [Z + gamma - a]^+
double update_virtual_queue(double z, double gamma, double a);

// Running time-average of (mean fog backlog + mean WD backlog).
class DelayMetric {
  public:
    void record(const std::vector<double>& q_fog, const std::vector<double>& s_wd);
    // Throws std::logic_error when no slot has been recorded.
    double value() const;
    long slots() const { return slots_; }

  private:
    double sum_ = 0.0;
    long slots_ = 0;
};

// Debug-only per-(wd, fog) fog sub-queues. The aggregate law is what the
// scheduler uses; this exists to check that the sub-queue dynamics sum to it.
struct FogSubQueues {
    Mat q; // wd x fog

    explicit FogSubQueues(int num_wd, int num_fog) : q(num_wd, num_fog, 0.0) {}

    std::vector<double> totals() const;

    // Applies the per-pair update with service mu_j allocated across WDs in
    // index order, never past a sub-queue's backlog.
    void step(const std::vector<double>& mu_fog, const Mat& alpha, const Mat& capacity,
              const std::vector<double>& s_wd_at_slot_start);
};

} // namespace fogsched
