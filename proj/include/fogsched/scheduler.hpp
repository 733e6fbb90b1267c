#pragma once

#include <vector>

#include "fogsched/config.hpp"
#include "fogsched/types.hpp"

namespace fogsched {

// The online per-slot policy: closed-form subproblem solutions plus the
// alternating power/offloading optimization.

// Accumulates one slot and returns the efficiency ratio for the next slot:
// sum_i U(avg gamma_i) / (avg power + C0). Falls back to the previous
// positive value whenever the ratio is not positive and finite.
double eta_update(EtaTracker& tracker, const std::vector<double>& gamma,
                  double exec_power, double tx_power, const NetworkConfig& cfg);

// gamma_i = clamp((U')^{-1}(Z_i / V), 0, a_max)
std::vector<double> solve_auxiliary(const std::vector<double>& z, const NetworkConfig& cfg);

// a_i = A_i when S_i < Z_i, else 0
std::vector<double> solve_admission(const std::vector<double>& s, const std::vector<double>& z,
                                    const std::vector<double>& arrivals);

// f_j = clamp(sqrt(Q_j tau / (3 kappa V eta L)), 0, f_max); throws when eta <= 0
std::vector<double> solve_cpu_clock(const std::vector<double>& q, double eta,
                                    const NetworkConfig& cfg);

// Per-pair transmit power for a fixed assignment; zero wherever alpha is zero.
Mat solve_power_given_alpha(const Mat& alpha, const std::vector<double>& s,
                            const std::vector<double>& q, const Mat& gains, double eta,
                            const NetworkConfig& cfg);

// Assignment for fixed powers: max-weight matching on w_ij = (S_i - Q_j) C_ij
// with WD degree <= 1 and fog degree <= antennas.
Mat solve_offloading_given_power(const Mat& p_tr, const std::vector<double>& s,
                                 const std::vector<double>& q, const Mat& gains,
                                 const NetworkConfig& cfg);

struct GsTrace {
    std::vector<double> objective; // value after each full iteration
    int iterations = 0;
    bool converged = false;
};

struct Sp4Result {
    Mat p_tr;
    Mat alpha;
    GsTrace trace;
};

// Joint power/offloading objective, evaluated exactly as posed:
// V eta sum(P) + sum_ij alpha_ij (Q_j - S_i) C_ij(P_ij).
double sp4_objective(const Mat& p_tr, const Mat& alpha, const std::vector<double>& s,
                     const std::vector<double>& q, const Mat& gains, double eta,
                     const NetworkConfig& cfg);

// Alternate {assignment given powers; powers given assignment} from
// P = p_max on every pair, until the objective's relative change drops below
// gs_rel_tol or gs_max_iters is reached.
Sp4Result gauss_seidel_sp4(const SlotState& state, double eta, const NetworkConfig& cfg);

// Full per-slot decision: composes the four subproblem solutions.
Control schedule_slot(const SlotState& state, double eta, const NetworkConfig& cfg,
                      GsTrace* trace_out = nullptr);

} // namespace fogsched
