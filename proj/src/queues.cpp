#include "fogsched/queues.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fogsched {

double execution_amount(double f_hz, const NetworkConfig& cfg) {
    return cfg.slot_len * f_hz / cfg.cycles_per_bit;
}

double execution_power(double f_hz, const NetworkConfig& cfg) {
    return cfg.kappa * f_hz * f_hz * f_hz;
}

double link_capacity(double p_watts, double gain, const NetworkConfig& cfg) {
    const double snr = p_watts * gain / (cfg.bandwidth * cfg.noise_n0);
    return cfg.bandwidth * cfg.slot_len * std::log2(1.0 + snr);
}

double update_wd_queue(double s, double offload_total, double a) {
    return std::max(s - offload_total, 0.0) + a;
}

double update_fog_queue(double q, double mu, double transferred_sum) {
    return std::max(q - mu, 0.0) + transferred_sum;
}

double update_virtual_queue(double z, double gamma, double a) {
    return std::max(z + gamma - a, 0.0);
}

void DelayMetric::record(const std::vector<double>& q_fog, const std::vector<double>& s_wd) {
    double q = 0.0, s = 0.0;
    for (double x : q_fog) q += x;
    for (double x : s_wd) s += x;
    sum_ += q / static_cast<double>(q_fog.size()) + s / static_cast<double>(s_wd.size());
    ++slots_;
}

double DelayMetric::value() const {
    if (slots_ == 0) throw std::logic_error("delay metric: no slots recorded");
    return sum_ / static_cast<double>(slots_);
}

std::vector<double> FogSubQueues::totals() const {
    std::vector<double> t(q.cols, 0.0);
    for (int j = 0; j < q.cols; ++j)
        for (int i = 0; i < q.rows; ++i) t[j] += q(i, j);
    return t;
}

void FogSubQueues::step(const std::vector<double>& mu_fog, const Mat& alpha, const Mat& capacity,
                        const std::vector<double>& s_wd_at_slot_start) {
    for (int j = 0; j < q.cols; ++j) {
        double remaining = mu_fog[j];
        for (int i = 0; i < q.rows; ++i) {
            const double served = std::min(q(i, j), remaining);
            remaining -= served;
            const double in =
                std::min(alpha(i, j) * capacity(i, j), alpha(i, j) * s_wd_at_slot_start[i]);
            q(i, j) = q(i, j) - served + in;
        }
    }
}

} // namespace fogsched
