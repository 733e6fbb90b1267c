#pragma once

#include <cstddef>
#include <vector>

namespace fogsched {

// Dense row-major matrix indexed (wd, fog) throughout this project.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, fill) {}

    double& operator()(int i, int j) { return v[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return v[static_cast<std::size_t>(i) * cols + j]; }
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Observables at the start of one slot: geometry, channel, arrivals and the
// queue vector theta(t) = [Q, S, Z].
struct SlotState {
    long t = 0;
    std::vector<Vec2> pos_fog;
    std::vector<Vec2> pos_wd;
    Mat gains;                    // wd x fog, composite channel power gain
    std::vector<double> arrivals; // bits, per wd
    std::vector<double> q_fog;    // bits, per fog
    std::vector<double> s_wd;     // bits, per wd
    std::vector<double> z_virtual; // bits, per wd
};

// One slot's decision chi(t) = (f, P^tr, alpha, a) plus auxiliary gamma.
struct Control {
    std::vector<double> f;        // Hz, per fog
    Mat p_tr;                     // W, wd x fog
    Mat alpha;                    // {0,1}, wd x fog
    std::vector<double> admitted; // bits, per wd
    std::vector<double> gamma;    // bits, per wd
};

// Running sums behind the per-slot efficiency ratio estimate. Owned by a
// single simulation loop; never shared.
class EtaTracker {
  public:
    EtaTracker(int num_wd, double eta_init)
        : cum_gamma_(num_wd, 0.0), eta_current_(eta_init) {}

    // Fold in one finished slot's auxiliary variables and total power.
    void accumulate(const std::vector<double>& gamma, double power_watts) {
        for (std::size_t i = 0; i < cum_gamma_.size(); ++i) cum_gamma_[i] += gamma[i];
        cum_power_ += power_watts;
        ++slots_seen_;
    }

    long slots_seen() const { return slots_seen_; }
    double cum_power() const { return cum_power_; }
    const std::vector<double>& cum_gamma() const { return cum_gamma_; }
    double current() const { return eta_current_; }
    void set_current(double eta) { eta_current_ = eta; }

  private:
    std::vector<double> cum_gamma_;
    double cum_power_ = 0.0;
    long slots_seen_ = 0;
    double eta_current_;
};

// One CSV row per slot.
struct RunRecord {
    long t = 0;
    double eta_t = 0.0;
    double mean_q_fog = 0.0;
    double mean_s_wd = 0.0;
    double mean_z = 0.0;
    double total_exec_power = 0.0; // W
    double total_tx_power = 0.0;   // W
    double sum_admitted = 0.0;     // bits
    double sum_gamma = 0.0;        // bits
    double d_metric = 0.0;         // bits, running backlog average
};

} // namespace fogsched
