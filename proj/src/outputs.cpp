#include "fogsched/outputs.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fogsched {

using nlohmann::json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create directory " + dir + ": " + ec.message());
}

std::string slots_csv_text(const std::vector<RunRecord>& records) {
    std::ostringstream os;
    os << "t,eta_t,mean_q_fog,mean_s_wd,mean_z,total_exec_power,total_tx_power,"
          "sum_admitted,sum_gamma,d_metric\n";
    for (const auto& r : records) {
        os << r.t << ',' << format_double(r.eta_t) << ',' << format_double(r.mean_q_fog) << ','
           << format_double(r.mean_s_wd) << ',' << format_double(r.mean_z) << ','
           << format_double(r.total_exec_power) << ',' << format_double(r.total_tx_power) << ','
           << format_double(r.sum_admitted) << ',' << format_double(r.sum_gamma) << ','
           << format_double(r.d_metric) << '\n';
    }
    return os.str();
}

namespace {
void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}
} // namespace

void write_slots_csv(const std::string& dir, const std::string& tag,
                     const std::vector<RunRecord>& records) {
    if (records.empty()) throw std::runtime_error("no slots recorded");
    ensure_dir(dir);
    write_text(dir + "/slots_" + tag + ".csv", slots_csv_text(records));
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ostringstream os;
    os << "sweep_value,eta,eta_tracker,d_metric,total_utility,mean_exec_power,"
          "mean_tx_power,mean_admitted\n";
    for (const auto& r : rows) {
        os << format_double(r.sweep_value) << ',' << format_double(r.eta) << ','
           << format_double(r.eta_tracker) << ',' << format_double(r.d_metric) << ','
           << format_double(r.total_utility) << ',' << format_double(r.mean_exec_power) << ','
           << format_double(r.mean_tx_power) << ',' << format_double(r.mean_admitted) << '\n';
    }
    write_text(path, os.str());
}

void write_bounds_json(const std::string& path, const std::vector<oracle::BoundsReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) {
        arr.push_back({
            {"v_param", r.v_param},
            {"vartheta", r.vartheta},
            {"e_max", r.e_max},
            {"epsilon_est", r.epsilon_est},
            {"eta_star_est", r.eta_star_est},
            {"eta_measured", r.eta_measured},
            {"d_measured", r.d_measured},
            {"eta_lower_bound", r.eta_lower_bound},
            {"d_upper_bound", r.d_upper_bound},
            {"eta_bound_holds", r.eta_bound_holds},
            {"d_bound_holds", r.d_bound_holds},
        });
    }
    write_text(path, json{{"reports", arr}}.dump(2) + "\n");
}

void write_manifest(const std::string& path, const NetworkConfig& cfg) {
    json j;
    char hash[20];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    j["config_hash"] = hash;
    j["seed"] = cfg.rng_seed;
    j["config"] = json::parse(config_to_json_text(cfg));
    // the dB fields do not round-trip bit-exactly; keep the linear values too
    // so a rerun from the manifest reproduces the output byte for byte
    j["config_exact"] = {{"noise_n0", cfg.noise_n0}, {"pathloss_g0", cfg.pathloss_g0}};
    write_text(path, j.dump(2) + "\n");
}

} // namespace fogsched
