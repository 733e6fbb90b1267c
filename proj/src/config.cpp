#include "fogsched/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fogsched {

using nlohmann::json;

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

std::string utility_name(UtilityKind k) {
    return k == UtilityKind::Log1p ? "log1p" : "alpha_fair";
}

UtilityKind utility_from_name(const std::string& s, std::vector<std::string>& errs) {
    if (s == "log1p") return UtilityKind::Log1p;
    if (s == "alpha_fair") return UtilityKind::AlphaFair;
    errs.push_back("utility_kind: unknown value '" + s + "' (expected log1p or alpha_fair)");
    return UtilityKind::Log1p;
}

template <typename T>
void read_field(const json& j, const char* name, T& out, std::vector<std::string>& errs) {
    if (!j.contains(name)) return;
    try {
        out = j.at(name).get<T>();
    } catch (const json::exception&) {
        errs.push_back(std::string(name) + ": wrong type");
    }
}

} // namespace

std::vector<std::string> validate(const NetworkConfig& c) {
    std::vector<std::string> errs;
    auto positive = [&](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) errs.push_back(std::string(name) + " must be positive");
    };
    if (c.num_fog < 1) errs.push_back("num_fog must be >= 1");
    if (c.num_wd < 1) errs.push_back("num_wd must be >= 1");
    if (c.antennas < 1) errs.push_back("antennas must be >= 1");
    positive(c.area_side, "area_side");
    positive(c.slot_len, "slot_len");
    positive(c.cycles_per_bit, "cycles_per_bit");
    positive(c.kappa, "kappa");
    positive(c.f_max, "f_max");
    positive(c.p_max, "p_max");
    if (!(c.a_max >= 0.0) || !std::isfinite(c.a_max)) errs.push_back("a_max must be >= 0");
    positive(c.c0, "c0"); // the efficiency bound divides by V*c0
    positive(c.bandwidth, "bandwidth");
    positive(c.noise_n0, "noise_n0");
    positive(c.pathloss_g0, "pathloss_g0");
    positive(c.pathloss_d0, "pathloss_d0");
    if (!std::isfinite(c.pathloss_exp) || c.pathloss_exp < 0.0)
        errs.push_back("pathloss_exp must be >= 0");
    positive(c.gain_sigma_cap, "gain_sigma_cap");
    if (c.fog_speed_min < 0.0 || c.fog_speed_max < c.fog_speed_min)
        errs.push_back("fog speed range invalid (need 0 <= min <= max)");
    if (c.wd_speed_min < 0.0 || c.wd_speed_max < c.wd_speed_min)
        errs.push_back("wd speed range invalid (need 0 <= min <= max)");
    if (c.pause_time < 0.0) errs.push_back("pause_time must be >= 0");
    if (!(c.v_param > 0.0)) errs.push_back("v_param: V must be positive");
    if (c.utility_kind == UtilityKind::AlphaFair) {
        if (!(c.alpha_fair > 0.0) || c.alpha_fair == 1.0)
            errs.push_back("alpha_fair must be positive and != 1");
    }
    positive(c.eta_init, "eta_init");
    if (c.gs_max_iters < 1) errs.push_back("gs_max_iters must be >= 1");
    positive(c.gs_rel_tol, "gs_rel_tol");
    if (c.num_slots < 1) errs.push_back("num_slots must be >= 1");
    return errs;
}

NetworkConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    json exact; // manifests carry bit-exact linear values for the dB fields
    if (j.contains("config")) { // run manifest wrapper
        if (j.contains("config_exact")) exact = j.at("config_exact");
        j = j.at("config");
    }

    NetworkConfig c;
    std::vector<std::string> errs;

    if (j.contains("network")) {
        const json& n = j.at("network");
        read_field(n, "num_fog", c.num_fog, errs);
        read_field(n, "num_wd", c.num_wd, errs);
        read_field(n, "area_side", c.area_side, errs);
        read_field(n, "slot_len", c.slot_len, errs);
        read_field(n, "cycles_per_bit", c.cycles_per_bit, errs);
        read_field(n, "kappa", c.kappa, errs);
        read_field(n, "f_max", c.f_max, errs);
        read_field(n, "p_max", c.p_max, errs);
        read_field(n, "a_max", c.a_max, errs);
        read_field(n, "c0", c.c0, errs);
        read_field(n, "antennas", c.antennas, errs);
    }
    if (j.contains("channel")) {
        const json& ch = j.at("channel");
        read_field(ch, "bandwidth", c.bandwidth, errs);
        double n0_dbm = watts_to_dbm(c.noise_n0);
        read_field(ch, "noise_n0_dbm", n0_dbm, errs);
        c.noise_n0 = dbm_to_watts(n0_dbm);
        double g0_db = linear_to_db(c.pathloss_g0);
        read_field(ch, "pathloss_g0_db", g0_db, errs);
        c.pathloss_g0 = db_to_linear(g0_db);
        read_field(ch, "pathloss_d0", c.pathloss_d0, errs);
        read_field(ch, "pathloss_exp", c.pathloss_exp, errs);
        read_field(ch, "gain_sigma_cap", c.gain_sigma_cap, errs);
    }
    if (j.contains("mobility")) {
        const json& m = j.at("mobility");
        read_field(m, "fog_speed_min", c.fog_speed_min, errs);
        read_field(m, "fog_speed_max", c.fog_speed_max, errs);
        read_field(m, "wd_speed_min", c.wd_speed_min, errs);
        read_field(m, "wd_speed_max", c.wd_speed_max, errs);
        read_field(m, "pause_time", c.pause_time, errs);
    }
    if (j.contains("algorithm")) {
        const json& a = j.at("algorithm");
        read_field(a, "v_param", c.v_param, errs);
        std::string kind = utility_name(c.utility_kind);
        read_field(a, "utility_kind", kind, errs);
        c.utility_kind = utility_from_name(kind, errs);
        read_field(a, "alpha_fair", c.alpha_fair, errs);
        read_field(a, "eta_init", c.eta_init, errs);
        read_field(a, "gs_max_iters", c.gs_max_iters, errs);
        read_field(a, "gs_rel_tol", c.gs_rel_tol, errs);
    }
    if (j.contains("experiment")) {
        const json& e = j.at("experiment");
        read_field(e, "num_slots", c.num_slots, errs);
        read_field(e, "rng_seed", c.rng_seed, errs);
    }
    if (exact.is_object()) {
        read_field(exact, "noise_n0", c.noise_n0, errs);
        read_field(exact, "pathloss_g0", c.pathloss_g0, errs);
    }

    auto inv = validate(c);
    errs.insert(errs.end(), inv.begin(), inv.end());
    if (!errs.empty()) {
        std::ostringstream msg;
        msg << "invalid config (" << errs.size() << " problem(s)):";
        for (const auto& e : errs) msg << "\n  - " << e;
        throw ConfigError(msg.str(), errs);
    }
    return c;
}

NetworkConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

std::string config_to_json_text(const NetworkConfig& c) {
    json j;
    j["network"] = {
        {"num_fog", c.num_fog},
        {"num_wd", c.num_wd},
        {"area_side", c.area_side},
        {"slot_len", c.slot_len},
        {"cycles_per_bit", c.cycles_per_bit},
        {"kappa", c.kappa},
        {"f_max", c.f_max},
        {"p_max", c.p_max},
        {"a_max", c.a_max},
        {"c0", c.c0},
        {"antennas", c.antennas},
    };
    j["channel"] = {
        {"bandwidth", c.bandwidth},
        {"noise_n0_dbm", watts_to_dbm(c.noise_n0)},
        {"pathloss_g0_db", linear_to_db(c.pathloss_g0)},
        {"pathloss_d0", c.pathloss_d0},
        {"pathloss_exp", c.pathloss_exp},
        {"gain_sigma_cap", c.gain_sigma_cap},
    };
    j["mobility"] = {
        {"fog_speed_min", c.fog_speed_min},
        {"fog_speed_max", c.fog_speed_max},
        {"wd_speed_min", c.wd_speed_min},
        {"wd_speed_max", c.wd_speed_max},
        {"pause_time", c.pause_time},
    };
    j["algorithm"] = {
        {"v_param", c.v_param},
        {"utility_kind", utility_name(c.utility_kind)},
        {"alpha_fair", c.alpha_fair},
        {"eta_init", c.eta_init},
        {"gs_max_iters", c.gs_max_iters},
        {"gs_rel_tol", c.gs_rel_tol},
    };
    j["experiment"] = {
        {"num_slots", c.num_slots},
        {"rng_seed", c.rng_seed},
    };
    return j.dump(2) + "\n";
}

void save_config(const NetworkConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path);
    out << config_to_json_text(cfg);
}

std::uint64_t config_hash(const NetworkConfig& cfg) {
    const std::string text = config_to_json_text(cfg);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace fogsched
