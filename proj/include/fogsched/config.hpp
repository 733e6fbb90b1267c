#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fogsched {

enum class UtilityKind { Log1p, AlphaFair };

// Full parameter set for one simulated fog network. All quantities are stored
// in linear SI units; dB/dBm fields in the JSON schema are converted exactly
// once at load time.
struct NetworkConfig {
    // network
    int num_fog = 8;               // |M|
    int num_wd = 40;               // |N|
    double area_side = 150.0;      // m, square deployment area
    double slot_len = 1e-3;        // s
    double cycles_per_bit = 500.0; // CPU cycles per bit, homogeneous fogs
    double kappa = 1e-27;          // W s^3, effective switched capacitance
    double f_max = 2e9;            // Hz
    double p_max = 0.2;            // W, per WD-fog link
    double a_max = 4000.0;         // bits, arrival upper bound per slot
    double c0 = 64.0;              // W, control-node constant draw
    int antennas = 3;              // R, per fog node

    // channel
    double bandwidth = 1e7;          // Hz (omega)
    double noise_n0 = 3.9810717055349695e-21; // W/Hz (-174 dBm/Hz)
    double pathloss_g0 = 1e-4;       // linear (-40 dB)
    double pathloss_d0 = 1.0;        // m, reference distance (also distance floor)
    double pathloss_exp = 5.0;
    double gain_sigma_cap = 1e4;     // fading cap used only for drift-bound constants

    // mobility (random waypoint)
    double fog_speed_min = 1.0;
    double fog_speed_max = 5.0; // m/s
    double wd_speed_min = 0.0;
    double wd_speed_max = 1.0; // m/s
    double pause_time = 0.0;   // s at each waypoint

    // algorithm
    double v_param = 3e6;      // drift-plus-penalty trade-off weight
    UtilityKind utility_kind = UtilityKind::Log1p;
    double alpha_fair = 0.5;   // exponent when utility_kind == AlphaFair
    double eta_init = 1.0;     // efficiency ratio before any history exists
    int gs_max_iters = 20;
    double gs_rel_tol = 1e-6;

    // experiment
    int num_slots = 10000;
    std::uint64_t rng_seed = 1;
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what, std::vector<std::string> details = {})
        : std::runtime_error(what), violations(std::move(details)) {}
    std::vector<std::string> violations;
};

// Every violated invariant, one message per field; empty means valid.
std::vector<std::string> validate(const NetworkConfig& cfg);

// Parse + validate. Accepts either a bare config document or a run manifest
// wrapping one under "config". Throws ConfigError listing all violations.
NetworkConfig load_config(const std::string& path);
NetworkConfig config_from_json_text(const std::string& text);

std::string config_to_json_text(const NetworkConfig& cfg);
void save_config(const NetworkConfig& cfg, const std::string& path);

// FNV-1a of the canonical JSON serialization; stored in run manifests.
std::uint64_t config_hash(const NetworkConfig& cfg);

} // namespace fogsched
