#pragma once

#include "qnb/interferometer.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qnb {

enum class Topology { sqm, mirror, cavity, fpmi, speedmeter, filtered_pre, filtered_post, detuned, pole };

std::string topology_name(Topology t);
Topology parse_topology(const std::string& s);

// Physical parameters in SI units; frequency-like quantities are given in Hz
// (rates gamma, delta as angular frequency / 2 pi). NaN marks "not set".
struct PhysicalParams {
    // interferometer / cavity
    double M = 40.0;
    double L = 4000.0;
    double I_arm = 840e3;
    double T_arm = 0.014;
    double A_arm = 0.0;
    double delta_arm_hz = 0.0;
    double R_S = 0.0;
    double phi_S = 0.0;
    double wavelength = 1064e-9;
    // direct effective description; used when J is set
    double J = std::nan("");
    double gamma_hz = std::nan("");
    double gamma2_hz = 0.0;
    double delta_hz = 0.0;
    // readout and squeezing
    double phi_LO = std::nan("");  // unset: pi/2, or the low-frequency optimum for the speedmeter
    double squeeze_db = 0.0;
    double squeeze_angle = 0.0;
    double eta_d = 1.0;
    // filter cavity; unset rates fall back to the lossless ideal values
    double gamma_f1_hz = std::nan("");
    double delta_f_hz = std::nan("");
    double specific_loss = 0.0;  // A_f / L_f [1/m]
    // simple meter and movable mirror
    double f0_hz = 0.0;   // oscillator eigenfrequency (0: free mass)
    double fq_hz = 100.0; // measurement strength Omega_q / 2 pi
    double R = 0.5;
    double T = 0.5;
    double I1 = 1.0;
    double I2 = 1.0;
    double Phi0 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    // second-order pole
    double Lambda_hz = 0.0;
};

struct GridSpec {
    double f_min = 5.0;
    double f_max = 5000.0;
    int points = 200;
    bool log_spacing = true;
};

enum class Sided { single, dual };

struct RunConfig {
    Topology topology = Topology::fpmi;
    PhysicalParams params;
    GridSpec grid;
    std::vector<std::string> columns;  // empty: all columns of the topology
    Sided sided = Sided::dual;
    std::string preset;  // name of the originating preset, if any
};

// Parses and validates a JSON document; errors name the offending field.
RunConfig load_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Serializes every field (unset values as null).
nlohmann::json to_json(const RunConfig& cfg);

// Range checks; throws ConfigError naming the field.
void validate(const RunConfig& cfg);

// Effective interferometer for the cavity, fpmi, detuned and filtered topologies.
EffectiveIfo effective_ifo(const RunConfig& cfg);

// Derived quantities echoed next to the output.
nlohmann::json derived_quantities(const RunConfig& cfg);

struct Preset {
    std::string name;
    std::string description;  // configuration and parameter provenance
    RunConfig config;
};

const std::vector<Preset>& preset_catalog();
const Preset& find_preset(const std::string& name);

}  // namespace qnb
