#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gripkit/calibration.hpp"
#include "gripkit/grasp.hpp"

namespace gripkit {

/// Everything a run needs, loadable from a key = value config file.
/// Recognized keys:
///   geometry     r_m, R_m, alpha_rad, b_m, E_pa, n_segments
///   environment  rho_kgm3, p_air_pa, g_ms2
///   blower       p_stall_max_pa, q_free_max_m3s
///   leak         leak_kind, c0, gap0_m, closure_exponent
///   modes        flow_mode (total|apportioned), interpretation (paper|consistent)
///   gripper      gripper_mass_kg, aperture_m
/// Unknown keys are rejected; all invariants are validated at load time.
struct RunConfig {
    LipGeometry geometry;
    SegmentGrid grid = make_grid(36);
    AirEnvironment env;
    BlowerConfig blower;
    LeakModel leak;
    FlowMode flow_mode = FlowMode::Total;
    LoadInterpretation interpretation = LoadInterpretation::TotalForce;
    double gripper_mass_kg = 0.1375;
    double aperture_m = 0.08;
    /// True while aperture_m has never been set explicitly; the default of
    /// 0.08 m is a naming-based assumption, not a measured value.
    bool aperture_assumed = true;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Objects CSV: name,diameter_m,mass_kg,leak_kind,c0,gap0_m,a_seal_m2,mu
std::vector<ObjectSpec> parse_objects_csv(std::string_view text);
std::vector<ObjectSpec> load_objects_csv(const std::filesystem::path& path);

/// Observations CSV: object,power,mhf_n,q_m3h (or q_m3s). Empty cells mean
/// the channel was not measured; m3/h flows are converted on load.
std::vector<Observation> parse_observations_csv(std::string_view text);
std::vector<Observation> load_observations_csv(const std::filesystem::path& path);

/// "egg,tomato;brick,metal,mug" -> {{egg,tomato},{brick,metal,mug}}
std::vector<std::vector<std::string>> parse_groups(std::string_view spec);

}  // namespace gripkit
