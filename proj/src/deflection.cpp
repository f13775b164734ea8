#include "gripkit/deflection.hpp"

#include <cmath>
#include <vector>

#include "gripkit/errors.hpp"

namespace gripkit {

const char* to_string(LoadInterpretation interpretation) {
    return interpretation == LoadInterpretation::TotalForce ? "paper" : "consistent";
}

LoadInterpretation interpretation_from_string(const std::string& name) {
    if (name == "paper") return LoadInterpretation::TotalForce;
    if (name == "consistent") return LoadInterpretation::Intensity;
    throw DomainError("unknown interpretation '" + name + "' (expected paper|consistent)");
}

void validate(const BeamLoadCase& load_case) {
    if (!(load_case.length_m > 0.0))
        throw DomainError("beam case: length must be positive");
    if (!(load_case.modulus_pa > 0.0))
        throw DomainError("beam case: modulus must be positive");
    if (!(load_case.inertia_m4 > 0.0))
        throw DomainError("beam case: inertia must be positive");
    if (!(load_case.force_n >= 0.0))
        throw DomainError("beam case: force must be non-negative");
}

double segment_force(const AirEnvironment& env, double q_segment_m3s,
                     const LipGeometry& geom, double d_theta_rad) {
    validate(env);
    validate(geom);
    validate_d_theta(d_theta_rad);
    if (!(q_segment_m3s >= 0.0))
        throw DomainError("segment force: flow must be non-negative");
    const double r = geom.inner_radius_m;
    const double big_r = geom.outer_radius_m;
    return env.air_density_kgm3 * q_segment_m3s * q_segment_m3s *
           std::cos(geom.cone_angle_rad) / ((big_r * big_r - r * r) * d_theta_rad);
}

double deflection_profile(const BeamLoadCase& load_case, double x_m) {
    validate(load_case);
    const double l = load_case.length_m;
    if (!(x_m >= 0.0) || !(x_m <= l))
        throw DomainError("beam deflection: x must lie in [0, L]");
    const double w = load_case.interpretation == LoadInterpretation::TotalForce
                         ? load_case.force_n
                         : load_case.force_n / l;
    return w * x_m * x_m * (x_m * x_m + 6.0 * l * l - 4.0 * l * x_m) /
           (24.0 * load_case.modulus_pa * load_case.inertia_m4);
}

double free_end_deflection_formula(const LipGeometry& geom, const AirEnvironment& env,
                                   double q_total_m3s, double d_theta_rad) {
    validate(geom);
    validate(env);
    validate_d_theta(d_theta_rad);
    if (!(q_total_m3s >= 0.0))
        throw DomainError("free-end deflection: flow must be non-negative");
    const double r = geom.inner_radius_m;
    const double big_r = geom.outer_radius_m;
    const double b = geom.thickness_m;
    const double c = std::cos(geom.cone_angle_rad);
    const double dr = big_r - r;
    const double sr = big_r + r;
    return 3.0 * env.air_density_kgm3 * q_total_m3s * q_total_m3s * dr * dr * dr /
           (b * b * b * geom.elastic_modulus_pa * sr * sr * c * c * c *
            d_theta_rad * d_theta_rad);
}

DeflectionResult tip_deflection(const LipGeometry& geom, const AirEnvironment& env,
                                double q_total_m3s, double d_theta_rad,
                                FlowMode flow_mode, LoadInterpretation interpretation,
                                int profile_samples) {
    if (profile_samples < 2)
        throw DomainError("tip deflection: need at least two profile samples");

    const double q_seg = apportion_flow(q_total_m3s, d_theta_rad, flow_mode);
    const BeamLoadCase load_case{segment_force(env, q_seg, geom, d_theta_rad),
                                 beam_length(geom), geom.elastic_modulus_pa,
                                 segment_inertia(geom, d_theta_rad), interpretation};

    DeflectionResult result;
    result.flow_mode = flow_mode;
    result.interpretation = interpretation;
    result.profile.reserve(static_cast<std::size_t>(profile_samples));
    for (int k = 0; k < profile_samples; ++k) {
        // Pin the last sample to exactly x = L so the tip is on the profile.
        const double x = (k == profile_samples - 1)
                             ? load_case.length_m
                             : load_case.length_m * k / (profile_samples - 1);
        result.profile.push_back({x, deflection_profile(load_case, x)});
    }
    result.y_tip_m = result.profile.back().y_m;
    result.beyond_small_deflection = result.y_tip_m > load_case.length_m / 10.0;
    return result;
}

DeflectionResult tip_deflection(const LipGeometry& geom, const AirEnvironment& env,
                                double q_total_m3s, const SegmentGrid& grid,
                                FlowMode flow_mode, LoadInterpretation interpretation,
                                int profile_samples) {
    return tip_deflection(geom, env, q_total_m3s, grid.d_theta_rad, flow_mode,
                          interpretation, profile_samples);
}

double beam_oracle(double q_intensity_npm, double length_m, double modulus_pa,
                   double inertia_m4, int n_nodes) {
    if (n_nodes < 16) throw DomainError("beam oracle: need at least 16 nodes");
    if (!(length_m > 0.0) || !(modulus_pa > 0.0) || !(inertia_m4 > 0.0))
        throw DomainError("beam oracle: length, modulus and inertia must be positive");
    if (!(q_intensity_npm >= 0.0))
        throw DomainError("beam oracle: load intensity must be non-negative");

    const std::size_t n = static_cast<std::size_t>(n_nodes);
    const double h = length_m / static_cast<double>(n - 1);

    // Shear and moment accumulated from the free end (both vanish there).
    std::vector<double> shear(n, 0.0);
    for (std::size_t j = n - 1; j-- > 0;)
        shear[j] = shear[j + 1] + h * q_intensity_npm;
    std::vector<double> moment(n, 0.0);
    for (std::size_t j = n - 1; j-- > 0;)
        moment[j] = moment[j + 1] + 0.5 * h * (shear[j] + shear[j + 1]);

    // March the curvature from the clamped end: y_{j+1} = 2 y_j - y_{j-1} + h^2 M_j/(EI),
    // seeded by y(0) = 0 and the O(h^2) start y_1 = h^2 M_0 / (2 EI).
    const double ei = modulus_pa * inertia_m4;
    double y_prev = 0.0;
    double y_cur = 0.5 * h * h * moment[0] / ei;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double y_next = 2.0 * y_cur - y_prev + h * h * moment[j] / ei;
        y_prev = y_cur;
        y_cur = y_next;
    }
    return y_cur;
}

ClosureState closure_state(double y_tip_m, double gap_m) {
    if (!(gap_m >= 0.0)) throw DomainError("closure: gap must be non-negative");
    if (!(y_tip_m >= 0.0)) throw DomainError("closure: deflection must be non-negative");
    ClosureState state;
    state.sealed = y_tip_m >= gap_m;
    state.residual_gap_m = state.sealed ? 0.0 : gap_m - y_tip_m;
    return state;
}

}  // namespace gripkit
