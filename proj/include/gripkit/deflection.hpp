#pragma once

#include <vector>

#include "gripkit/geometry.hpp"
#include "gripkit/pneumatics.hpp"

namespace gripkit {

/// How the distributed-load deflection polynomial consumes the segment force.
/// TotalForce substitutes the total segment force F directly, matching the
/// closed-form free-end expression; Intensity substitutes the line load F/L,
/// the standard uniform-load cantilever convention. Both are first-class and
/// labeled in every output.
enum class LoadInterpretation { TotalForce, Intensity };

const char* to_string(LoadInterpretation interpretation);
LoadInterpretation interpretation_from_string(const std::string& name);

/// One lip segment treated as a clamped-free cantilever under uniform load.
struct BeamLoadCase {
    double force_n = 0.0;    ///< total pushing force on the segment
    double length_m = 0.0;   ///< cantilever span (lip slant length)
    double modulus_pa = 0.0;
    double inertia_m4 = 0.0;
    LoadInterpretation interpretation = LoadInterpretation::TotalForce;
};

struct ProfilePoint {
    double x_m = 0.0;
    double y_m = 0.0;
};

struct DeflectionResult {
    double y_tip_m = 0.0;
    std::vector<ProfilePoint> profile;
    FlowMode flow_mode = FlowMode::Total;
    LoadInterpretation interpretation = LoadInterpretation::TotalForce;
    /// Set when y_tip exceeds L/10: linear beam theory is stretched thin there.
    bool beyond_small_deflection = false;
};

/// Flags whether a tip deflection covers a required gap.
struct ClosureState {
    bool sealed = false;
    double residual_gap_m = 0.0;
};

void validate(const BeamLoadCase& load_case);

/// Bernoulli pushing force on one segment: rho q^2 cos(alpha) / ((R^2 - r^2) d_theta).
/// Identical to bernoulli_dp(env, q, segment_area) * segment_area.
double segment_force(const AirEnvironment& env, double q_segment_m3s,
                     const LipGeometry& geom, double d_theta_rad);

/// Deflection at 0 <= x <= L of the uniform-load cantilever:
/// y = W x^2 (x^2 + 6 L^2 - 4 L x) / (24 E I), W per the interpretation.
double deflection_profile(const BeamLoadCase& load_case, double x_m);

/// Free-end deflection in closed form (total flow, TotalForce):
/// y = 3 rho Q^2 (R - r)^3 / (b^3 E (R + r)^2 cos^3(alpha) d_theta^2).
/// Kept as an independent route; tip_deflection must agree with it in that mode.
double free_end_deflection_formula(const LipGeometry& geom, const AirEnvironment& env,
                                   double q_total_m3s, double d_theta_rad);

/// Free-end deflection assembled from the segment force, inertia, span, and the
/// deflection polynomial at x = L. Also samples the profile.
DeflectionResult tip_deflection(const LipGeometry& geom, const AirEnvironment& env,
                                double q_total_m3s, double d_theta_rad,
                                FlowMode flow_mode = FlowMode::Total,
                                LoadInterpretation interpretation = LoadInterpretation::TotalForce,
                                int profile_samples = 101);

DeflectionResult tip_deflection(const LipGeometry& geom, const AirEnvironment& env,
                                double q_total_m3s, const SegmentGrid& grid,
                                FlowMode flow_mode = FlowMode::Total,
                                LoadInterpretation interpretation = LoadInterpretation::TotalForce,
                                int profile_samples = 101);

/// Numerical tip deflection of the clamped-free beam under a uniform line load,
/// independent of the deflection polynomial: shear and moment are accumulated
/// from the free end by trapezoid integration and the curvature is then marched
/// from the clamped end with a second-order central recurrence. Error is O(n^-2);
/// converges to q L^4 / (8 E I). Requires n_nodes >= 16.
double beam_oracle(double q_intensity_npm, double length_m, double modulus_pa,
                   double inertia_m4, int n_nodes);

/// sealed iff y_tip >= gap; residual = max(0, gap - y_tip).
ClosureState closure_state(double y_tip_m, double gap_m);

}  // namespace gripkit
