#pragma once

#include <numbers>

namespace gripkit {

/// Sealing-lip annulus/cone parameters. The lip is the skirt-shaped flexible
/// rim of the gripper interface; a thin conical annulus clamped at its outer
/// edge whose segments bend toward the object under airflow.
struct LipGeometry {
    double inner_radius_m = 0.03;       ///< annulus inner radius r
    double outer_radius_m = 0.04;       ///< annulus outer radius R
    double cone_angle_rad = 0.0;        ///< inclination of the lip surface vs. horizontal
    double thickness_m = 0.002;         ///< lip wall thickness
    double elastic_modulus_pa = 5.0e6;  ///< lip material modulus
};

/// Angular discretization of the lip into equal segments.
struct SegmentGrid {
    int n_segments = 36;
    double d_theta_rad = 2.0 * std::numbers::pi / 36.0;
};

/// Throws DomainError unless 0 < r < R, 0 <= alpha < pi/2, b > 0, E > 0.
void validate(const LipGeometry& geom);

/// Throws DomainError unless d_theta lies in (0, 2*pi].
void validate_d_theta(double d_theta_rad);

/// Equal partition of the full circle; n_segments >= 1.
SegmentGrid make_grid(int n_segments);

/// Slant area of one lip segment: (R^2 - r^2)/2 * d_theta / cos(alpha).
double segment_area(const LipGeometry& geom, double d_theta_rad);

/// Slant length of the lip wall, (R - r)/cos(alpha). This is the cantilever span.
double beam_length(const LipGeometry& geom);

/// Second moment of one segment's rectangular cross-section about the trace
/// direction: b^3 (r + R) d_theta / 24.
double segment_inertia(const LipGeometry& geom, double d_theta_rad);

}  // namespace gripkit
