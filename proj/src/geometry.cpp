#include "gripkit/geometry.hpp"

#include <cmath>

#include "gripkit/errors.hpp"

namespace gripkit {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
}  // namespace

void validate(const LipGeometry& geom) {
    if (!(geom.inner_radius_m > 0.0))
        throw DomainError("lip geometry: inner radius must be positive");
    if (!(geom.outer_radius_m > geom.inner_radius_m))
        throw DomainError("lip geometry: radii must satisfy 0 < r < R");
    if (!(geom.cone_angle_rad >= 0.0) || !(geom.cone_angle_rad < kHalfPi))
        throw DomainError("lip geometry: cone angle must lie in [0, pi/2)");
    if (!(geom.thickness_m > 0.0))
        throw DomainError("lip geometry: thickness must be positive");
    if (!(geom.elastic_modulus_pa > 0.0))
        throw DomainError("lip geometry: elastic modulus must be positive");
}

void validate_d_theta(double d_theta_rad) {
    if (!(d_theta_rad > 0.0) || !(d_theta_rad <= kTwoPi))
        throw DomainError("segment width must lie in (0, 2*pi]");
}

SegmentGrid make_grid(int n_segments) {
    if (n_segments < 1) throw DomainError("segment grid: need at least one segment");
    return SegmentGrid{n_segments, kTwoPi / static_cast<double>(n_segments)};
}

double segment_area(const LipGeometry& geom, double d_theta_rad) {
    validate(geom);
    validate_d_theta(d_theta_rad);
    const double r = geom.inner_radius_m;
    const double big_r = geom.outer_radius_m;
    return 0.5 * (big_r * big_r - r * r) * d_theta_rad / std::cos(geom.cone_angle_rad);
}

double beam_length(const LipGeometry& geom) {
    validate(geom);
    return (geom.outer_radius_m - geom.inner_radius_m) / std::cos(geom.cone_angle_rad);
}

double segment_inertia(const LipGeometry& geom, double d_theta_rad) {
    validate(geom);
    validate_d_theta(d_theta_rad);
    const double b = geom.thickness_m;
    return b * b * b * (geom.inner_radius_m + geom.outer_radius_m) * d_theta_rad / 24.0;
}

}  // namespace gripkit
