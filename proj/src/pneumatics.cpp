#include "gripkit/pneumatics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gripkit/errors.hpp"
#include "gripkit/geometry.hpp"

namespace gripkit {

void validate(const AirEnvironment& env) {
    if (!(env.air_density_kgm3 > 0.0))
        throw DomainError("environment: air density must be positive");
    if (!(env.ambient_pressure_pa > 0.0))
        throw DomainError("environment: ambient pressure must be positive");
    if (!(env.gravity_ms2 > 0.0))
        throw DomainError("environment: gravity must be positive");
}

void validate(const BlowerConfig& config) {
    if (!(config.stall_pressure_max_pa >= 0.0))
        throw DomainError("blower: max stall pressure must be non-negative");
    if (!(config.free_flow_max_m3s > 0.0))
        throw DomainError("blower: max free flow must be positive");
}

void validate(const BlowerState& blower) {
    if (!(blower.power >= 0.0) || !(blower.power <= 1.0))
        throw DomainError("blower: power fraction must lie in [0, 1]");
    if (!(blower.stall_pressure_pa >= 0.0))
        throw DomainError("blower: stall pressure must be non-negative");
    if (!(blower.free_flow_m3s >= 0.0))
        throw DomainError("blower: free flow must be non-negative");
    // A blower that holds pressure without any flow capacity is not a curve.
    if (blower.free_flow_m3s == 0.0 && blower.stall_pressure_pa > 0.0)
        throw DomainError("blower: zero free flow requires zero stall pressure (inert)");
}

void validate(const LeakModel& leak) {
    if (!(leak.base_conductance >= 0.0))
        throw DomainError("leak: base conductance must be non-negative");
    if (!(leak.initial_gap_m >= 0.0))
        throw DomainError("leak: initial gap must be non-negative");
    if (!(leak.closure_exponent >= 0.0))
        throw DomainError("leak: closure exponent must be non-negative");
}

const char* to_string(LeakKind kind) {
    return kind == LeakKind::Linear ? "linear" : "orifice";
}

const char* to_string(FlowMode mode) {
    return mode == FlowMode::Total ? "total" : "apportioned";
}

LeakKind leak_kind_from_string(const std::string& name) {
    if (name == "linear") return LeakKind::Linear;
    if (name == "orifice") return LeakKind::Orifice;
    throw DomainError("unknown leak kind '" + name + "' (expected linear|orifice)");
}

FlowMode flow_mode_from_string(const std::string& name) {
    if (name == "total") return FlowMode::Total;
    if (name == "apportioned") return FlowMode::Apportioned;
    throw DomainError("unknown flow mode '" + name + "' (expected total|apportioned)");
}

double bernoulli_dp(const AirEnvironment& env, double q_m3s, double area_m2,
                    double v_out_ms) {
    validate(env);
    if (!(area_m2 > 0.0)) throw DomainError("bernoulli: area must be positive");
    if (!(q_m3s >= 0.0)) throw DomainError("bernoulli: flow must be non-negative");
    const double v_channel = q_m3s / area_m2;
    return 0.5 * env.air_density_kgm3 * (v_channel * v_channel - v_out_ms * v_out_ms);
}

BlowerState blower_curve(double power, const BlowerConfig& config) {
    validate(config);
    if (!(power >= 0.0) || !(power <= 1.0))
        throw DomainError("blower: power fraction must lie in [0, 1]");
    return BlowerState{power, power * config.stall_pressure_max_pa,
                       power * config.free_flow_max_m3s};
}

double effective_conductance(const LeakModel& leak, double y_tip_m) {
    validate(leak);
    if (!(y_tip_m >= 0.0)) throw DomainError("leak: deflection must be non-negative");
    if (leak.initial_gap_m == 0.0) return 0.0;  // no gap, airtight from the start
    const double open_fraction = 1.0 - y_tip_m / leak.initial_gap_m;
    if (open_fraction <= 0.0 && leak.closure_exponent > 0.0) return 0.0;
    return leak.base_conductance *
           std::pow(open_fraction > 0.0 ? open_fraction : 0.0, leak.closure_exponent);
}

OperatingPoint operating_point(const BlowerState& blower, double conductance,
                               LeakKind kind, const OperatingPointOptions& options) {
    validate(blower);
    if (!(conductance >= 0.0))
        throw DomainError("operating point: conductance must be non-negative");

    if (blower.stall_pressure_pa == 0.0 || blower.free_flow_m3s == 0.0)
        return OperatingPoint{0.0, 0.0, 0};  // inert blower
    if (conductance == 0.0)
        return OperatingPoint{blower.stall_pressure_pa, 0.0, 0};  // perfect seal

    const auto leak_flow = [&](double dp) {
        return kind == LeakKind::Linear ? conductance * dp
                                        : conductance * std::sqrt(dp);
    };
    // Residual of the blower line at the leak-law flow; negative at dp = 0,
    // non-negative at dp = p_stall, and monotone in between.
    const auto residual = [&](double dp) {
        return dp - blower.stall_pressure_pa *
                        (1.0 - leak_flow(dp) / blower.free_flow_m3s);
    };

    double lo = 0.0;
    double hi = blower.stall_pressure_pa;
    int iterations = 0;
    while (hi - lo > options.abs_tol_pa) {
        if (++iterations > options.max_iterations)
            throw NumericError("operating point: bisection did not reach tolerance",
                               0.5 * (lo + hi), hi);
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? hi : lo) = mid;
    }

    // One Newton correction sharpens the bracketed root to machine precision
    // (exactly, for the linear law). Clamped to the bracket.
    double dp = 0.5 * (lo + hi);
    const double slope =
        kind == LeakKind::Linear
            ? 1.0 + blower.stall_pressure_pa * conductance / blower.free_flow_m3s
            : 1.0 + (dp > 0.0 ? blower.stall_pressure_pa * conductance /
                                    (2.0 * std::sqrt(dp) * blower.free_flow_m3s)
                              : 0.0);
    if (slope > 0.0) dp = std::clamp(dp - residual(dp) / slope, lo, hi);

    // The flow is reported off the blower line, which pins q into [0, q_free]
    // for any dp in [0, p_stall].
    const double q = blower.free_flow_m3s * (1.0 - dp / blower.stall_pressure_pa);
    return OperatingPoint{dp, q, iterations};
}

OperatingPoint operating_point(const BlowerLine& line, double p_stall_pa,
                               double q_free_m3s, double conductance, LeakKind kind,
                               const OperatingPointOptions& options) {
    if (!line) throw DomainError("operating point: blower line must be callable");
    if (!(p_stall_pa >= 0.0) || !(q_free_m3s >= 0.0))
        throw DomainError("operating point: curve endpoints must be non-negative");
    if (!(conductance >= 0.0))
        throw DomainError("operating point: conductance must be non-negative");

    if (p_stall_pa == 0.0 || q_free_m3s == 0.0) return OperatingPoint{0.0, 0.0, 0};
    if (conductance == 0.0) return OperatingPoint{p_stall_pa, 0.0, 0};

    const auto leak_flow = [&](double dp) {
        const double q = kind == LeakKind::Linear ? conductance * dp
                                                  : conductance * std::sqrt(dp);
        return std::clamp(q, 0.0, q_free_m3s);
    };

    double lo = 0.0;
    double hi = p_stall_pa;
    int iterations = 0;
    while (hi - lo > options.abs_tol_pa) {
        if (++iterations > options.max_iterations)
            throw NumericError("operating point: bisection did not reach tolerance",
                               0.5 * (lo + hi), hi);
        const double mid = 0.5 * (lo + hi);
        (mid - line(leak_flow(mid)) > 0.0 ? hi : lo) = mid;
    }
    const double dp = 0.5 * (lo + hi);
    return OperatingPoint{dp, leak_flow(dp), iterations};
}

double apportion_flow(double q_total_m3s, double d_theta_rad, FlowMode mode) {
    if (!(q_total_m3s >= 0.0))
        throw DomainError("apportion: total flow must be non-negative");
    validate_d_theta(d_theta_rad);
    if (mode == FlowMode::Total) return q_total_m3s;
    return q_total_m3s * d_theta_rad / (2.0 * std::numbers::pi);
}

}  // namespace gripkit
