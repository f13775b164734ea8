#pragma once

#include <functional>
#include <string>

namespace gripkit {

/// Ambient air properties. Gravity rides along for weight/load-ratio conversions.
struct AirEnvironment {
    double air_density_kgm3 = 1.225;
    double ambient_pressure_pa = 101325.0;
    double gravity_ms2 = 9.81;
};

/// Vacuum source characteristic at full power.
struct BlowerConfig {
    double stall_pressure_max_pa = 41000.0;  ///< max vacuum differential at zero flow
    double free_flow_max_m3s = 0.04;         ///< flow at zero differential
};

/// Blower characteristic scaled to a power fraction. The curve between stall
/// and free flow is a straight line; both endpoints scale linearly with power.
/// power = 0 yields an inert blower (both endpoints zero).
struct BlowerState {
    double power = 1.0;
    double stall_pressure_pa = 41000.0;
    double free_flow_m3s = 0.04;
};

enum class LeakKind { Linear, Orifice };

/// Leak law of an unsealed lip/object interface. The base conductance applies
/// at zero lip deflection and shrinks as the lip closes the initial gap:
///   c(y) = c0 * max(0, 1 - y/gap0)^closure_exponent.
/// Units of c0: m3/(s*Pa) for Linear, m3/(s*Pa^1/2) for Orifice.
struct LeakModel {
    LeakKind kind = LeakKind::Linear;
    double base_conductance = 1.0e-6;
    double initial_gap_m = 1.0e-3;
    double closure_exponent = 2.0;
};

/// Simultaneous solution of the blower line and the leak law.
struct OperatingPoint {
    double dp_pa = 0.0;
    double q_m3s = 0.0;
    int iterations = 0;
};

struct OperatingPointOptions {
    double abs_tol_pa = 1.0e-6;
    int max_iterations = 200;
};

enum class FlowMode { Total, Apportioned };

void validate(const AirEnvironment& env);
void validate(const BlowerConfig& config);
void validate(const BlowerState& blower);
void validate(const LeakModel& leak);

const char* to_string(LeakKind kind);
const char* to_string(FlowMode mode);
LeakKind leak_kind_from_string(const std::string& name);
FlowMode flow_mode_from_string(const std::string& name);

/// Channel pressure differential: rho/2 * ((q/a)^2 - v_out^2).
double bernoulli_dp(const AirEnvironment& env, double q_m3s, double area_m2,
                    double v_out_ms = 0.0);

/// Blower characteristic at a power fraction in [0, 1].
BlowerState blower_curve(double power, const BlowerConfig& config);

/// Conductance after lip closure by a tip deflection y >= 0.
double effective_conductance(const LeakModel& leak, double y_tip_m);

/// Fixed point of dp = p_stall*(1 - q/q_free) against q = c*dp (Linear) or
/// q = c*sqrt(dp) (Orifice). Solved by bisection on dp in [0, p_stall]; both
/// laws are monotone so the fixed point is unique.
OperatingPoint operating_point(const BlowerState& blower, double conductance,
                               LeakKind kind,
                               const OperatingPointOptions& options = {});

/// Pressure differential delivered at a given flow; must be non-increasing in
/// q, with line(0) = p_stall and line(q_free) = 0. Lets measured blower curves
/// replace the default straight line.
using BlowerLine = std::function<double(double q_m3s)>;

OperatingPoint operating_point(const BlowerLine& line, double p_stall_pa,
                               double q_free_m3s, double conductance, LeakKind kind,
                               const OperatingPointOptions& options = {});

/// Flow assigned to one lip segment. Total passes the whole flow through each
/// segment; Apportioned splits it as q * d_theta / (2*pi).
double apportion_flow(double q_total_m3s, double d_theta_rad, FlowMode mode);

}  // namespace gripkit
