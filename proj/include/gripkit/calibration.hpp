#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gripkit/grasp.hpp"

namespace gripkit {

/// One measured operating condition. Either channel may be absent.
struct Observation {
    std::string object;
    double power = 1.0;
    std::optional<double> mhf_n;
    std::optional<double> q_m3s;
};

/// Model context and fit controls. Objects listed in the same c0 group share a
/// single fitted base conductance; ungrouped objects get their own. Seal areas
/// are fitted per object, but only for objects with at least one MHF
/// observation; the rest keep their configured value.
struct CalibrationSetup {
    LipGeometry geom;
    AirEnvironment env;
    BlowerConfig blower;
    SegmentGrid grid;
    GraspSettings settings;
    std::vector<ObjectSpec> objects;
    std::vector<std::vector<std::string>> c0_groups;
    double c0_lower = 0.0;
    double c0_upper = 1.0e-3;
    double a_seal_lower = 1.0e-8;
    double a_seal_upper = 5.0e-2;
    double line_search_rel_tol = 1.0e-10;
    int bracket_scan_points = 33;
    int max_sweeps = 60;
};

struct FittedObject {
    double base_conductance = 0.0;
    double a_seal_m2 = 0.0;
};

/// Signed relative residual of one observation channel after the fit.
struct ResidualEntry {
    std::string object;
    double power = 0.0;
    bool is_flow = false;
    double relative = 0.0;
};

struct FitResult {
    std::map<std::string, FittedObject> per_object;
    std::vector<ObjectSpec> calibrated_objects;
    std::vector<ResidualEntry> residuals;
    double residual_norm = 0.0;
    int iterations = 0;  ///< coordinate-descent sweeps
    bool converged = false;
};

/// Least-squares fit of (c0 per group, a_seal per object) to the observations,
/// minimizing the sum of squared relative residuals of predicted MHF and flow.
/// Bounded coordinate descent; each 1-D search brackets the best basin with a
/// deterministic coarse scan, then refines by golden section. The first sweep
/// fits each group conductance against its flow observations alone, which
/// keeps the search out of the flat seal-latched shelf of the MHF response.
/// Deterministic given inputs and object ordering.
FitResult fit_parameters(const std::vector<Observation>& observations,
                         const CalibrationSetup& setup);

/// Parameters that scale the free-end deflection.
enum class TipParameter { Flow, Thickness, Modulus, SegmentWidth, ConeAngle, InnerRadius, OuterRadius };

TipParameter tip_parameter_from_string(const std::string& name);
const char* to_string(TipParameter parameter);

/// Evaluation point for sensitivity and design searches.
struct TipContext {
    double q_total_m3s = 0.01;
    double d_theta_rad = 0.1;
    FlowMode flow_mode = FlowMode::Total;
    LoadInterpretation interpretation = LoadInterpretation::TotalForce;
};

/// Local log-log exponent d ln(y_tip) / d ln(p) by a central finite difference
/// with multiplicative step 1.001. Throws DomainError when the perturbed
/// parameter leaves the valid domain (e.g. p = 0 or alpha near pi/2).
double sensitivity(const LipGeometry& geom, const AirEnvironment& env,
                   const TipContext& base, TipParameter parameter);

enum class DesignVariable { Thickness, Modulus, ConeAngle };

DesignVariable design_variable_from_string(const std::string& name);

/// Inverse problem: the free parameter value whose tip deflection meets the
/// target. Verifies monotonicity over the bounds by sampling, then bisects to
/// |y - target| < 1e-12 m. Throws DomainError naming the achievable range when
/// the target is not bracketed.
double design_search(double target_y_m, DesignVariable variable, double lower,
                     double upper, const LipGeometry& geom, const AirEnvironment& env,
                     const TipContext& context);

}  // namespace gripkit
