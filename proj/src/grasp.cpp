#include "gripkit/grasp.hpp"

#include <cmath>
#include <cstdlib>

#include "gripkit/errors.hpp"

namespace gripkit {

const char* to_string(GraspStage stage) {
    switch (stage) {
        case GraspStage::Conforming: return "Conforming";
        case GraspStage::Jammed: return "Jammed";
        case GraspStage::SealedRegulated: return "SealedRegulated";
        case GraspStage::Failed: return "Failed";
    }
    return "?";
}

void validate(const ObjectSpec& object) {
    if (object.name.empty()) throw DomainError("object: name must not be empty");
    if (!(object.diameter_m > 0.0))
        throw DomainError("object '" + object.name + "': diameter must be positive");
    if (!(object.mass_kg >= 0.0))
        throw DomainError("object '" + object.name + "': mass must be non-negative");
    if (!(object.a_seal_m2 > 0.0))
        throw DomainError("object '" + object.name + "': seal area must be positive");
    if (!(object.mu >= 0.0))
        throw DomainError("object '" + object.name + "': friction must be non-negative");
    validate(object.leak);
}

void validate(const GraspSettings& settings) {
    if (!(settings.gripper_mass_kg > 0.0))
        throw DomainError("grasp settings: gripper mass must be positive");
    if (!(settings.aperture_m > 0.0))
        throw DomainError("grasp settings: aperture must be positive");
    if (!(settings.convergence.rel_tol > 0.0) || !(settings.convergence.abs_tol_m > 0.0))
        throw DomainError("grasp settings: tolerances must be positive");
    if (settings.convergence.max_iterations < 1)
        throw DomainError("grasp settings: need at least one iteration");
}

namespace {

GraspOutcome finish(GraspOutcome outcome, const ObjectSpec& object,
                    const AirEnvironment& env, const GraspSettings& settings,
                    const LipGeometry& geom) {
    outcome.mhf_n = holding_force(outcome.dp_op_pa, object);
    const double weight = object.mass_kg * env.gravity_ms2;
    if (outcome.stage != GraspStage::Conforming && outcome.mhf_n < weight)
        outcome.stage = GraspStage::Failed;
    outcome.sealed = outcome.stage == GraspStage::Jammed ||
                     outcome.stage == GraspStage::SealedRegulated;
    outcome.load_ratio = load_ratio(outcome.mhf_n, settings.gripper_mass_kg, env);
    if (outcome.y_tip_m > beam_length(geom) / 10.0)
        outcome.warnings.push_back(
            "lip deflection exceeds L/10; linear beam theory is stretched");
    return outcome;
}

}  // namespace

GraspOutcome simulate_grasp(const LipGeometry& geom, const AirEnvironment& env,
                            const BlowerState& blower, const ObjectSpec& object,
                            const SegmentGrid& grid, const GraspSettings& settings,
                            std::vector<double>* iterate_log) {
    validate(geom);
    validate(env);
    validate(blower);
    validate(object);
    validate(settings);

    const LeakModel& leak = object.leak;

    // Stage 1, conform: contact is made and the interface leak sits at the
    // initial gap. The granule flow itself is not modeled; the gap carries it.
    if (blower.stall_pressure_pa == 0.0 || blower.free_flow_m3s == 0.0) {
        GraspOutcome outcome;
        outcome.stage = GraspStage::Conforming;
        outcome.warnings.push_back("blower inert; vacuum stage never entered");
        return finish(outcome, object, env, settings, geom);
    }

    // Stage 2, jam: vacuum on. An airtight interface pulls straight to stall.
    if (leak.base_conductance == 0.0 || leak.initial_gap_m == 0.0) {
        GraspOutcome outcome;
        outcome.stage = GraspStage::Jammed;
        outcome.dp_op_pa = blower.stall_pressure_pa;
        outcome.q_op_m3s = 0.0;
        return finish(outcome, object, env, settings, geom);
    }

    // Stage 3, seal/regulate: couple lip closure to the pneumatic operating
    // point until the tip deflection settles.
    const GraspConvergence& conv = settings.convergence;
    double y = 0.0;
    double relaxation = 1.0;
    double prev_step = 0.0;
    bool have_prev_step = false;

    for (int iteration = 1; iteration <= conv.max_iterations; ++iteration) {
        const double c_eff = effective_conductance(leak, y);
        const OperatingPoint op = operating_point(blower, c_eff, leak.kind);
        const DeflectionResult tip =
            tip_deflection(geom, env, op.q_m3s, grid.d_theta_rad, settings.modes.flow,
                           settings.modes.interpretation, 2);

        if (tip.y_tip_m >= leak.initial_gap_m) {
            // The lip reaches the object: contact latches the seal shut and the
            // static vacuum load keeps it there. Flow stops, pressure stalls.
            GraspOutcome outcome;
            outcome.stage = GraspStage::SealedRegulated;
            outcome.dp_op_pa = blower.stall_pressure_pa;
            outcome.q_op_m3s = 0.0;
            outcome.y_tip_m = leak.initial_gap_m;
            outcome.iterations = iteration;
            if (iterate_log) iterate_log->push_back(leak.initial_gap_m);
            return finish(outcome, object, env, settings, geom);
        }

        const double step = tip.y_tip_m - y;
        if (have_prev_step && step * prev_step < 0.0)
            relaxation = std::max(relaxation / 2.0, 1.0 / 64.0);
        const double y_next = y + relaxation * step;
        prev_step = step;
        have_prev_step = true;
        if (iterate_log) iterate_log->push_back(y_next);

        const bool settled = std::abs(y_next - y) <
                             std::max(conv.abs_tol_m, conv.rel_tol * std::abs(y_next));
        y = y_next;
        if (settled) {
            const OperatingPoint final_op =
                operating_point(blower, effective_conductance(leak, y), leak.kind);
            GraspOutcome outcome;
            outcome.stage = GraspStage::SealedRegulated;
            outcome.dp_op_pa = final_op.dp_pa;
            outcome.q_op_m3s = final_op.q_m3s;
            outcome.y_tip_m = y;
            outcome.iterations = iteration;
            return finish(outcome, object, env, settings, geom);
        }
    }

    throw NumericError("grasp regulation for '" + object.name + "' did not settle after " +
                           std::to_string(conv.max_iterations) + " iterations",
                       y, y - prev_step * relaxation);
}

double holding_force(double dp_op_pa, const ObjectSpec& object) {
    if (!(dp_op_pa >= 0.0))
        throw DomainError("holding force: pressure differential must be non-negative");
    if (!(object.a_seal_m2 > 0.0))
        throw DomainError("holding force: seal area must be positive");
    return dp_op_pa * object.a_seal_m2;
}

double load_ratio(double mhf_n, double gripper_mass_kg, const AirEnvironment& env) {
    validate(env);
    if (!(gripper_mass_kg > 0.0))
        throw DomainError("load ratio: gripper mass must be positive");
    return mhf_n / (gripper_mass_kg * env.gravity_ms2);
}

ApertureClass aperture_ratio(double object_diameter_m, double aperture_m) {
    if (!(aperture_m > 0.0)) throw DomainError("aperture must be positive");
    if (!(object_diameter_m > 0.0)) throw DomainError("object diameter must be positive");
    ApertureClass result;
    result.ratio = object_diameter_m / aperture_m;
    result.self_closure_path = result.ratio < 1.0;
    return result;
}

}  // namespace gripkit
