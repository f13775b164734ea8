#pragma once

#include <string>
#include <vector>

#include "gripkit/deflection.hpp"
#include "gripkit/geometry.hpp"
#include "gripkit/pneumatics.hpp"

namespace gripkit {

/// A graspable object together with its interface model.
struct ObjectSpec {
    std::string name;
    double diameter_m = 0.05;
    double mass_kg = 0.1;
    LeakModel leak;
    double a_seal_m2 = 2.0e-3;  ///< effective sealed area under suction
    double mu = 0.5;            ///< interface friction; stored, unused by vertical-lift MHF
};

/// Stage reached by the grasp procedure.
///  Conforming      - contact made, vacuum inert; nothing to pull with.
///  Jammed          - airtight interface at vacuum-on; granules rigid, no lip flow.
///  SealedRegulated - self-closing lip settled into a regulated operating point
///                    (or latched fully closed) that supports the object.
///  Failed          - converged suction force cannot support the object weight.
enum class GraspStage { Conforming, Jammed, SealedRegulated, Failed };

const char* to_string(GraspStage stage);

struct GraspModes {
    FlowMode flow = FlowMode::Total;
    LoadInterpretation interpretation = LoadInterpretation::TotalForce;
};

struct GraspConvergence {
    double rel_tol = 1.0e-9;
    double abs_tol_m = 1.0e-12;
    int max_iterations = 200;
};

struct GraspSettings {
    GraspModes modes;
    GraspConvergence convergence;
    double gripper_mass_kg = 0.1375;
    double aperture_m = 0.08;
};

struct GraspOutcome {
    GraspStage stage = GraspStage::Conforming;
    double dp_op_pa = 0.0;
    double q_op_m3s = 0.0;
    double y_tip_m = 0.0;
    bool sealed = false;  ///< a holding seal was established (Jammed or SealedRegulated)
    double mhf_n = 0.0;
    double load_ratio = 0.0;  ///< MHF over gripper weight
    int iterations = 0;
    std::vector<std::string> warnings;
};

/// Aperture classification: objects narrower than the aperture rely on the
/// lip's self-closure path; wider objects contact the full interface.
struct ApertureClass {
    double ratio = 0.0;
    bool self_closure_path = false;
};

void validate(const ObjectSpec& object);
void validate(const GraspSettings& settings);

/// Runs the three working stages:
///   1. conform  - contact established, interface leak at the initial gap;
///   2. jam      - vacuum on; an airtight interface short-circuits to stall;
///   3. regulate - fixed-point iteration coupling lip closure to the pneumatic
///                 operating point: c(y) -> (dp, q) -> y until y settles.
/// If an iterate's deflection reaches the full gap the lip touches the object
/// and the seal latches: the static vacuum load holds it closed, flow stops.
/// Oscillating iterates are under-relaxed (step halving, floor 1/64).
/// Throws NumericError with the last two iterates if the loop does not settle.
GraspOutcome simulate_grasp(const LipGeometry& geom, const AirEnvironment& env,
                            const BlowerState& blower, const ObjectSpec& object,
                            const SegmentGrid& grid, const GraspSettings& settings = {},
                            std::vector<double>* iterate_log = nullptr);

/// Vertical-lift holding force: dp * a_seal. Friction affects only shear loads,
/// which are out of scope, so mu does not enter.
double holding_force(double dp_op_pa, const ObjectSpec& object);

/// Held force over gripper weight.
double load_ratio(double mhf_n, double gripper_mass_kg, const AirEnvironment& env);

ApertureClass aperture_ratio(double object_diameter_m, double aperture_m);

}  // namespace gripkit
