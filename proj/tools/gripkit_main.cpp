// gripkit - desk-scale physics and design tool for suction/jamming grippers
// with a self-closing sealing lip.
//
// Subcommands: deflect, operate, grasp, fit, sweep, trace.
// Exit codes: 0 success, 2 validation/parse error, 3 numeric non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gripkit/calibration.hpp"
#include "gripkit/config.hpp"
#include "gripkit/deflection.hpp"
#include "gripkit/errors.hpp"
#include "gripkit/grasp.hpp"
#include "gripkit/trace.hpp"
#include "gripkit/units.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gripkit;

namespace {

constexpr int kSchemaVersion = 1;

struct GlobalOptions {
    std::string config_path;
    std::string mode;  // paper | consistent
    std::string flow;  // total | apportioned
    std::string out_dir;
    std::string format = "json";
};

RunConfig resolve_config(const GlobalOptions& global) {
    RunConfig config;
    if (!global.config_path.empty()) config = load_config(global.config_path);
    if (!global.mode.empty()) config.interpretation = interpretation_from_string(global.mode);
    if (!global.flow.empty()) config.flow_mode = flow_mode_from_string(global.flow);
    return config;
}

GraspSettings settings_from(const RunConfig& config) {
    GraspSettings settings;
    settings.modes.flow = config.flow_mode;
    settings.modes.interpretation = config.interpretation;
    settings.gripper_mass_kg = config.gripper_mass_kg;
    settings.aperture_m = config.aperture_m;
    return settings;
}

void write_text(const GlobalOptions& global, const std::string& filename,
                const std::string& text) {
    if (global.out_dir.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    fs::create_directories(global.out_dir);
    const fs::path path = fs::path(global.out_dir) / filename;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path.string() + "'");
    out << text;
    std::cout << path.string() << '\n';
}

void emit_report(const GlobalOptions& global, const std::string& stem, const json& report) {
    write_text(global, stem + ".json", report.dump(2) + "\n");
}

json mode_flags(const RunConfig& config) {
    return json{{"flow_mode", to_string(config.flow_mode)},
                {"interpretation", to_string(config.interpretation)}};
}

json object_report(const ObjectSpec& object, const GraspOutcome& outcome,
                   const RunConfig& config) {
    const ApertureClass aperture = aperture_ratio(object.diameter_m, config.aperture_m);
    json entry{{"name", object.name},
               {"stage", to_string(outcome.stage)},
               {"dp_op_pa", outcome.dp_op_pa},
               {"q_op_m3s", outcome.q_op_m3s},
               {"y_tip_m", outcome.y_tip_m},
               {"sealed", outcome.sealed},
               {"mhf_n", outcome.mhf_n},
               {"load_ratio", outcome.load_ratio},
               {"iterations", outcome.iterations},
               {"aperture_ratio", aperture.ratio},
               {"contact", aperture.self_closure_path ? "self-closure" : "full-interface"},
               {"warnings", outcome.warnings}};
    if (config.aperture_assumed)
        entry["warnings"].push_back("aperture_m defaulted to 0.08; not a measured value");
    return entry;
}

int run_deflect(const GlobalOptions& global, double q_total, int samples) {
    const RunConfig config = resolve_config(global);
    const DeflectionResult result =
        tip_deflection(config.geometry, config.env, q_total, config.grid, config.flow_mode,
                       config.interpretation, samples);

    std::ostringstream profile;
    profile.precision(17);
    profile << "x_m,y_m\n";
    for (const ProfilePoint& point : result.profile)
        profile << point.x_m << "," << point.y_m << "\n";

    json summary{{"schema_version", kSchemaVersion},
                 {"y_tip_m", result.y_tip_m},
                 {"q_total_m3s", q_total},
                 {"d_theta_rad", config.grid.d_theta_rad},
                 {"n_segments", config.grid.n_segments},
                 {"beam_length_m", beam_length(config.geometry)},
                 {"warnings", json::array()}};
    summary.update(mode_flags(config));
    if (result.beyond_small_deflection)
        summary["warnings"].push_back("y_tip exceeds L/10; linear beam theory is stretched");

    if (global.format == "csv" && global.out_dir.empty()) {
        std::cout << profile.str();
    } else {
        write_text(global, "deflect_profile.csv", profile.str());
        emit_report(global, "deflect_summary", summary);
    }
    return 0;
}

int run_operate(const GlobalOptions& global, double power, std::optional<double> c0_override) {
    const RunConfig config = resolve_config(global);
    const BlowerState blower = blower_curve(power, config.blower);
    const double conductance =
        c0_override ? *c0_override : config.leak.base_conductance;
    const OperatingPoint op = operating_point(blower, conductance, config.leak.kind);
    json report{{"schema_version", kSchemaVersion},
                {"power", power},
                {"p_stall_pa", blower.stall_pressure_pa},
                {"q_free_m3s", blower.free_flow_m3s},
                {"conductance", conductance},
                {"leak_kind", to_string(config.leak.kind)},
                {"dp_op_pa", op.dp_pa},
                {"q_op_m3s", op.q_m3s},
                {"iterations", op.iterations}};
    emit_report(global, "operate", report);
    return 0;
}

int run_grasp(const GlobalOptions& global, const std::string& objects_path, double power) {
    const RunConfig config = resolve_config(global);
    const std::vector<ObjectSpec> objects = load_objects_csv(objects_path);
    const BlowerState blower = blower_curve(power, config.blower);
    const GraspSettings settings = settings_from(config);

    json report{{"schema_version", kSchemaVersion},
                {"power", power},
                {"aperture_m", config.aperture_m},
                {"gripper_mass_kg", config.gripper_mass_kg},
                {"objects", json::array()}};
    report.update(mode_flags(config));
    for (const ObjectSpec& object : objects) {
        const GraspOutcome outcome = simulate_grasp(config.geometry, config.env, blower,
                                                    object, config.grid, settings);
        report["objects"].push_back(object_report(object, outcome, config));
    }
    emit_report(global, "grasp_report", report);
    return 0;
}

int run_fit(const GlobalOptions& global, const std::string& observations_path,
            const std::string& objects_path, const std::string& groups_spec) {
    const RunConfig config = resolve_config(global);
    CalibrationSetup setup;
    setup.geom = config.geometry;
    setup.env = config.env;
    setup.blower = config.blower;
    setup.grid = config.grid;
    setup.settings = settings_from(config);
    setup.objects = load_objects_csv(objects_path);
    setup.c0_groups = parse_groups(groups_spec);

    const std::vector<Observation> observations = load_observations_csv(observations_path);
    const FitResult fit = fit_parameters(observations, setup);

    json report{{"schema_version", kSchemaVersion},
                {"converged", fit.converged},
                {"sweeps", fit.iterations},
                {"residual_norm", fit.residual_norm},
                {"objects", json::array()},
                {"residuals", json::array()}};
    for (const auto& [name, params] : fit.per_object)
        report["objects"].push_back({{"name", name},
                                     {"c0", params.base_conductance},
                                     {"a_seal_m2", params.a_seal_m2}});
    for (const ResidualEntry& entry : fit.residuals)
        report["residuals"].push_back({{"object", entry.object},
                                       {"power", entry.power},
                                       {"channel", entry.is_flow ? "q" : "mhf"},
                                       {"relative", entry.relative}});
    emit_report(global, "fit_report", report);
    return 0;
}

int run_sweep(const GlobalOptions& global, const std::string& parameter, double from,
              double to, int steps, double power, double a_seal, bool exponents) {
    const RunConfig config = resolve_config(global);

    if (exponents) {
        const TipContext base{0.01, config.grid.d_theta_rad, config.flow_mode,
                              config.interpretation};
        json report{{"schema_version", kSchemaVersion},
                    {"exponents",
                     {{"q", sensitivity(config.geometry, config.env, base, TipParameter::Flow)},
                      {"b", sensitivity(config.geometry, config.env, base, TipParameter::Thickness)},
                      {"E", sensitivity(config.geometry, config.env, base, TipParameter::Modulus)},
                      {"d_theta", sensitivity(config.geometry, config.env, base,
                                              TipParameter::SegmentWidth)}}}};
        report.update(mode_flags(config));
        emit_report(global, "sweep_exponents", report);
        return 0;
    }

    if (steps < 2) throw DomainError("sweep: need at least two steps");
    if (!(to > from)) throw DomainError("sweep: need from < to");

    ObjectSpec probe;
    probe.name = "probe";
    probe.diameter_m = config.aperture_m;
    probe.mass_kg = 0.0;
    probe.leak = config.leak;
    probe.a_seal_m2 = a_seal;

    std::ostringstream csv;
    csv.precision(17);
    csv << "parameter,value,y_tip_m,dp_op_pa,q_op_m3s,mhf_n\n";
    for (int k = 0; k < steps; ++k) {
        const double value = from + (to - from) * k / (steps - 1);
        RunConfig point = config;
        ObjectSpec object = probe;
        double point_power = power;
        if (parameter == "power") point_power = value;
        else if (parameter == "c0") object.leak.base_conductance = value;
        else if (parameter == "gap0_m") object.leak.initial_gap_m = value;
        else if (parameter == "b_m") point.geometry.thickness_m = value;
        else if (parameter == "E_pa") point.geometry.elastic_modulus_pa = value;
        else if (parameter == "alpha_rad") point.geometry.cone_angle_rad = value;
        else if (parameter == "a_seal_m2") object.a_seal_m2 = value;
        else throw DomainError("sweep: unknown parameter '" + parameter +
                               "' (expected power|c0|gap0_m|b_m|E_pa|alpha_rad|a_seal_m2)");

        const BlowerState blower = blower_curve(point_power, point.blower);
        const GraspOutcome outcome = simulate_grasp(point.geometry, point.env, blower,
                                                    object, point.grid, settings_from(point));
        csv << parameter << "," << value << "," << outcome.y_tip_m << ","
            << outcome.dp_op_pa << "," << outcome.q_op_m3s << "," << outcome.mhf_n << "\n";
    }
    write_text(global, "sweep_" + parameter + ".csv", csv.str());
    return 0;
}

int run_trace(const GlobalOptions& global, const std::vector<std::string>& inputs,
              const std::string& channel, std::string kind, double window,
              double drop_fraction) {
    if (inputs.empty()) throw DomainError("trace: need at least one input file");

    const auto process = [&](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DomainError("cannot open '" + path + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        const TimeSeries series = parse_trace(buffer.str(), channel);

        std::string effective_kind = kind;
        if (effective_kind == "auto") {
            if (series.label.ends_with("_n")) effective_kind = "force";
            else if (series.label.ends_with("_m3s")) effective_kind = "flow";
            else
                throw DomainError("trace: cannot infer channel kind from label '" +
                                  series.label + "'; pass --kind force|flow");
        }
        json entry{{"file", path}, {"channel", series.label}, {"kind", effective_kind}};
        if (effective_kind == "force") {
            const MhfExtract extract = extract_mhf(series, drop_fraction);
            entry["mhf_n"] = extract.mhf_n;
            entry["detach_time_s"] = extract.detach_time_s;
        } else if (effective_kind == "flow") {
            const PlateauExtract plateau = extract_plateau(series, window);
            entry["q_m3s"] = plateau.value;
            entry["q_m3h"] = units::m3s_to_m3h(plateau.value);
            entry["stable"] = plateau.stable;
        } else {
            throw DomainError("trace: unknown kind '" + effective_kind + "'");
        }
        return entry;
    };

    // Files are independent; process them concurrently, report in input order.
    std::vector<std::future<json>> futures;
    futures.reserve(inputs.size());
    for (const std::string& path : inputs)
        futures.push_back(std::async(std::launch::async, process, path));

    json report{{"schema_version", kSchemaVersion}, {"results", json::array()}};
    for (std::future<json>& future : futures) report["results"].push_back(future.get());
    emit_report(global, "trace_report", report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"physics and design toolkit for self-closing suction/jamming grippers"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--config", global.config_path, "key = value configuration file")
        ->check(CLI::ExistingFile);
    app.add_option("--mode", global.mode, "deflection interpretation")
        ->check(CLI::IsMember({"paper", "consistent"}));
    app.add_option("--flow", global.flow, "segment flow mode")
        ->check(CLI::IsMember({"total", "apportioned"}));
    app.add_option("--out", global.out_dir, "write reports into this directory");
    app.add_option("--format", global.format, "primary stdout format")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* deflect = app.add_subcommand("deflect", "lip tip deflection and profile");
    double q_total = 0.01;
    int samples = 101;
    deflect->add_option("--q", q_total, "total airflow in m3/s");
    double q_m3h = 0.0;
    deflect->add_option("--q-m3h", q_m3h, "total airflow in m3/h (overrides --q)");
    deflect->add_option("--samples", samples, "profile sample count");

    auto* operate = app.add_subcommand("operate", "pneumatic operating point");
    double power = 1.0;
    operate->add_option("--power", power, "blower power fraction");
    std::optional<double> c0_override;
    operate->add_option("--c0", c0_override, "leak conductance override");

    auto* grasp = app.add_subcommand("grasp", "three-stage grasp simulation");
    std::string objects_path;
    double grasp_power = 0.4;
    grasp->add_option("--objects", objects_path, "objects CSV")
        ->required()
        ->check(CLI::ExistingFile);
    grasp->add_option("--power", grasp_power, "blower power fraction");

    auto* fit = app.add_subcommand("fit", "calibrate leak and seal parameters");
    std::string observations_path;
    std::string fit_objects_path;
    std::string groups_spec = "egg,tomato;brick,metal,mug";
    fit->add_option("--observations", observations_path, "observations CSV")
        ->required()
        ->check(CLI::ExistingFile);
    fit->add_option("--objects", fit_objects_path, "objects CSV")
        ->required()
        ->check(CLI::ExistingFile);
    fit->add_option("--groups", groups_spec, "shared-conductance groups, e.g. 'a,b;c,d'");

    auto* sweep = app.add_subcommand("sweep", "parameter grid or scaling exponents");
    std::string sweep_parameter = "power";
    double sweep_from = 0.1;
    double sweep_to = 1.0;
    int sweep_steps = 10;
    double sweep_power = 0.4;
    double sweep_a_seal = 5.026548245743669e-3;
    bool sweep_exponents = false;
    sweep->add_option("--parameter", sweep_parameter, "swept parameter");
    sweep->add_option("--from", sweep_from, "first grid value");
    sweep->add_option("--to", sweep_to, "last grid value");
    sweep->add_option("--steps", sweep_steps, "grid size");
    sweep->add_option("--power", sweep_power, "blower power for non-power sweeps");
    sweep->add_option("--a-seal", sweep_a_seal, "probe seal area in m2");
    sweep->add_flag("--exponents", sweep_exponents, "emit scaling exponents instead");

    auto* trace = app.add_subcommand("trace", "extract MHF / flow plateaus from traces");
    std::vector<std::string> trace_inputs;
    std::string trace_channel;
    std::string trace_kind = "auto";
    double trace_window = 1.0;
    double trace_drop = 0.5;
    trace->add_option("--input", trace_inputs, "trace CSV file(s)")
        ->required()
        ->check(CLI::ExistingFile);
    trace->add_option("--channel", trace_channel, "value column name");
    trace->add_option("--kind", trace_kind, "force|flow|auto")
        ->check(CLI::IsMember({"force", "flow", "auto"}));
    trace->add_option("--window", trace_window, "plateau window in seconds");
    trace->add_option("--drop-fraction", trace_drop, "detachment drop fraction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? 0 : 2;
    }

    try {
        if (deflect->parsed()) {
            if (q_m3h > 0.0) q_total = units::m3h_to_m3s(q_m3h);
            return run_deflect(global, q_total, samples);
        }
        if (operate->parsed()) return run_operate(global, power, c0_override);
        if (grasp->parsed()) return run_grasp(global, objects_path, grasp_power);
        if (fit->parsed())
            return run_fit(global, observations_path, fit_objects_path, groups_spec);
        if (sweep->parsed())
            return run_sweep(global, sweep_parameter, sweep_from, sweep_to, sweep_steps,
                             sweep_power, sweep_a_seal, sweep_exponents);
        if (trace->parsed())
            return run_trace(global, trace_inputs, trace_channel, trace_kind, trace_window,
                             trace_drop);
    } catch (const NumericError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 3;
    } catch (const DomainError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return 2;
    }
    return 2;
}
