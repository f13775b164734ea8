#include "gripkit/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "gripkit/errors.hpp"

namespace gripkit {

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

/// Deterministic 1-D minimizer on [lo, hi]: a uniform scan brackets the best
/// basin, golden section refines inside it. Handles objectives with flat
/// shelves and steps, which plain golden section does not.
double line_search(const std::function<double(double)>& f, double lo, double hi,
                   double rel_tol, int scan_points) {
    if (!(hi > lo)) return lo;  // degenerate interval pins the parameter
    const int n = std::max(scan_points, 3);
    int best = 0;
    double best_value = f(lo);
    for (int k = 1; k < n; ++k) {
        const double x = lo + (hi - lo) * k / (n - 1);
        const double value = f(x);
        if (value < best_value) {
            best_value = value;
            best = k;
        }
    }
    double a = lo + (hi - lo) * std::max(0, best - 1) / (n - 1);
    double b = lo + (hi - lo) * std::min(n - 1, best + 1) / (n - 1);

    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 400; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
        }
        const double mid = 0.5 * (a + b);
        if (b - a < std::max(1.0e-18, rel_tol * std::abs(mid))) break;
    }
    return 0.5 * (a + b);
}

struct Parameterization {
    // group index per object, and object indices per group
    std::vector<std::size_t> group_of_object;
    std::vector<std::vector<std::size_t>> groups;
    std::vector<double> group_c0;
    std::vector<bool> fit_a_seal;
};

}  // namespace

FitResult fit_parameters(const std::vector<Observation>& observations,
                         const CalibrationSetup& setup) {
    if (observations.empty())
        throw DomainError("fit: observation set must not be empty");
    validate(setup.geom);
    validate(setup.env);
    validate(setup.blower);
    validate(setup.settings);
    if (setup.objects.empty()) throw DomainError("fit: no objects configured");

    std::vector<ObjectSpec> objects = setup.objects;
    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        validate(objects[i]);
        if (!index_of.emplace(objects[i].name, i).second)
            throw DomainError("fit: duplicate object '" + objects[i].name + "'");
    }
    for (const Observation& obs : observations) {
        if (!index_of.count(obs.object))
            throw DomainError("fit: observation references unknown object '" + obs.object + "'");
        if (!(obs.power > 0.0) || !(obs.power <= 1.0))
            throw DomainError("fit: observation power must lie in (0, 1]");
        if (obs.mhf_n && !(*obs.mhf_n >= 0.0))
            throw DomainError("fit: measured MHF must be non-negative");
        if (obs.q_m3s && !(*obs.q_m3s >= 0.0))
            throw DomainError("fit: measured flow must be non-negative");
        if (!obs.mhf_n && !obs.q_m3s)
            throw DomainError("fit: observation for '" + obs.object + "' carries no channel");
    }

    // Shared-conductance groups; every object not named in a group stands alone.
    Parameterization param;
    param.group_of_object.assign(objects.size(), objects.size());
    std::set<std::string> grouped;
    for (const auto& names : setup.c0_groups) {
        std::vector<std::size_t> members;
        for (const std::string& name : names) {
            auto it = index_of.find(name);
            if (it == index_of.end())
                throw DomainError("fit: group references unknown object '" + name + "'");
            if (!grouped.insert(name).second)
                throw DomainError("fit: object '" + name + "' appears in two groups");
            members.push_back(it->second);
        }
        if (members.empty()) continue;
        for (std::size_t i : members) param.group_of_object[i] = param.groups.size();
        param.groups.push_back(std::move(members));
    }
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (param.group_of_object[i] == objects.size()) {
            param.group_of_object[i] = param.groups.size();
            param.groups.push_back({i});
        }
    }
    param.group_c0.resize(param.groups.size());
    for (std::size_t g = 0; g < param.groups.size(); ++g)
        param.group_c0[g] = objects[param.groups[g].front()].leak.base_conductance;

    param.fit_a_seal.assign(objects.size(), false);
    for (const Observation& obs : observations)
        if (obs.mhf_n) param.fit_a_seal[index_of.at(obs.object)] = true;

    // Parameters of objects the observations never mention stay configured.
    std::vector<bool> fit_group(param.groups.size(), false);
    for (const Observation& obs : observations)
        fit_group[param.group_of_object[index_of.at(obs.object)]] = true;

    const auto apply_c0 = [&]() {
        for (std::size_t g = 0; g < param.groups.size(); ++g)
            for (std::size_t i : param.groups[g])
                objects[i].leak.base_conductance = param.group_c0[g];
    };

    const auto predict = [&](const Observation& obs) {
        const ObjectSpec& object = objects[index_of.at(obs.object)];
        const BlowerState blower = blower_curve(obs.power, setup.blower);
        return simulate_grasp(setup.geom, setup.env, blower, object, setup.grid,
                              setup.settings);
    };

    const auto objective = [&](const std::vector<const Observation*>& rows) {
        double sum = 0.0;
        for (const Observation* obs : rows) {
            const GraspOutcome outcome = predict(*obs);
            if (obs->mhf_n) {
                const double denom = *obs->mhf_n != 0.0 ? *obs->mhf_n : 1.0;
                const double res = (outcome.mhf_n - *obs->mhf_n) / denom;
                sum += res * res;
            }
            if (obs->q_m3s) {
                const double denom = *obs->q_m3s != 0.0 ? *obs->q_m3s : 1.0;
                const double res = (outcome.q_op_m3s - *obs->q_m3s) / denom;
                sum += res * res;
            }
        }
        return sum;
    };

    std::vector<const Observation*> all_rows;
    for (const Observation& obs : observations) all_rows.push_back(&obs);

    FitResult result;
    bool converged = false;
    int sweeps = 0;
    while (sweeps < setup.max_sweeps && !converged) {
        double max_change = 0.0;

        for (std::size_t g = 0; g < param.groups.size(); ++g) {
            if (!fit_group[g]) continue;
            // First sweep: anchor each group conductance to its flow rows alone.
            // The MHF response has a flat shelf once the lip latches shut, and
            // descending the joint objective from a cold start can park on its
            // edge; the flow channel has no such shelf.
            std::vector<const Observation*> rows;
            if (sweeps == 0) {
                for (const Observation& obs : observations)
                    if (obs.q_m3s && param.group_of_object[index_of.at(obs.object)] == g)
                        rows.push_back(&obs);
            }
            const std::vector<const Observation*>& active = rows.empty() ? all_rows : rows;
            const double previous = param.group_c0[g];
            param.group_c0[g] = line_search(
                [&](double value) {
                    param.group_c0[g] = value;
                    apply_c0();
                    return objective(active);
                },
                setup.c0_lower, setup.c0_upper, setup.line_search_rel_tol,
                setup.bracket_scan_points);
            apply_c0();
            max_change = std::max(max_change, std::abs(param.group_c0[g] - previous) /
                                                  std::max(std::abs(previous), 1.0e-30));
        }

        for (std::size_t i = 0; i < objects.size(); ++i) {
            if (!param.fit_a_seal[i]) continue;
            const double previous = objects[i].a_seal_m2;
            objects[i].a_seal_m2 = line_search(
                [&](double value) {
                    objects[i].a_seal_m2 = value;
                    return objective(all_rows);
                },
                setup.a_seal_lower, setup.a_seal_upper, setup.line_search_rel_tol,
                setup.bracket_scan_points);
            max_change = std::max(max_change, std::abs(objects[i].a_seal_m2 - previous) /
                                                  std::max(std::abs(previous), 1.0e-30));
        }

        ++sweeps;
        converged = sweeps > 1 && max_change < 1.0e-13;
    }

    for (const Observation& obs : observations) {
        const GraspOutcome outcome = predict(obs);
        if (obs.mhf_n) {
            const double denom = *obs.mhf_n != 0.0 ? *obs.mhf_n : 1.0;
            result.residuals.push_back(
                {obs.object, obs.power, false, (outcome.mhf_n - *obs.mhf_n) / denom});
        }
        if (obs.q_m3s) {
            const double denom = *obs.q_m3s != 0.0 ? *obs.q_m3s : 1.0;
            result.residuals.push_back(
                {obs.object, obs.power, true, (outcome.q_op_m3s - *obs.q_m3s) / denom});
        }
    }
    double sum = 0.0;
    for (const ResidualEntry& entry : result.residuals) sum += entry.relative * entry.relative;
    result.residual_norm = std::sqrt(sum);
    result.iterations = sweeps;
    result.converged = converged;
    for (const ObjectSpec& object : objects)
        result.per_object[object.name] = {object.leak.base_conductance, object.a_seal_m2};
    result.calibrated_objects = std::move(objects);
    return result;
}

TipParameter tip_parameter_from_string(const std::string& name) {
    if (name == "q") return TipParameter::Flow;
    if (name == "b") return TipParameter::Thickness;
    if (name == "E") return TipParameter::Modulus;
    if (name == "d_theta") return TipParameter::SegmentWidth;
    if (name == "alpha") return TipParameter::ConeAngle;
    if (name == "r") return TipParameter::InnerRadius;
    if (name == "R") return TipParameter::OuterRadius;
    throw DomainError("unknown tip parameter '" + name + "' (expected q|b|E|d_theta|alpha|r|R)");
}

const char* to_string(TipParameter parameter) {
    switch (parameter) {
        case TipParameter::Flow: return "q";
        case TipParameter::Thickness: return "b";
        case TipParameter::Modulus: return "E";
        case TipParameter::SegmentWidth: return "d_theta";
        case TipParameter::ConeAngle: return "alpha";
        case TipParameter::InnerRadius: return "r";
        case TipParameter::OuterRadius: return "R";
    }
    return "?";
}

namespace {

double tip_at_scaled(const LipGeometry& geom, const AirEnvironment& env,
                     const TipContext& context, TipParameter parameter, double scale) {
    LipGeometry g = geom;
    TipContext ctx = context;
    switch (parameter) {
        case TipParameter::Flow: ctx.q_total_m3s *= scale; break;
        case TipParameter::Thickness: g.thickness_m *= scale; break;
        case TipParameter::Modulus: g.elastic_modulus_pa *= scale; break;
        case TipParameter::SegmentWidth: ctx.d_theta_rad *= scale; break;
        case TipParameter::ConeAngle: g.cone_angle_rad *= scale; break;
        case TipParameter::InnerRadius: g.inner_radius_m *= scale; break;
        case TipParameter::OuterRadius: g.outer_radius_m *= scale; break;
    }
    return tip_deflection(g, env, ctx.q_total_m3s, ctx.d_theta_rad, ctx.flow_mode,
                          ctx.interpretation, 2)
        .y_tip_m;
}

}  // namespace

double sensitivity(const LipGeometry& geom, const AirEnvironment& env,
                   const TipContext& base, TipParameter parameter) {
    constexpr double kStep = 1.001;
    double base_value = 0.0;
    switch (parameter) {
        case TipParameter::Flow: base_value = base.q_total_m3s; break;
        case TipParameter::Thickness: base_value = geom.thickness_m; break;
        case TipParameter::Modulus: base_value = geom.elastic_modulus_pa; break;
        case TipParameter::SegmentWidth: base_value = base.d_theta_rad; break;
        case TipParameter::ConeAngle: base_value = geom.cone_angle_rad; break;
        case TipParameter::InnerRadius: base_value = geom.inner_radius_m; break;
        case TipParameter::OuterRadius: base_value = geom.outer_radius_m; break;
    }
    if (!(base_value > 0.0))
        throw DomainError("sensitivity: parameter '" + std::string(to_string(parameter)) +
                          "' sits at a domain boundary");
    double y_plus = 0.0;
    double y_minus = 0.0;
    try {
        y_plus = tip_at_scaled(geom, env, base, parameter, kStep);
        y_minus = tip_at_scaled(geom, env, base, parameter, 1.0 / kStep);
    } catch (const DomainError&) {
        throw DomainError("sensitivity: parameter '" + std::string(to_string(parameter)) +
                          "' sits at a domain boundary");
    }
    if (!(y_plus > 0.0) || !(y_minus > 0.0))
        throw DomainError("sensitivity: deflection vanishes at the base point");
    return std::log(y_plus / y_minus) / (2.0 * std::log(kStep));
}

DesignVariable design_variable_from_string(const std::string& name) {
    if (name == "b") return DesignVariable::Thickness;
    if (name == "E") return DesignVariable::Modulus;
    if (name == "alpha") return DesignVariable::ConeAngle;
    throw DomainError("unknown design variable '" + name + "' (expected b|E|alpha)");
}

double design_search(double target_y_m, DesignVariable variable, double lower,
                     double upper, const LipGeometry& geom, const AirEnvironment& env,
                     const TipContext& context) {
    if (!(upper > lower)) throw DomainError("design search: bounds must satisfy lower < upper");

    const auto tip_at = [&](double value) {
        LipGeometry g = geom;
        switch (variable) {
            case DesignVariable::Thickness: g.thickness_m = value; break;
            case DesignVariable::Modulus: g.elastic_modulus_pa = value; break;
            case DesignVariable::ConeAngle: g.cone_angle_rad = value; break;
        }
        return tip_deflection(g, env, context.q_total_m3s, context.d_theta_rad,
                              context.flow_mode, context.interpretation, 2)
            .y_tip_m;
    };

    // Monotonicity over the bounds is a precondition; verify it by sampling.
    constexpr int kSamples = 9;
    double previous = tip_at(lower);
    const double y_lower = previous;
    bool non_increasing = true;
    bool non_decreasing = true;
    double y_upper = previous;
    for (int k = 1; k < kSamples; ++k) {
        const double x = lower + (upper - lower) * k / (kSamples - 1);
        const double y = tip_at(x);
        non_increasing = non_increasing && y <= previous;
        non_decreasing = non_decreasing && y >= previous;
        previous = y;
        y_upper = y;
    }
    if (!non_increasing && !non_decreasing)
        throw DomainError("design search: deflection is not monotone over the bounds");

    const double y_min = std::min(y_lower, y_upper);
    const double y_max = std::max(y_lower, y_upper);
    if (!(target_y_m >= y_min) || !(target_y_m <= y_max)) {
        std::ostringstream message;
        message << "design search: target " << target_y_m
                << " m is outside the achievable range [" << y_min << ", " << y_max
                << "] m over the given bounds";
        throw DomainError(message.str());
    }

    constexpr double kTolM = 1.0e-12;
    constexpr int kMaxIterations = 200;
    const bool increasing = y_upper >= y_lower;
    double lo = lower;
    double hi = upper;
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < kMaxIterations; ++it) {
        mid = 0.5 * (lo + hi);
        const double y = tip_at(mid);
        if (std::abs(y - target_y_m) < kTolM) return mid;
        if ((y < target_y_m) == increasing)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

}  // namespace gripkit
