#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gripkit/deflection.hpp"
#include "gripkit/errors.hpp"
#include "gripkit/geometry.hpp"
#include "gripkit/pneumatics.hpp"

using namespace gripkit;

namespace {

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("bernoulli differential") {
    const AirEnvironment env;
    CHECK(bernoulli_dp(env, 0.0, 1e-4) == 0.0);
    CHECK(bernoulli_dp(env, 0.01, 4.0414518843273804e-5) ==
          doctest::Approx(37500.0).epsilon(1e-12));
    // Q^2 scaling
    const double one = bernoulli_dp(env, 0.01, 1e-4);
    CHECK(rel_err(bernoulli_dp(env, 0.02, 1e-4), 4.0 * one) < 1e-14);
    CHECK_THROWS_AS(bernoulli_dp(env, 0.01, 0.0), DomainError);
    CHECK_THROWS_AS(bernoulli_dp(env, -0.01, 1e-4), DomainError);
}

TEST_CASE("bernoulli differential times area equals the segment force") {
    const AirEnvironment env;
    const LipGeometry geom{0.03, 0.04, std::numbers::pi / 6.0, 0.002, 5.0e6};
    for (const double q : {1e-4, 1e-3, 0.01, 0.02}) {
        for (const double d_theta : {0.05, 0.1, 0.5, 2.0}) {
            const double area = segment_area(geom, d_theta);
            const double force = segment_force(env, q, geom, d_theta);
            CHECK(rel_err(bernoulli_dp(env, q, area) * area, force) < 1e-12);
        }
    }
}

TEST_CASE("blower curve scales linearly with power") {
    const BlowerConfig config{41000.0, 0.04};
    CHECK(blower_curve(1.0, config).stall_pressure_pa == doctest::Approx(41000.0));
    CHECK(blower_curve(0.4, config).stall_pressure_pa == doctest::Approx(16400.0));
    CHECK(blower_curve(0.4, config).free_flow_m3s == doctest::Approx(0.016));

    const BlowerState inert = blower_curve(0.0, config);
    CHECK(inert.stall_pressure_pa == 0.0);
    CHECK(inert.free_flow_m3s == 0.0);

    CHECK_THROWS_AS(blower_curve(-0.1, config), DomainError);
    CHECK_THROWS_AS(blower_curve(1.1, config), DomainError);

    double previous = -1.0;
    for (double power = 0.0; power <= 1.0; power += 0.1) {
        const BlowerState state = blower_curve(power, config);
        CHECK(state.stall_pressure_pa >= previous);
        previous = state.stall_pressure_pa;
    }
}

TEST_CASE("operating point: perfect seal and open interface limits") {
    const BlowerState blower{0.4, 16400.0, 0.02};
    const OperatingPoint sealed = operating_point(blower, 0.0, LeakKind::Linear);
    CHECK(sealed.dp_pa == 16400.0);
    CHECK(sealed.q_m3s == 0.0);

    const OperatingPoint open = operating_point(blower, 1e6, LeakKind::Linear);
    CHECK(open.dp_pa < 1e-3);
    CHECK(open.q_m3s == doctest::Approx(0.02).epsilon(1e-6));
    CHECK(open.q_m3s <= blower.free_flow_m3s);
}

TEST_CASE("operating point: linear fixed point matches the closed form") {
    const BlowerState blower{0.4, 16400.0, 0.02};
    const OperatingPoint op = operating_point(blower, 1e-6, LeakKind::Linear);
    CHECK(op.dp_pa == doctest::Approx(9010.989010989011).epsilon(1e-9));
    CHECK(op.q_m3s == doctest::Approx(9.010989010989011e-3).epsilon(1e-9));
}

TEST_CASE("operating point lies on both laws") {
    const BlowerState blower{1.0, 41000.0, 0.04};
    for (const LeakKind kind : {LeakKind::Linear, LeakKind::Orifice}) {
        for (const double c : {1e-8, 1e-7, 1e-6, 1e-5, 1e-4}) {
            const OperatingPoint op = operating_point(blower, c, kind);
            const double leak_q = kind == LeakKind::Linear ? c * op.dp_pa
                                                           : c * std::sqrt(op.dp_pa);
            CHECK(std::abs(op.q_m3s - leak_q) / blower.free_flow_m3s < 1e-9);
            const double blower_dp =
                blower.stall_pressure_pa * (1.0 - op.q_m3s / blower.free_flow_m3s);
            CHECK(std::abs(op.dp_pa - blower_dp) / blower.stall_pressure_pa < 1e-9);
            CHECK(op.q_m3s >= 0.0);
            CHECK(op.q_m3s <= blower.free_flow_m3s);
            CHECK(op.dp_pa >= 0.0);
            CHECK(op.dp_pa <= blower.stall_pressure_pa);
        }
    }
}

TEST_CASE("operating point monotonicity in conductance") {
    const BlowerState blower{1.0, 41000.0, 0.04};
    for (const LeakKind kind : {LeakKind::Linear, LeakKind::Orifice}) {
        double previous_dp = blower.stall_pressure_pa + 1.0;
        double previous_q = -1.0;
        for (const double c : {1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3}) {
            const OperatingPoint op = operating_point(blower, c, kind);
            CHECK(op.dp_pa < previous_dp);
            CHECK(op.q_m3s > previous_q);
            previous_dp = op.dp_pa;
            previous_q = op.q_m3s;
        }
    }
}

TEST_CASE("operating point: inert blower and bad inputs") {
    const BlowerState inert{0.0, 0.0, 0.0};
    const OperatingPoint op = operating_point(inert, 1e-6, LeakKind::Linear);
    CHECK(op.dp_pa == 0.0);
    CHECK(op.q_m3s == 0.0);

    const BlowerState blower{1.0, 41000.0, 0.04};
    CHECK_THROWS_AS(operating_point(blower, -1e-6, LeakKind::Linear), DomainError);
    CHECK_THROWS_AS(validate(BlowerState{1.0, 41000.0, 0.0}), DomainError);
    CHECK_THROWS_AS(validate(BlowerState{1.5, 41000.0, 0.04}), DomainError);
}

TEST_CASE("a measured blower curve can replace the straight line") {
    const double p_stall = 16400.0;
    const double q_free = 0.02;
    const double c = 1e-6;
    // sagging characteristic: dp(q) = p_stall * (1 - (q/q_free)^2)
    const BlowerLine sag = [&](double q) {
        return p_stall * (1.0 - (q / q_free) * (q / q_free));
    };
    const OperatingPoint op = operating_point(sag, p_stall, q_free, c, LeakKind::Linear);
    // closed form of the quadratic fixed point, a*dp^2 + dp - p_stall = 0
    const double a = p_stall * c * c / (q_free * q_free);
    const double expected = (-1.0 + std::sqrt(1.0 + 4.0 * a * p_stall)) / (2.0 * a);
    CHECK(op.dp_pa == doctest::Approx(expected).epsilon(1e-7));
    CHECK(op.q_m3s == doctest::Approx(c * expected).epsilon(1e-7));
    // the sagging curve holds more pressure at the same leak than the line
    const OperatingPoint straight =
        operating_point(BlowerState{1.0, p_stall, q_free}, c, LeakKind::Linear);
    CHECK(op.dp_pa > straight.dp_pa);
}

TEST_CASE("flow apportionment") {
    const double two_pi = 2.0 * std::numbers::pi;
    CHECK(apportion_flow(0.5, two_pi, FlowMode::Total) == 0.5);
    CHECK(apportion_flow(0.5, two_pi, FlowMode::Apportioned) ==
          doctest::Approx(0.5).epsilon(1e-15));

    const double q_total = 47.9 / 3600.0;
    CHECK(apportion_flow(q_total, two_pi / 36.0, FlowMode::Apportioned) ==
          doctest::Approx(3.6959876543209877e-4).epsilon(1e-12));

    // total mode ignores the segment width
    CHECK(apportion_flow(q_total, 0.1, FlowMode::Total) ==
          apportion_flow(q_total, 1.0, FlowMode::Total));

    CHECK_THROWS_AS(apportion_flow(-1.0, 0.1, FlowMode::Total), DomainError);
    CHECK_THROWS_AS(apportion_flow(1.0, 0.0, FlowMode::Total), DomainError);
}

TEST_CASE("effective conductance closes with deflection") {
    const LeakModel leak{LeakKind::Linear, 1e-6, 1e-3, 2.0};
    CHECK(effective_conductance(leak, 0.0) == 1e-6);
    CHECK(effective_conductance(leak, 5e-4) == doctest::Approx(2.5e-7).epsilon(1e-12));
    CHECK(effective_conductance(leak, 1e-3) == 0.0);
    CHECK(effective_conductance(leak, 2e-3) == 0.0);

    double previous = 1e-5;
    for (const double y : {0.0, 1e-4, 3e-4, 6e-4, 9e-4, 1e-3}) {
        const double c = effective_conductance(leak, y);
        CHECK(c < previous);
        previous = c;
    }

    const LeakModel no_feedback{LeakKind::Linear, 1e-6, 1e-3, 0.0};
    CHECK(effective_conductance(no_feedback, 9e-4) == 1e-6);

    const LeakModel no_gap{LeakKind::Linear, 1e-6, 0.0, 2.0};
    CHECK(effective_conductance(no_gap, 0.0) == 0.0);
}
