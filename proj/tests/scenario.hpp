#pragma once

// The bundled six-object bench scenario used by the calibration tests and the
// acceptance suite. Mirrors data/objects_default.csv and
// data/observations_default.csv.

#include <numbers>
#include <vector>

#include "gripkit/calibration.hpp"
#include "gripkit/grasp.hpp"

namespace scenario {

inline gripkit::LipGeometry lip() {
    return gripkit::LipGeometry{0.03, 0.04, std::numbers::pi / 6.0, 0.002, 5.0e6};
}

inline gripkit::BlowerConfig blower() { return gripkit::BlowerConfig{41000.0, 0.04}; }

inline gripkit::ObjectSpec object(const char* name, double diameter, double mass,
                                  double c0, double gap0, double a_seal, double mu) {
    gripkit::ObjectSpec o;
    o.name = name;
    o.diameter_m = diameter;
    o.mass_kg = mass;
    o.leak = gripkit::LeakModel{gripkit::LeakKind::Linear, c0, gap0, 2.0};
    o.a_seal_m2 = a_seal;
    o.mu = mu;
    return o;
}

inline std::vector<gripkit::ObjectSpec> objects() {
    return {
        object("egg", 0.0436, 0.06, 1e-6, 8.0e-4, 1.5e-3, 0.5),
        object("tomato", 0.060, 0.15, 1e-6, 8.0e-4, 2.0e-3, 0.5),
        object("lemon", 0.055, 0.12, 1e-6, 1.2e-3, 3.0e-3, 0.5),
        object("brick", 0.20, 3.3, 1e-6, 5.0e-4, 5.0265e-3, 0.6),
        object("metal", 0.15, 2.0, 1e-6, 5.0e-4, 5.0265e-3, 0.4),
        object("mug", 0.09, 0.35, 1e-6, 5.0e-4, 2.5e-3, 0.5),
    };
}

// Flow plateaus recorded at the 40% bench power; holding forces at full power.
// The two delicate objects carry nominal 45 N values standing in for a force
// known only as an upper bound.
inline std::vector<gripkit::Observation> observations() {
    using gripkit::Observation;
    const double m3h = 1.0 / 3600.0;
    return {
        Observation{"egg", 0.4, {}, 47.9 * m3h},
        Observation{"tomato", 0.4, {}, 47.9 * m3h},
        Observation{"lemon", 0.4, {}, 27.5 * m3h},
        Observation{"brick", 0.4, {}, 7.4 * m3h},
        Observation{"metal", 0.4, {}, 7.4 * m3h},
        Observation{"mug", 0.4, {}, 7.4 * m3h},
        Observation{"brick", 1.0, 127.1, {}},
        Observation{"metal", 1.0, 127.1, {}},
        Observation{"egg", 1.0, 45.0, {}},
        Observation{"tomato", 1.0, 45.0, {}},
    };
}

inline gripkit::CalibrationSetup setup() {
    gripkit::CalibrationSetup s;
    s.geom = lip();
    s.blower = blower();
    s.grid = gripkit::make_grid(36);
    s.objects = objects();
    s.c0_groups = {{"egg", "tomato"}, {"brick", "metal", "mug"}};
    return s;
}

}  // namespace scenario
