#pragma once

namespace gripkit::units {

// Flow meters commonly report m3/h; all internal flow values are m3/s.
inline constexpr double m3h_to_m3s(double q_m3h) { return q_m3h / 3600.0; }
inline constexpr double m3s_to_m3h(double q_m3s) { return q_m3s * 3600.0; }

// Blower datasheets quote vacuum levels in mbar; internal pressures are Pa.
inline constexpr double mbar_to_pa(double p_mbar) { return p_mbar * 100.0; }
inline constexpr double pa_to_mbar(double p_pa) { return p_pa / 100.0; }

}  // namespace gripkit::units
