#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gripkit {

/// One channel of a recorded experiment trace. Time is strictly increasing.
struct TimeSeries {
    std::vector<double> t_s;
    std::vector<double> values;
    std::string label;
};

struct MhfExtract {
    double mhf_n = 0.0;
    double detach_time_s = 0.0;
};

struct PlateauExtract {
    double value = 0.0;
    bool stable = false;
};

void validate(const TimeSeries& series);

/// Parses a headered CSV trace. The first column is time in seconds; the value
/// channel is picked by header name, or defaults to the second column. A value
/// header carrying the _m3h suffix is converted to m3/s and relabeled _m3s.
/// Throws ParseError with the offending row for non-monotonic or duplicated
/// timestamps, malformed numbers, and missing columns.
TimeSeries parse_trace(std::string_view csv_text, std::string_view channel = {});

/// Canonical two-column CSV; round-trips bit-identically through parse_trace.
std::string serialize_trace(const TimeSeries& series);

/// Finds the detachment step: the largest single-step force drop exceeding
/// drop_fraction of the running maximum. Returns the maximum force attained
/// before that step and the time of the first post-drop sample.
/// Throws DomainError("no detachment detected") when no step qualifies.
MhfExtract extract_mhf(const TimeSeries& force, double drop_fraction = 0.5);

/// Median of the final window of the series, flagged stable when the window's
/// spread stays under 5% of the median. The window must be shorter than the
/// series span.
PlateauExtract extract_plateau(const TimeSeries& flow, double window_s);

}  // namespace gripkit
