#include "gripkit/trace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "gripkit/errors.hpp"
#include "gripkit/units.hpp"

namespace gripkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= line.size(); ++k) {
        if (k == line.size() || line[k] == ',') {
            cells.push_back(trim(line.substr(start, k - start)));
            start = k + 1;
        }
    }
    return cells;
}

double parse_double(std::string_view cell, std::size_t row, std::string_view what) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("malformed " + std::string(what) + " value '" + std::string(cell) + "'",
                         row);
    return value;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

void validate(const TimeSeries& series) {
    if (series.t_s.size() != series.values.size())
        throw DomainError("time series: channel lengths differ");
    if (series.t_s.size() < 2)
        throw DomainError("time series: need at least two samples");
    for (std::size_t k = 1; k < series.t_s.size(); ++k)
        if (!(series.t_s[k] > series.t_s[k - 1]))
            throw DomainError("time series: time must be strictly increasing");
}

TimeSeries parse_trace(std::string_view csv_text, std::string_view channel) {
    TimeSeries series;
    std::size_t row = 0;
    std::size_t value_column = 1;
    bool header_seen = false;
    bool convert_m3h = false;

    std::size_t line_start = 0;
    while (line_start <= csv_text.size()) {
        const std::size_t line_end = csv_text.find('\n', line_start);
        std::string_view line =
            csv_text.substr(line_start, line_end == std::string_view::npos
                                            ? std::string_view::npos
                                            : line_end - line_start);
        line_start = line_end == std::string_view::npos ? csv_text.size() + 1 : line_end + 1;
        if (ends_with(line, "\r")) line.remove_suffix(1);
        ++row;
        if (trim(line).empty()) continue;

        const std::vector<std::string_view> cells = split_csv(line);
        if (!header_seen) {
            if (cells.size() < 2)
                throw ParseError("trace header needs a time column and a value column", row);
            if (!channel.empty()) {
                const auto it = std::find(cells.begin() + 1, cells.end(), channel);
                if (it == cells.end())
                    throw ParseError("column '" + std::string(channel) + "' not found in header",
                                     row);
                value_column = static_cast<std::size_t>(it - cells.begin());
            }
            series.label = std::string(cells[value_column]);
            if (ends_with(series.label, "_m3h")) {
                convert_m3h = true;
                series.label.replace(series.label.size() - 4, 4, "_m3s");
            }
            header_seen = true;
            continue;
        }

        if (cells.size() <= value_column)
            throw ParseError("row has fewer columns than the header", row);
        const double t = parse_double(cells[0], row, "time");
        double v = parse_double(cells[value_column], row, "channel");
        if (convert_m3h) v = units::m3h_to_m3s(v);
        if (!series.t_s.empty()) {
            if (t == series.t_s.back())
                throw ParseError("duplicated timestamp " + std::to_string(t), row);
            if (t < series.t_s.back())
                throw ParseError("non-monotonic time", row);
        }
        series.t_s.push_back(t);
        series.values.push_back(v);
    }

    if (!header_seen) throw ParseError("empty trace file");
    if (series.t_s.size() < 2) throw ParseError("trace needs at least two data rows");
    return series;
}

std::string serialize_trace(const TimeSeries& series) {
    validate(series);
    std::ostringstream out;
    out.precision(17);
    out << "t_s," << (series.label.empty() ? "value" : series.label) << "\n";
    for (std::size_t k = 0; k < series.t_s.size(); ++k)
        out << series.t_s[k] << "," << series.values[k] << "\n";
    return out.str();
}

MhfExtract extract_mhf(const TimeSeries& force, double drop_fraction) {
    validate(force);
    if (force.t_s.size() < 3)
        throw DomainError("detachment extraction: need at least three samples");
    if (!(drop_fraction > 0.0) || !(drop_fraction < 1.0))
        throw DomainError("detachment extraction: drop fraction must lie in (0, 1)");

    double running_max = force.values.front();
    double best_drop = 0.0;
    std::size_t best_index = 0;
    double best_peak = 0.0;
    for (std::size_t k = 1; k < force.values.size(); ++k) {
        const double drop = force.values[k - 1] - force.values[k];
        if (running_max > 0.0 && drop > drop_fraction * running_max && drop > best_drop) {
            best_drop = drop;
            best_index = k;
            best_peak = running_max;
        }
        running_max = std::max(running_max, force.values[k]);
    }
    if (best_index == 0) throw DomainError("no detachment detected");
    return MhfExtract{best_peak, force.t_s[best_index]};
}

PlateauExtract extract_plateau(const TimeSeries& flow, double window_s) {
    validate(flow);
    const double span = flow.t_s.back() - flow.t_s.front();
    if (!(window_s > 0.0)) throw DomainError("plateau extraction: window must be positive");
    if (!(window_s < span))
        throw DomainError("plateau extraction: window must be shorter than the series span");

    const double cutoff = flow.t_s.back() - window_s;
    std::vector<double> tail;
    for (std::size_t k = 0; k < flow.t_s.size(); ++k)
        if (flow.t_s[k] >= cutoff) tail.push_back(flow.values[k]);

    std::sort(tail.begin(), tail.end());
    const std::size_t n = tail.size();
    const double median =
        n % 2 == 1 ? tail[n / 2] : 0.5 * (tail[n / 2 - 1] + tail[n / 2]);
    const double spread = tail.back() - tail.front();
    const bool stable = spread == 0.0 || spread < 0.05 * std::abs(median);
    return PlateauExtract{median, stable};
}

}  // namespace gripkit
