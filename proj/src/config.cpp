#include "gripkit/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
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

double to_double(std::string_view cell, std::size_t row, std::string_view what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw ParseError("malformed " + std::string(what) + " '" + std::string(cell) + "'", row);
    return value;
}

int to_int(std::string_view cell, std::size_t row, std::string_view what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw ParseError("malformed " + std::string(what) + " '" + std::string(cell) + "'", row);
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= line.size(); ++k) {
        if (k == line.size() || line[k] == sep) {
            cells.push_back(trim(line.substr(start, k - start)));
            start = k + 1;
        }
    }
    return cells;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

template <typename LineFn>
void for_each_line(std::string_view text, LineFn&& fn) {
    std::size_t row = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        std::string_view line = text.substr(
            start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++row;
        fn(line, row);
    }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig config;
    std::set<std::string, std::less<>> seen;

    for_each_line(text, [&](std::string_view raw, std::size_t row) {
        std::string_view line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) return;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected 'key = value'", row);
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ParseError("expected 'key = value'", row);
        if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", row);

        if (key == "r_m") config.geometry.inner_radius_m = to_double(value, row, key);
        else if (key == "R_m") config.geometry.outer_radius_m = to_double(value, row, key);
        else if (key == "alpha_rad") config.geometry.cone_angle_rad = to_double(value, row, key);
        else if (key == "b_m") config.geometry.thickness_m = to_double(value, row, key);
        else if (key == "E_pa") config.geometry.elastic_modulus_pa = to_double(value, row, key);
        else if (key == "n_segments") config.grid = make_grid(to_int(value, row, key));
        else if (key == "rho_kgm3") config.env.air_density_kgm3 = to_double(value, row, key);
        else if (key == "p_air_pa") config.env.ambient_pressure_pa = to_double(value, row, key);
        else if (key == "g_ms2") config.env.gravity_ms2 = to_double(value, row, key);
        else if (key == "p_stall_max_pa") config.blower.stall_pressure_max_pa = to_double(value, row, key);
        else if (key == "q_free_max_m3s") config.blower.free_flow_max_m3s = to_double(value, row, key);
        else if (key == "leak_kind") config.leak.kind = leak_kind_from_string(std::string(value));
        else if (key == "c0") config.leak.base_conductance = to_double(value, row, key);
        else if (key == "gap0_m") config.leak.initial_gap_m = to_double(value, row, key);
        else if (key == "closure_exponent") config.leak.closure_exponent = to_double(value, row, key);
        else if (key == "flow_mode") config.flow_mode = flow_mode_from_string(std::string(value));
        else if (key == "interpretation") config.interpretation = interpretation_from_string(std::string(value));
        else if (key == "gripper_mass_kg") config.gripper_mass_kg = to_double(value, row, key);
        else if (key == "aperture_m") {
            config.aperture_m = to_double(value, row, key);
            config.aperture_assumed = false;
        } else {
            throw ParseError("unknown key '" + key + "'", row);
        }
    });

    validate(config.geometry);
    validate(config.env);
    validate(config.blower);
    validate(config.leak);
    if (!(config.gripper_mass_kg > 0.0))
        throw DomainError("config: gripper_mass_kg must be positive");
    if (!(config.aperture_m > 0.0))
        throw DomainError("config: aperture_m must be positive");
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_file(path));
}

std::vector<ObjectSpec> parse_objects_csv(std::string_view text) {
    static const std::vector<std::string_view> kHeader = {
        "name", "diameter_m", "mass_kg", "leak_kind", "c0", "gap0_m", "a_seal_m2", "mu"};

    std::vector<ObjectSpec> objects;
    bool header_seen = false;
    for_each_line(text, [&](std::string_view line, std::size_t row) {
        if (trim(line).empty()) return;
        const auto cells = split(line, ',');
        if (!header_seen) {
            if (cells.size() != kHeader.size())
                throw ParseError("objects header must be name,diameter_m,mass_kg,leak_kind,"
                                 "c0,gap0_m,a_seal_m2,mu", row);
            for (std::size_t k = 0; k < kHeader.size(); ++k)
                if (cells[k] != kHeader[k])
                    throw ParseError("unexpected objects column '" + std::string(cells[k]) + "'",
                                     row);
            header_seen = true;
            return;
        }
        if (cells.size() != kHeader.size())
            throw ParseError("objects row needs exactly 8 columns", row);
        ObjectSpec object;
        object.name = std::string(cells[0]);
        object.diameter_m = to_double(cells[1], row, "diameter_m");
        object.mass_kg = to_double(cells[2], row, "mass_kg");
        object.leak.kind = leak_kind_from_string(std::string(cells[3]));
        object.leak.base_conductance = to_double(cells[4], row, "c0");
        object.leak.initial_gap_m = to_double(cells[5], row, "gap0_m");
        object.a_seal_m2 = to_double(cells[6], row, "a_seal_m2");
        object.mu = to_double(cells[7], row, "mu");
        try {
            validate(object);
        } catch (const DomainError& error) {
            throw ParseError(error.what(), row);
        }
        objects.push_back(std::move(object));
    });
    if (!header_seen) throw ParseError("empty objects file");
    return objects;
}

std::vector<ObjectSpec> load_objects_csv(const std::filesystem::path& path) {
    return parse_objects_csv(read_file(path));
}

std::vector<Observation> parse_observations_csv(std::string_view text) {
    std::vector<Observation> observations;
    bool header_seen = false;
    bool flow_in_m3h = true;
    for_each_line(text, [&](std::string_view line, std::size_t row) {
        if (trim(line).empty()) return;
        const auto cells = split(line, ',');
        if (!header_seen) {
            if (cells.size() != 4 || cells[0] != "object" || cells[1] != "power" ||
                cells[2] != "mhf_n" || (cells[3] != "q_m3h" && cells[3] != "q_m3s"))
                throw ParseError("observations header must be object,power,mhf_n,q_m3h", row);
            flow_in_m3h = cells[3] == "q_m3h";
            header_seen = true;
            return;
        }
        if (cells.size() != 4)
            throw ParseError("observations row needs exactly 4 columns", row);
        Observation obs;
        obs.object = std::string(cells[0]);
        if (obs.object.empty()) throw ParseError("observation without object name", row);
        obs.power = to_double(cells[1], row, "power");
        if (!cells[2].empty()) obs.mhf_n = to_double(cells[2], row, "mhf_n");
        if (!cells[3].empty()) {
            const double q = to_double(cells[3], row, "flow");
            obs.q_m3s = flow_in_m3h ? units::m3h_to_m3s(q) : q;
        }
        if (!obs.mhf_n && !obs.q_m3s)
            throw ParseError("observation carries neither mhf_n nor flow", row);
        observations.push_back(std::move(obs));
    });
    if (!header_seen) throw ParseError("empty observations file");
    return observations;
}

std::vector<Observation> load_observations_csv(const std::filesystem::path& path) {
    return parse_observations_csv(read_file(path));
}

std::vector<std::vector<std::string>> parse_groups(std::string_view spec) {
    std::vector<std::vector<std::string>> groups;
    for (std::string_view group : split(spec, ';')) {
        if (trim(group).empty()) continue;
        std::vector<std::string> names;
        for (std::string_view name : split(group, ','))
            if (!name.empty()) names.emplace_back(name);
        if (!names.empty()) groups.push_back(std::move(names));
    }
    return groups;
}

}  // namespace gripkit
