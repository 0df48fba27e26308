#include "d2dsec/scenario_io.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "d2dsec/errors.hpp"

namespace d2dsec {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(s.substr(pos));
            return parts;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + sep.size();
    }
}

double parse_double(const std::string& token, int line, const std::string& field) {
    const std::string t = trim(token);
    if (t.empty()) throw parse_error("expected a number", line, field);
    char* end = nullptr;
    const double value = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) throw parse_error("malformed number '" + t + "'", line, field);
    return value;
}

Point parse_point(const std::string& token, int line, const std::string& field) {
    const auto parts = split(token, ",");
    if (parts.size() != 2) throw parse_error("expected 'x, y'", line, field);
    return {parse_double(parts[0], line, field), parse_double(parts[1], line, field)};
}

std::vector<Point> parse_points(const std::string& token, int line, const std::string& field) {
    std::vector<Point> points;
    if (trim(token).empty()) return points;
    for (const std::string& part : split(token, ";")) points.push_back(parse_point(part, line, field));
    return points;
}

std::vector<D2dPair> parse_pairs(const std::string& token, int line, const std::string& field) {
    std::vector<D2dPair> pairs;
    if (trim(token).empty()) return pairs;
    for (const std::string& part : split(token, ";")) {
        const auto ends = split(part, "->");
        if (ends.size() != 2) throw parse_error("expected 'tx_x, tx_y -> rx_x, rx_y'", line, field);
        pairs.push_back({parse_point(ends[0], line, field), parse_point(ends[1], line, field)});
    }
    return pairs;
}

struct ParseState {
    Scenario scenario;
    bool have_bs = false;
    bool have_eve = false;
    bool have_cues = false;
    std::optional<double> r_s_mbps;
    std::optional<double> r_t_mbps;
};

void assign(ParseState& st, const std::string& section, const std::string& key, const std::string& value,
            int line) {
    if (section == "topology") {
        if (key == "base_station") {
            st.scenario.topology.base_station = parse_point(value, line, key);
            st.have_bs = true;
        } else if (key == "eavesdropper") {
            st.scenario.topology.eavesdropper = parse_point(value, line, key);
            st.have_eve = true;
        } else if (key == "cues") {
            st.scenario.topology.cues = parse_points(value, line, key);
            st.have_cues = true;
        } else if (key == "d2d_pairs") {
            st.scenario.topology.d2d_pairs = parse_pairs(value, line, key);
        } else {
            throw parse_error("unknown topology field", line, key);
        }
        return;
    }
    if (section == "radio") {
        RadioParams& radio = st.scenario.radio;
        if (key == "p_cue_dbm") {
            radio.p_cue_dbm = parse_double(value, line, key);
        } else if (key == "p_d2d_dbm") {
            radio.p_d2d_dbm = parse_double(value, line, key);
        } else if (key == "noise_psd_dbm_hz") {
            radio.noise_psd_dbm_hz = parse_double(value, line, key);
        } else if (key == "bandwidth_mhz") {
            radio.bandwidth_mhz = parse_double(value, line, key);
        } else if (key == "alpha") {
            radio.alpha = parse_double(value, line, key);
        } else {
            throw parse_error("unknown radio field", line, key);
        }
        return;
    }
    if (section == "scheme") {
        SchemeConfig& scheme = st.scenario.scheme;
        if (key == "p") {
            scheme.p = parse_double(value, line, key);
        } else if (key == "beta") {
            scheme.beta = parse_double(value, line, key);
        } else if (key == "r_s") {
            st.r_s_mbps = parse_double(value, line, key);
        } else if (key == "r_t") {
            st.r_t_mbps = parse_double(value, line, key);
        } else if (key == "w_c") {
            scheme.w_c = parse_double(value, line, key);
        } else if (key == "w_d") {
            scheme.w_d = parse_double(value, line, key);
        } else {
            throw parse_error("unknown scheme field", line, key);
        }
        return;
    }
    throw parse_error("unknown section '" + section + "'", line, key);
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    ParseState st;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw parse_error("unterminated section header", line_no, "");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "topology" && section != "radio" && section != "scheme") {
                throw parse_error("unknown section '" + section + "'", line_no, "");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw parse_error("expected 'key = value'", line_no, "");
        if (section.empty()) throw parse_error("field outside any section", line_no, trim(line.substr(0, eq)));
        assign(st, section, trim(line.substr(0, eq)), line.substr(eq + 1), line_no);
    }
    if (!st.have_bs) throw parse_error("missing required field", 0, "base_station");
    if (!st.have_eve) throw parse_error("missing required field", 0, "eavesdropper");
    if (!st.have_cues) throw parse_error("missing required field", 0, "cues");
    if (st.r_s_mbps) st.scenario.scheme.r_s = rate_normalize(*st.r_s_mbps, st.scenario.radio);
    if (st.r_t_mbps) st.scenario.scheme.r_t = rate_normalize(*st.r_t_mbps, st.scenario.radio);
    return st.scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open scenario file '" + path + "'", 0, "");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

void apply_override(Scenario& scenario, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw parse_error("override needs 'section.key=value'", 0, assignment);
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = assignment.substr(eq + 1);
    const auto dot = path.find('.');
    if (dot == std::string::npos) throw parse_error("override needs 'section.key=value'", 0, path);

    ParseState st;
    st.scenario = scenario;
    assign(st, path.substr(0, dot), path.substr(dot + 1), value, 0);
    if (st.r_s_mbps) st.scenario.scheme.r_s = rate_normalize(*st.r_s_mbps, st.scenario.radio);
    if (st.r_t_mbps) st.scenario.scheme.r_t = rate_normalize(*st.r_t_mbps, st.scenario.radio);
    scenario = st.scenario;
}

}  // namespace d2dsec
