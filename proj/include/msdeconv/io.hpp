#pragma once

// File formats: CSV reports (header row, '.' decimals, leading '#' comment
// lines carrying the resolved configuration), SVG monotonicity maps with a
// deterministic layout, and the key-value run configuration format.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "simulate.hpp"

namespace msdeconv {

// fixed-precision, locale-independent float formatting
inline std::string fmt(double v, int precision = 10) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

// ---------------------------------------------------------------------------
// Run configuration: [section] blocks of key = value lines
// ---------------------------------------------------------------------------

class RunConfig {
public:
    using Section = std::map<std::string, std::string>;

    static RunConfig parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }

    static RunConfig parse(const std::string& text) {
        RunConfig cfg;
        std::istringstream in(text);
        std::string line, section;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
                section = trim(line.substr(1, line.size() - 2));
                cfg.sections_[section];
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
            cfg.sections_[section][key] = value;
        }
        return cfg;
    }

    // canonical text form; parse(serialize()) == *this
    std::string serialize() const {
        std::ostringstream out;
        for (const auto& [name, sec] : sections_) {
            if (!name.empty()) out << "[" << name << "]\n";
            for (const auto& [k, v] : sec) out << k << " = " << v << "\n";
        }
        return out.str();
    }

    bool has(const std::string& section, const std::string& key) const {
        auto s = sections_.find(section);
        return s != sections_.end() && s->second.count(key) > 0;
    }

    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback = "") const {
        auto s = sections_.find(section);
        if (s == sections_.end()) return fallback;
        auto it = s->second.find(key);
        return it == s->second.end() ? fallback : it->second;
    }

    double get_double(const std::string& section, const std::string& key, double fallback) const {
        if (!has(section, key)) return fallback;
        double v;
        if (!detail::parse_double(get(section, key), v))
            throw ConfigError("config: " + section + "." + key + " is not a number");
        return v;
    }

    long get_long(const std::string& section, const std::string& key, long fallback) const {
        return static_cast<long>(get_double(section, key, static_cast<double>(fallback)));
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        if (!has(section, key)) return fallback;
        const std::string v = get(section, key);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw ConfigError("config: " + section + "." + key + " is not a boolean");
    }

    std::vector<double> get_doubles(const std::string& section, const std::string& key) const {
        std::vector<double> out;
        std::istringstream in(get(section, key));
        std::string tok;
        while (in >> tok) {
            double v;
            if (!detail::parse_double(tok, v))
                throw ConfigError("config: " + section + "." + key + " has non-numeric entry '" + tok + "'");
            out.push_back(v);
        }
        return out;
    }

    void set(const std::string& section, const std::string& key, const std::string& value) {
        sections_[section][key] = value;
    }

    bool operator==(const RunConfig& o) const { return sections_ == o.sections_; }

private:
    static std::string trim(const std::string& s) {
        std::size_t b = 0, e = s.size();
        while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
        return s.substr(b, e - b);
    }

    std::map<std::string, Section> sections_;
};

// ---------------------------------------------------------------------------
// CSV writers
// ---------------------------------------------------------------------------

inline void write_comment_header(std::ostream& out, std::uint64_t seed, const std::string& config) {
    out << "# seed = " << seed << "\n";
    std::istringstream in(config);
    std::string line;
    while (std::getline(in, line)) out << "# " << line << "\n";
}

inline void write_decisions_csv(std::ostream& out, const DecisionReport& rep,
                                const std::string& config = "") {
    write_comment_header(out, rep.seed, config);
    const int d = rep.rows.empty() ? 0 : rep.rows.front().triple.dim();
    for (int k = 1; k <= d; ++k) out << "t" << k << ",";
    for (int k = 1; k <= d; ++k) out << "s" << k << ",";
    out << "h,statistic,critical,decision\n";
    for (const auto& row : rep.rows) {
        for (int k = 0; k < d; ++k) out << fmt(row.triple.t[k]) << ",";
        for (int k = 0; k < d; ++k) out << fmt(row.triple.s[k]) << ",";
        out << fmt(row.triple.h) << "," << fmt(row.statistic) << "," << fmt(row.critical) << ","
            << decision_name(row.decision) << "\n";
    }
}

inline void write_quantile_csv(std::ostream& out, const MultiscaleQuantile& q,
                               const std::string& config = "") {
    write_comment_header(out, q.seed, config);
    out << "alpha,kappa,replications,seed,empirical_cdf_at_kappa\n";
    out << fmt(q.alpha) << "," << fmt(q.kappa) << "," << q.replications << "," << q.seed << ","
        << fmt(q.empirical_cdf_at_kappa) << "\n";
}

inline void write_modes_csv(std::ostream& out, const std::vector<ModeReport>& reports,
                            std::uint64_t seed, const std::string& config = "") {
    write_comment_header(out, seed, config);
    const int d = reports.empty() ? 0 : static_cast<int>(reports.front().candidate.size());
    for (int k = 1; k <= d; ++k) out << "x" << k << ",";
    out << "detected,triples,scales_meeting_threshold,reason\n";
    for (const auto& rep : reports) {
        for (int k = 0; k < d; ++k) out << fmt(rep.candidate[k]) << ",";
        out << (rep.detected ? "true" : "false") << "," << rep.triple_indices.size() << ",";
        for (std::size_t i = 0; i < rep.scales_meeting_threshold.size(); ++i)
            out << (i ? ";" : "") << fmt(rep.scales_meeting_threshold[i]);
        out << "," << rep.reason << "\n";
    }
}

inline void write_arrows_csv(std::ostream& out, const ArrowMap& map, const std::string& config = "") {
    write_comment_header(out, map.seed, config);
    const int d = map.box.dim();
    for (int k = 1; k <= d; ++k) out << "t" << k << ",";
    for (int k = 1; k <= d; ++k) out << "s" << k << ",";
    out << "h,statistic,critical,decision\n";
    for (const auto& a : map.arrows) {
        for (int k = 0; k < d; ++k) out << fmt(a.location[k]) << ",";
        for (int k = 0; k < d; ++k) out << fmt(a.direction[k]) << ",";
        out << fmt(a.h) << "," << fmt(a.statistic) << "," << fmt(a.critical) << ",reject_incr\n";
    }
}

inline void write_table_csv(std::ostream& out, const TableResult& tr, const std::string& config = "") {
    write_comment_header(out, tr.seed, config);
    out << "table,row,estimate_pct,se_pct,reps,seed,wall_seconds\n";
    for (const auto& row : tr.rows)
        out << tr.table << "," << row.label << "," << fmt(row.estimate, 6) << "," << fmt(row.se, 4)
            << "," << tr.reps << "," << tr.seed << "," << fmt(tr.wall_seconds, 4) << "\n";
}

// ---------------------------------------------------------------------------
// SVG monotonicity map (deterministic layout for golden-file comparison)
// ---------------------------------------------------------------------------

inline void write_map_svg(std::ostream& out, const ArrowMap& map) {
    if (map.box.dim() != 2) throw ConfigError("svg map: only bivariate maps are supported");
    const double margin = 0.8;
    const double x0 = map.box.lo[0] - margin, x1 = map.box.hi[0] + margin;
    const double y0 = map.box.lo[1] - margin, y1 = map.box.hi[1] + margin;
    const double width = 640.0;
    const double scale = width / (x1 - x0);
    const double height = (y1 - y0) * scale;
    auto px = [&](double x) { return (x - x0) * scale; };
    auto py = [&](double y) { return height - (y - y0) * scale; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width, 6) << "\" height=\""
        << fmt(height, 6) << "\" viewBox=\"0 0 " << fmt(width, 6) << " " << fmt(height, 6) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes with unit ticks
    out << "<g stroke=\"#888\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << fmt(px(x0), 6) << "\" y1=\"" << fmt(py(0), 6) << "\" x2=\"" << fmt(px(x1), 6)
        << "\" y2=\"" << fmt(py(0), 6) << "\"/>\n";
    out << "<line x1=\"" << fmt(px(0), 6) << "\" y1=\"" << fmt(py(y0), 6) << "\" x2=\"" << fmt(px(0), 6)
        << "\" y2=\"" << fmt(py(y1), 6) << "\"/>\n";
    for (int k = static_cast<int>(std::ceil(x0)); k <= static_cast<int>(std::floor(x1)); ++k) {
        out << "<line x1=\"" << fmt(px(k), 6) << "\" y1=\"" << fmt(py(0) - 4, 6) << "\" x2=\""
            << fmt(px(k), 6) << "\" y2=\"" << fmt(py(0) + 4, 6) << "\"/>\n";
    }
    for (int k = static_cast<int>(std::ceil(y0)); k <= static_cast<int>(std::floor(y1)); ++k) {
        out << "<line x1=\"" << fmt(px(0) - 4, 6) << "\" y1=\"" << fmt(py(k), 6) << "\" x2=\""
            << fmt(px(0) + 4, 6) << "\" y2=\"" << fmt(py(k), 6) << "\"/>\n";
    }
    out << "</g>\n";

    // one arrow per rejected increase-hypothesis, length 0.3 h
    out << "<g stroke=\"#003366\" stroke-width=\"2\" fill=\"#003366\">\n";
    for (const auto& a : map.arrows) {
        const double len = 0.3 * a.h;
        const double bx = a.location[0], by = a.location[1];
        const double ex = bx + len * a.direction[0], ey = by + len * a.direction[1];
        out << "<line x1=\"" << fmt(px(bx), 6) << "\" y1=\"" << fmt(py(by), 6) << "\" x2=\""
            << fmt(px(ex), 6) << "\" y2=\"" << fmt(py(ey), 6) << "\"/>\n";
        // arrow head
        const double hx = -a.direction[1], hy = a.direction[0];
        const double hw = 0.25 * len;
        const double tipx = ex + 0.5 * hw * a.direction[0] * 1.6;
        const double tipy = ey + 0.5 * hw * a.direction[1] * 1.6;
        out << "<polygon points=\"" << fmt(px(tipx), 6) << "," << fmt(py(tipy), 6) << " "
            << fmt(px(ex + hw * hx - 0.2 * hw * a.direction[0]), 6) << ","
            << fmt(py(ey + hw * hy - 0.2 * hw * a.direction[1]), 6) << " "
            << fmt(px(ex - hw * hx - 0.2 * hw * a.direction[0]), 6) << ","
            << fmt(py(ey - hw * hy - 0.2 * hw * a.direction[1]), 6) << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
}

}  // namespace msdeconv
