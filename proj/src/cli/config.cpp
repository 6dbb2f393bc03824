#include "kdvres/cli/cli.hpp"

#include "kdvres/taulab/taulab.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <sstream>

namespace kdvres::cli {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        int n = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ConfigError(fmt::format("{}: expected an integer, got '{}'", key, v));
    }
}

std::string rational_key(const Rational& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "d" + q.get_den().get_str();
    return s;
}

}  // namespace

std::string format_name(Format f) {
    switch (f) {
        case Format::Json: return "json";
        case Format::Text: return "text";
        case Format::Csv: return "csv";
    }
    return "text";
}

Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "text") return Format::Text;
    if (s == "csv") return Format::Csv;
    throw ConfigError("unknown format '" + s + "' (json, text or csv)");
}

std::string Config::to_text() const {
    std::string taulist;
    for (std::size_t i = 0; i < taus.size(); ++i) taulist += (i ? "; " : "") + taus[i];
    return fmt::format(
        "dmax = {}\nqorder = {}\ntorder = {}\nzorder = {}\ntimes = {}\ntaus = {}\ncache = {}\nformat = {}\n"
        "c_flow = {}\nc0 = {}\n",
        dmax, qorder, torder, zorder, times, taulist, cache_dir, format_name(format), to_display_string(c_flow),
        c0 ? to_display_string(*c0) : "calibrate");
}

Config Config::from_text(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(fmt::format("config line {}: expected key = value", lineno));
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        try {
            if (key == "dmax") c.dmax = parse_int(key, value);
            else if (key == "qorder") c.qorder = parse_int(key, value);
            else if (key == "torder") c.torder = parse_int(key, value);
            else if (key == "zorder") c.zorder = parse_int(key, value);
            else if (key == "times") c.times = parse_int(key, value);
            else if (key == "cache") c.cache_dir = value;
            else if (key == "format") c.format = parse_format(value);
            else if (key == "c_flow") c.c_flow = parse_rational(value);
            else if (key == "c0") {
                if (value == "calibrate") c.c0.reset();
                else c.c0 = parse_rational(value);
            } else if (key == "taus") {
                c.taus.clear();
                std::istringstream ts(value);
                std::string t;
                while (std::getline(ts, t, ';'))
                    if (!trim(t).empty()) c.taus.push_back(trim(t));
            } else {
                throw ConfigError(fmt::format("config line {}: unknown key '{}'", lineno, key));
            }
        } catch (const ParseError& e) {
            throw ConfigError(fmt::format("config line {}: {}", lineno, e.what()));
        }
    }
    c.validate();
    return c;
}

void Config::validate() const {
    if (dmax < 1 || qorder < 1 || torder < 1 || zorder < 1 || times < 1)
        throw ConfigError("all cutoffs must be positive");
    if (torder < 4) throw ConfigError("torder must be at least 4");
    if (2 * times - 1 < zorder - 1) throw ConfigError("times too small for zorder (need 2 times - 1 >= zorder - 1)");
    if (sgn(c_flow) == 0) throw ConfigError("c_flow must be nonzero");
    for (const auto& t : taus) {
        try {
            taulab::parse_tau(t);
        } catch (const ParseError& e) {
            throw ConfigError(e.what());
        }
    }
}

std::string cache_key(const std::string& module, const std::string& operation, const std::vector<std::string>& cutoffs,
                      const Rational& c_flow, const std::optional<Rational>& c0) {
    std::string key = module + "." + operation;
    for (const auto& c : cutoffs) key += "." + c;
    key += ".cflow" + rational_key(c_flow);
    key += ".c0" + (c0 ? rational_key(*c0) : std::string("cal"));
    return key + ".json";
}

}  // namespace kdvres::cli
