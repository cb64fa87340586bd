#include "qd/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

namespace qd {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct Entry {
    std::string key;
    std::string value;
    int line;
};

// Splits the document into key/value entries.  Entries are separated by
// newlines or by top-level commas (commas inside [...] belong to arrays).
std::vector<Entry> tokenize(const std::string& text) {
    std::vector<Entry> entries;
    std::string current;
    int line = 1, entry_line = 1;
    int depth = 0;
    bool fresh = true;
    auto flush = [&] {
        std::string piece = trim(current);
        current.clear();
        if (piece.empty()) return;
        if (piece.front() == '{') piece = trim(piece.substr(1));
        if (!piece.empty() && piece.back() == '}')
            piece = trim(piece.substr(0, piece.size() - 1));
        if (piece.empty()) return;
        const std::size_t colon = piece.find(':');
        if (colon == std::string::npos)
            throw ConfigError("line " + std::to_string(entry_line) +
                              ": expected 'key: value', got '" + piece + "'");
        entries.push_back({trim(piece.substr(0, colon)),
                           trim(piece.substr(colon + 1)), entry_line});
    };
    for (char ch : text) {
        if (ch == '#') fresh = false; // comment until end of line
        if (ch == '\n') {
            flush();
            ++line;
            entry_line = line;
            fresh = true;
            continue;
        }
        if (!fresh) continue;
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            flush();
            continue;
        }
        current += ch;
    }
    flush();
    return entries;
}

double parse_number(const Entry& e, const std::string& token) {
    const std::string t = trim(token);
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(e.line) + ": key " + e.key +
                          ": expected a number, got '" + t + "'");
    }
}

std::vector<std::string> parse_array(const Entry& e) {
    std::string v = trim(e.value);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw ConfigError("line " + std::to_string(e.line) + ": key " + e.key +
                          ": expected [a, b, ...], got '" + v + "'");
    v = v.substr(1, v.size() - 2);
    std::vector<std::string> items;
    std::string item;
    std::stringstream ss(v);
    while (std::getline(ss, item, ',')) items.push_back(trim(item));
    return items;
}

Axis parse_axis(const Entry& e) {
    const std::vector<std::string> items = parse_array(e);
    if (items.size() != 4)
        throw ConfigError("line " + std::to_string(e.line) + ": key " + e.key +
                          ": an axis is [name, start, stop, count]");
    Axis a;
    a.name = items[0];
    a.start = parse_number(e, items[1]);
    a.stop = parse_number(e, items[2]);
    const double count = parse_number(e, items[3]);
    if (count != std::floor(count) || count < 2 || count > 1e7)
        throw ConfigError("line " + std::to_string(e.line) + ": key " + e.key +
                          ": count must be an integer >= 2");
    a.count = static_cast<int>(count);
    return a;
}

SweepKind parse_kind(const Entry& e) {
    const std::string v = trim(e.value);
    if (v == "time_series") return SweepKind::time_series;
    if (v == "lambda_sweep") return SweepKind::lambda_sweep;
    if (v == "grid2d") return SweepKind::grid2d;
    throw ConfigError("line " + std::to_string(e.line) +
                      ": key kind: expected time_series | lambda_sweep | grid2d, got '" +
                      v + "'");
}

TimeMode parse_time_mode_string(const std::string& text, const std::string& ctx) {
    const std::string v = trim(text);
    TimeMode tm;
    if (v == "asymptotic" || v == "asymptotic_average") {
        tm.kind = TimeModeKind::asymptotic_average;
        return tm;
    }
    if (v.rfind("at:", 0) == 0) {
        tm.kind = TimeModeKind::at_time;
        try {
            tm.t = std::stod(v.substr(3));
        } catch (const std::exception&) {
            throw ConfigError(ctx + ": bad at:T time in '" + v + "'");
        }
        if (!(tm.t >= 0.0)) throw ConfigError(ctx + ": at:T needs T >= 0");
        return tm;
    }
    if (v.rfind("window:", 0) == 0) {
        tm.kind = TimeModeKind::window_average;
        std::stringstream ss(v.substr(7));
        std::string part;
        std::vector<double> nums;
        while (std::getline(ss, part, ','))
            try {
                nums.push_back(std::stod(trim(part)));
            } catch (const std::exception&) {
                throw ConfigError(ctx + ": bad window:T,D,S in '" + v + "'");
            }
        if (nums.size() != 3)
            throw ConfigError(ctx + ": window mode needs window:T,D,S");
        tm.window_start = nums[0];
        tm.window_width = nums[1];
        tm.window_samples = static_cast<int>(nums[2]);
        if (!(tm.window_start >= 0) || !(tm.window_width > 0) ||
            tm.window_samples < 2)
            throw ConfigError(ctx + ": window mode needs T >= 0, D > 0, S >= 2");
        return tm;
    }
    throw ConfigError(ctx + ": expected asymptotic | at:T | window:T,D,S, got '" +
                      v + "'");
}

const char* kind_name(SweepKind k) {
    switch (k) {
        case SweepKind::time_series: return "time_series";
        case SweepKind::lambda_sweep: return "lambda_sweep";
        case SweepKind::grid2d: return "grid2d";
    }
    return "?";
}

} // namespace

TimeMode parse_time_mode(const std::string& text) {
    return parse_time_mode_string(text, "time mode");
}

SweepSpec parse_config(const std::string& text,
                       std::optional<SweepKind> forced_kind) {
    SweepSpec spec;
    spec.base = QuenchParams{}; // J0=J1=h0=h1=1, gamma=1, N=1000, kT=0
    spec.observables = {Observable::discord};
    if (forced_kind) spec.kind = *forced_kind;

    bool saw_kind = false, saw_axis1 = false, saw_time_mode = false;
    for (const Entry& e : tokenize(text)) {
        const std::string ctx = "line " + std::to_string(e.line) + ": key " + e.key;
        if (e.key == "kind") {
            const SweepKind k = parse_kind(e);
            if (forced_kind && k != *forced_kind)
                throw ConfigError(ctx + ": config kind '" + kind_name(k) +
                                  "' conflicts with the subcommand's '" +
                                  kind_name(*forced_kind) + "'");
            spec.kind = k;
            saw_kind = true;
        } else if (e.key == "J0") spec.base.J0 = parse_number(e, e.value);
        else if (e.key == "J1") spec.base.J1 = parse_number(e, e.value);
        else if (e.key == "h0") spec.base.h0 = parse_number(e, e.value);
        else if (e.key == "h1") spec.base.h1 = parse_number(e, e.value);
        else if (e.key == "gamma") spec.base.gamma = parse_number(e, e.value);
        else if (e.key == "kT") spec.base.kT = parse_number(e, e.value);
        else if (e.key == "N" || e.key == "n_sites") {
            const double n = parse_number(e, e.value);
            if (n != std::floor(n))
                throw ConfigError(ctx + ": chain length must be an integer");
            spec.base.n_sites = static_cast<int>(n);
        } else if (e.key == "axis1") {
            spec.axis1 = parse_axis(e);
            saw_axis1 = true;
        } else if (e.key == "axis2") {
            spec.axis2 = parse_axis(e);
        } else if (e.key == "time_mode") {
            spec.time_mode = parse_time_mode_string(e.value, ctx);
            saw_time_mode = true;
        } else if (e.key == "observables") {
            spec.observables.clear();
            for (const std::string& name : parse_array(e)) {
                const auto o = observable_from_name(name);
                if (!o)
                    throw ConfigError(ctx + ": unknown observable '" + name + "'");
                spec.observables.push_back(*o);
            }
            if (spec.observables.empty())
                throw ConfigError(ctx + ": at least one observable is required");
        } else {
            throw ConfigError(ctx + ": unknown key");
        }
    }

    if (!saw_kind && !forced_kind)
        throw ConfigError("missing key: kind (time_series | lambda_sweep | grid2d)");
    if (!saw_axis1)
        throw ConfigError("missing key: axis1 ([name, start, stop, count])");

    // a t axis implies at-time evaluation when the mode was left default
    const bool has_t_axis =
        spec.axis1.name == "t" || (spec.axis2 && spec.axis2->name == "t");
    if (has_t_axis && !saw_time_mode)
        spec.time_mode.kind = TimeModeKind::at_time;

    try {
        spec.validate();
    } catch (const std::exception& err) {
        throw ConfigError(std::string("invalid configuration: ") + err.what());
    }
    return spec;
}

} // namespace qd
