#include "qd/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qd {

namespace {

const char* kind_name(SweepKind k) {
    switch (k) {
        case SweepKind::time_series: return "time_series";
        case SweepKind::lambda_sweep: return "lambda_sweep";
        case SweepKind::grid2d: return "grid2d";
    }
    return "?";
}

} // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

std::string csv_string(const SweepResult& result) {
    const SweepSpec& spec = result.spec;
    std::string out;
    out.reserve(64 * (result.n_points + 1));

    out += spec.axis1.name;
    if (spec.axis2) {
        out += ',';
        out += spec.axis2->name;
    }
    for (Observable o : spec.observables) {
        out += ',';
        out += observable_name(o);
    }
    out += ",reason\n";

    const std::size_t n2 = spec.axis2 ? spec.axis2->count : 1;
    for (std::size_t idx = 0; idx < result.n_points; ++idx) {
        const std::size_t i1 = idx / n2;
        const std::size_t i2 = idx % n2;
        out += format_number(spec.axis1.value(static_cast<int>(i1)));
        if (spec.axis2) {
            out += ',';
            out += format_number(spec.axis2->value(static_cast<int>(i2)));
        }
        const bool ok = result.reasons[idx].empty();
        for (std::size_t k = 0; k < spec.observables.size(); ++k) {
            out += ',';
            out += ok ? format_number(result.values[k][idx]) : std::string("NA");
        }
        out += ',';
        if (!ok) {
            // keep the reason a single CSV field
            std::string reason = result.reasons[idx];
            for (char& c : reason)
                if (c == ',' || c == '\n') c = ';';
            out += reason;
        }
        out += '\n';
    }
    return out;
}

std::string meta_string(const SweepResult& result) {
    const SweepSpec& spec = result.spec;
    nlohmann::ordered_json j;
    j["kind"] = kind_name(spec.kind);
    j["n_sites"] = spec.base.n_sites;
    j["gamma"] = spec.base.gamma;
    j["kT"] = spec.base.kT;
    j["base"] = {{"J0", spec.base.J0},
                 {"J1", spec.base.J1},
                 {"h0", spec.base.h0},
                 {"h1", spec.base.h1}};
    j["time_mode"] = spec.time_mode.to_string();
    auto axis_json = [](const Axis& a) {
        return nlohmann::ordered_json{
            {"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"count", a.count}};
    };
    j["axes"] = nlohmann::ordered_json::array();
    j["axes"].push_back(axis_json(spec.axis1));
    if (spec.axis2) j["axes"].push_back(axis_json(*spec.axis2));
    j["observables"] = nlohmann::ordered_json::array();
    for (Observable o : spec.observables) j["observables"].push_back(observable_name(o));
    j["version"] = result.version;
    j["points"] = result.n_points;
    j["na_count"] = result.na_count;
    j["max_trace_error"] = result.max_trace_error;
    j["max_projected_violation"] = result.max_projected_violation;
    j["wall_ms"] = result.wall_ms;
    return j.dump(2) + "\n";
}

void write_outputs(const SweepResult& result, const std::string& prefix) {
    const std::string csv_path = prefix + ".csv";
    const std::string meta_path = prefix + ".meta.json";
    {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + csv_path + " for writing");
        f << csv_string(result);
        if (!f) throw std::runtime_error("write failed for " + csv_path);
    }
    {
        std::ofstream f(meta_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + meta_path + " for writing");
        f << meta_string(result);
        if (!f) throw std::runtime_error("write failed for " + meta_path);
    }
}

} // namespace qd
