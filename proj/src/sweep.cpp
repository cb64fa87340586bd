#include "qd/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "qd/correlators.hpp"
#include "qd/version.hpp"
#include "qd/xstate.hpp"

namespace qd {

namespace {

const std::vector<std::string>& axis_names() {
    static const std::vector<std::string> names = {
        "J0", "J1", "h0", "h1", "gamma", "kT", "t",
        "lambda", "lambda1", "lambda0", "J", "h"};
    return names;
}

bool is_ratio_axis(const std::string& name) {
    return name == "lambda" || name == "lambda0" || name == "lambda1";
}

// Applies one axis value to the point's parameters (or its time).
void apply_axis(const std::string& name, double v, QuenchParams& p, double& t) {
    if (name == "J0") p.J0 = v;
    else if (name == "J1") p.J1 = v;
    else if (name == "h0") p.h0 = v;
    else if (name == "h1") p.h1 = v;
    else if (name == "gamma") p.gamma = v;
    else if (name == "kT") p.kT = v;
    else if (name == "t") t = v;
    else if (name == "lambda") { p.J0 = p.J1 = v * p.h0; }
    else if (name == "lambda1") { p.J1 = v * p.h1; }
    else if (name == "lambda0") { p.J0 = v * p.h0; }
    else if (name == "J") { p.J0 = p.J1 = v; }
    else if (name == "h") { p.h0 = p.h1 = v; }
    else throw std::invalid_argument("unknown axis parameter '" + name + "'");
}

// Plain axes first, ratio axes after, so lambda-type axes see final fields.
void apply_axes(const std::vector<std::pair<std::string, double>>& settings,
                QuenchParams& p, double& t) {
    for (const auto& [name, v] : settings)
        if (!is_ratio_axis(name)) apply_axis(name, v, p, t);
    for (const auto& [name, v] : settings)
        if (is_ratio_axis(name)) apply_axis(name, v, p, t);
}

void validate_axis(const Axis& a) {
    if (std::find(axis_names().begin(), axis_names().end(), a.name) ==
        axis_names().end())
        throw std::invalid_argument("axis parameter '" + a.name +
                                    "' is not a sweepable name");
    if (a.count < 2)
        throw std::invalid_argument("axis '" + a.name + "': count must be >= 2");
    if (!(a.start < a.stop))
        throw std::invalid_argument("axis '" + a.name + "': start must be < stop");
}

struct PointOutput {
    bool ok = false;
    std::string reason;
    double obs[6] = {0, 0, 0, 0, 0, 0}; // discord, concurrence, mz, xx, yy, zz
    double trace_error = 0.0;
    double projected = 0.0;
};

PointOutput evaluate_point(QuenchParams p, double t, const TimeMode& tm) {
    PointOutput out;
    try {
        p.validate();
    } catch (const std::exception& e) {
        out.reason = std::string("invalid-params: ") + e.what();
        return out;
    }
    const ModeGrid grid = build_mode_grid(p);
    PairCorrelators c;
    switch (tm.kind) {
        case TimeModeKind::at_time:
            c = nn_correlators(grid, p, t);
            break;
        case TimeModeKind::asymptotic_average:
            c = asymptotic_correlators(grid, p);
            break;
        case TimeModeKind::window_average:
            c = window_average_correlators(grid, p, tm.window_start,
                                           tm.window_width, tm.window_samples);
            break;
    }
    const double band = positivity_band(p.n_sites);
    TwoQubitXState rho;
    try {
        rho = assemble_rho(c, band);
    } catch (const PositivityError&) {
        out.reason = "positivity";
        return out;
    }
    out.obs[0] = geometric_discord_xstate(rho);
    out.obs[1] = concurrence(rho);
    out.obs[2] = c.mz;
    out.obs[3] = c.xx;
    out.obs[4] = c.yy;
    out.obs[5] = c.zz;
    for (double v : out.obs)
        if (!std::isfinite(v)) {
            out.reason = "non-finite";
            return out;
        }
    out.trace_error = std::abs(rho.trace() - 1.0);
    out.projected = rho.projected_violation;
    out.ok = true;
    return out;
}

int obs_index(Observable o) { return static_cast<int>(o); }

} // namespace

const char* observable_name(Observable o) {
    switch (o) {
        case Observable::discord: return "discord";
        case Observable::concurrence: return "concurrence";
        case Observable::mz: return "mz";
        case Observable::xx: return "xx";
        case Observable::yy: return "yy";
        case Observable::zz: return "zz";
    }
    return "?";
}

std::optional<Observable> observable_from_name(const std::string& name) {
    for (Observable o : {Observable::discord, Observable::concurrence,
                         Observable::mz, Observable::xx, Observable::yy,
                         Observable::zz})
        if (name == observable_name(o)) return o;
    return std::nullopt;
}

std::string TimeMode::to_string() const {
    switch (kind) {
        case TimeModeKind::at_time:
            return "at:" + std::to_string(t);
        case TimeModeKind::asymptotic_average:
            return "asymptotic";
        case TimeModeKind::window_average:
            return "window:" + std::to_string(window_start) + "," +
                   std::to_string(window_width) + "," +
                   std::to_string(window_samples);
    }
    return "?";
}

void SweepSpec::validate() const {
    base.validate();
    validate_axis(axis1);
    if (axis2) validate_axis(*axis2);
    if (kind == SweepKind::grid2d && !axis2)
        throw std::invalid_argument("grid2d needs axis2");
    if (kind != SweepKind::grid2d && axis2)
        throw std::invalid_argument("axis2 is only valid for grid2d");
    if (kind == SweepKind::time_series && axis1.name != "t")
        throw std::invalid_argument("time_series requires axis1 = t");
    const bool t1 = axis1.name == "t";
    const bool t2 = axis2 && axis2->name == "t";
    if (t1 && t2) throw std::invalid_argument("only one axis may be t");
    if ((t1 || t2) && time_mode.kind != TimeModeKind::at_time)
        throw std::invalid_argument(
            "a t axis requires at-time evaluation, not " + time_mode.to_string());
    if ((axis1.name == "lambda" || (axis2 && axis2->name == "lambda")) &&
        base.h0 != base.h1)
        throw std::invalid_argument("lambda axis requires h0 == h1 in the base");
    if (observables.empty())
        throw std::invalid_argument("at least one observable is required");
    if (time_mode.kind == TimeModeKind::window_average &&
        (!(time_mode.window_start >= 0.0) || !(time_mode.window_width > 0.0) ||
         time_mode.window_samples < 2))
        throw std::invalid_argument(
            "window mode needs start >= 0, width > 0, samples >= 2");
    if (time_mode.kind == TimeModeKind::at_time && !(time_mode.t >= 0.0))
        throw std::invalid_argument("at-time mode needs t >= 0");
    if (axis1.name == "t" && !(axis1.start >= 0.0))
        throw std::invalid_argument("axis t: times must be >= 0");
    if (t2 && !(axis2->start >= 0.0))
        throw std::invalid_argument("axis t: times must be >= 0");
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
    spec.validate();
    const auto t_begin = std::chrono::steady_clock::now();

    const std::size_t n1 = spec.axis1.count;
    const std::size_t n2 = spec.axis2 ? spec.axis2->count : 1;
    const std::size_t total = n1 * n2;

    SweepResult res;
    res.spec = spec;
    res.version = QD_VERSION;
    res.n_points = total;
    res.reasons.assign(total, std::string());
    res.values.assign(spec.observables.size(),
                      std::vector<double>(total,
                                          std::numeric_limits<double>::quiet_NaN()));

    std::vector<PointOutput> outputs(total);
    std::atomic<std::size_t> next{0};
    int workers = threads > 0 ? threads
                              : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, 64);

    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            const std::size_t i1 = idx / n2;
            const std::size_t i2 = idx % n2;
            QuenchParams p = spec.base;
            double t = spec.time_mode.t;
            std::vector<std::pair<std::string, double>> settings;
            settings.emplace_back(spec.axis1.name, spec.axis1.value(int(i1)));
            if (spec.axis2)
                settings.emplace_back(spec.axis2->name, spec.axis2->value(int(i2)));
            try {
                apply_axes(settings, p, t);
                outputs[idx] = evaluate_point(p, t, spec.time_mode);
            } catch (const std::exception& e) {
                outputs[idx].ok = false;
                outputs[idx].reason = e.what();
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t idx = 0; idx < total; ++idx) {
        const PointOutput& o = outputs[idx];
        if (!o.ok) {
            res.reasons[idx] = o.reason.empty() ? "error" : o.reason;
            ++res.na_count;
            continue;
        }
        for (std::size_t k = 0; k < spec.observables.size(); ++k)
            res.values[k][idx] = o.obs[obs_index(spec.observables[k])];
        res.max_trace_error = std::max(res.max_trace_error, o.trace_error);
        res.max_projected_violation =
            std::max(res.max_projected_violation, o.projected);
    }

    res.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t_begin)
                      .count();
    return res;
}

std::vector<double> lambda_curve(double gamma, double kT, double h,
                                 const std::vector<double>& lambda_grid,
                                 int n_sites) {
    if (!(h > 0.0)) throw std::invalid_argument("lambda_curve: h must be > 0");
    std::vector<double> out(lambda_grid.size());
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        QuenchParams p;
        p.gamma = gamma;
        p.kT = kT;
        p.h0 = p.h1 = h;
        p.J0 = p.J1 = lambda_grid[i] * h;
        p.n_sites = n_sites;
        const PointOutput o =
            evaluate_point(p, 0.0, TimeMode{TimeModeKind::asymptotic_average});
        out[i] = o.ok ? o.obs[0] : std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

} // namespace qd
