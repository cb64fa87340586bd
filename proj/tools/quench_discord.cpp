#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "qd/config.hpp"
#include "qd/correlators.hpp"
#include "qd/csv.hpp"
#include "qd/ed.hpp"
#include "qd/sweep.hpp"
#include "qd/version.hpp"
#include "qd/xstate.hpp"

namespace {

struct RunFlags {
    std::string config_path;
    std::string out_prefix;
    int threads = 0;
    int n_sites = 0;       // 0: keep the config's value
    std::string time_mode; // empty: keep the config's value
    double max_na_frac = 0.001;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_sweep_command(const RunFlags& flags, std::optional<qd::SweepKind> kind) {
    qd::SweepSpec spec;
    try {
        spec = qd::parse_config(read_file(flags.config_path), kind);
        if (flags.n_sites > 0) spec.base.n_sites = flags.n_sites;
        if (!flags.time_mode.empty())
            spec.time_mode = qd::parse_time_mode(flags.time_mode);
        spec.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    qd::SweepResult result;
    try {
        result = qd::run_sweep(spec, flags.threads);
        qd::write_outputs(result, flags.out_prefix);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    const double na_frac =
        result.n_points ? double(result.na_count) / double(result.n_points) : 0.0;
    std::cout << flags.out_prefix << ".csv: " << result.n_points << " points, "
              << result.na_count << " NA, " << result.wall_ms << " ms\n";
    if (na_frac > flags.max_na_frac) {
        std::cerr << "warning: NA fraction " << na_frac << " exceeds limit "
                  << flags.max_na_frac << "\n";
        return 2;
    }
    return 0;
}

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
    cmd->add_option("--config", flags.config_path, "sweep configuration file")
        ->required();
    cmd->add_option("--out", flags.out_prefix, "output prefix (.csv, .meta.json)")
        ->required();
    cmd->add_option("--threads", flags.threads,
                    "worker threads (0 = hardware; results are identical)");
    cmd->add_option("--n-sites", flags.n_sites, "override the chain length N");
    cmd->add_option("--time-mode", flags.time_mode,
                    "override: at:T | asymptotic | window:T,D,S");
    cmd->add_option("--max-na-frac", flags.max_na_frac,
                    "exit 2 when the NA fraction exceeds this (default 0.001)");
}

double analytic_discord(const qd::QuenchParams& p, double t) {
    const qd::ModeGrid grid = qd::build_mode_grid(p);
    const qd::PairCorrelators c = qd::nn_correlators(grid, p, t);
    return qd::geometric_discord_xstate(
        qd::assemble_rho(c, qd::positivity_band(p.n_sites)));
}

int oracle_check(double gamma, const std::string& quench, double kT, double h0,
                 double h1, const std::string& times_csv) {
    double J0 = 1.0, J1 = 2.0;
    if (std::sscanf(quench.c_str(), "%lf:%lf", &J0, &J1) != 2) {
        std::cerr << "error: --quench expects J0:J1, got '" << quench << "'\n";
        return 1;
    }
    std::vector<double> times;
    {
        std::stringstream ss(times_csv);
        std::string part;
        while (std::getline(ss, part, ',')) times.push_back(std::stod(part));
    }

    std::cout << "oracle-check: gamma=" << gamma << " quench " << J0 << "->" << J1
              << " h0=" << h0 << " h1=" << h1 << " kT=" << kT << "\n";
    std::cout << "  N    t      D_ED          D_analytic    |diff|        ED<sz>      2<Mz>\n";
    bool trend_ok = true;
    for (double t : times) {
        double prev = 0.0;
        bool first = true;
        for (int n : {4, 6, 8, 10}) {
            qd::QuenchParams p{J0, J1, h0, h1, gamma, n, kT};
            const qd::EDConfig cfg{p, t};
            const qd::TwoQubitXState ed = qd::ed_reduced_density(cfg);
            const double d_ed = qd::geometric_discord_xstate(ed);
            const double d_an = analytic_discord(p, t);
            const double diff = std::abs(d_ed - d_an);
            const qd::ModeGrid grid = qd::build_mode_grid(p);
            const double mz2 = 2.0 * qd::magnetization(grid, p, t);
            const double ed_sz = ed.r11 - ed.r44;
            std::printf("  %-4d %-6.3g %-13.6e %-13.6e %-13.6e %+.6f  %+.6f\n", n,
                        t, d_ed, d_an, diff, ed_sz, mz2);
            // trend is judged from N = 6 onward
            if (!first && n >= 8 && diff > prev + 1e-12) trend_ok = false;
            if (n >= 6) {
                prev = diff;
                first = false;
            }
        }
    }
    std::cout << (trend_ok ? "trend: non-increasing from N=6 onward\n"
                           : "trend: NOT non-increasing from N=6 onward\n");
    return trend_ok ? 0 : 1;
}

int run_props(int threads);

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-dependent XY chain: nearest-neighbor geometric quantum "
                 "discord from the exact quench solution"};
    app.set_version_flag("--version", QD_VERSION);
    app.require_subcommand(1);

    RunFlags ts_flags, sw_flags, ct_flags;
    auto* ts = app.add_subcommand("timeseries", "discord vs time (kind time_series)");
    add_run_flags(ts, ts_flags);
    auto* sw = app.add_subcommand("sweep", "1D parameter sweep (kind lambda_sweep)");
    add_run_flags(sw, sw_flags);
    auto* ct = app.add_subcommand("contour", "2D parameter grid (kind grid2d)");
    add_run_flags(ct, ct_flags);

    double oc_gamma = 1.0, oc_kT = 0.0, oc_h0 = 1.0, oc_h1 = 1.0;
    std::string oc_quench = "1:2", oc_times = "0.5,1,2";
    auto* oc = app.add_subcommand(
        "oracle-check", "exact-diagonalization vs analytic discord over N = 4..10");
    oc->add_option("--gamma", oc_gamma, "anisotropy in [0,1]");
    oc->add_option("--quench", oc_quench, "coupling quench J0:J1");
    oc->add_option("--kT", oc_kT, "temperature");
    oc->add_option("--h0", oc_h0, "field before the quench");
    oc->add_option("--h1", oc_h1, "field after the quench");
    oc->add_option("--times", oc_times, "comma-separated evaluation times");

    int props_threads = 0;
    auto* pr = app.add_subcommand("props", "run the model invariant suite");
    pr->add_option("--threads", props_threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ts->parsed()) return run_sweep_command(ts_flags, qd::SweepKind::time_series);
        if (sw->parsed()) return run_sweep_command(sw_flags, qd::SweepKind::lambda_sweep);
        if (ct->parsed()) return run_sweep_command(ct_flags, qd::SweepKind::grid2d);
        if (oc->parsed())
            return oracle_check(oc_gamma, oc_quench, oc_kT, oc_h0, oc_h1, oc_times);
        if (pr->parsed()) return run_props(props_threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

namespace {

struct PropReport {
    int failures = 0;
    void line(const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
        if (!ok) ++failures;
    }
};

std::vector<double> curve(double gamma, double kT, double h, int n_sites) {
    std::vector<double> lams(201);
    for (int i = 0; i < 201; ++i) lams[i] = 10.0 * i / 200.0;
    return qd::lambda_curve(gamma, kT, h, lams, n_sites);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

int run_props(int threads) {
    PropReport rep;
    char buf[256];

    { // no-quench time-independence (exact)
        qd::QuenchParams p{1.5, 3.0, 0.5, 1.0, 1.0, 1000, 0.0}; // J0 h1 = J1 h0
        const qd::ModeGrid g = qd::build_mode_grid(p);
        const qd::PairCorrelators a = qd::nn_correlators(g, p, 0.0);
        const qd::PairCorrelators b = qd::nn_correlators(g, p, 17.3);
        const bool ok = a.mz == b.mz && a.xx == b.xx && a.yy == b.yy && a.zz == b.zz;
        rep.line("no-quench-time-independence", ok, "J0*h1 == J1*h0 correlators bitwise constant");
    }
    { // zero-temperature scale covariance
        qd::QuenchParams p{1.0, 2.0, 1.0, 1.0, 1.0, 1000, 0.0};
        qd::QuenchParams q{3.0, 6.0, 3.0, 3.0, 1.0, 1000, 0.0};
        const qd::PairCorrelators a =
            qd::nn_correlators(qd::build_mode_grid(p), p, 1.8);
        const qd::PairCorrelators b =
            qd::nn_correlators(qd::build_mode_grid(q), q, 0.6);
        const double d = std::max({std::abs(a.mz - b.mz), std::abs(a.xx - b.xx),
                                   std::abs(a.yy - b.yy), std::abs(a.zz - b.zz)});
        std::snprintf(buf, sizeof(buf), "max diff %.2e (tol 1e-12)", d);
        rep.line("zero-T-scale-covariance", d < 1e-12, buf);
    }
    { // isotropic stasis
        qd::QuenchParams p{1.0, 4.0, 1.0, 0.5, 0.0, 1000, 0.0};
        const qd::ModeGrid g = qd::build_mode_grid(p);
        const qd::PairCorrelators a = qd::nn_correlators(g, p, 0.0);
        const qd::PairCorrelators b = qd::nn_correlators(g, p, 42.0);
        const bool ok = a.mz == b.mz && a.xx == b.xx && a.yy == b.yy && a.zz == b.zz;
        rep.line("isotropic-stasis", ok, "gamma = 0 correlators bitwise constant under any quench");
    }
    { // asymptotic average vs late-window mean
        qd::QuenchParams p{1.0, 2.0, 1.0, 1.0, 1.0, 1000, 0.0};
        const qd::ModeGrid g = qd::build_mode_grid(p);
        const qd::PairCorrelators a = qd::asymptotic_correlators(g, p);
        const qd::PairCorrelators w =
            qd::window_average_correlators(g, p, 500.0, 100.0, 400);
        const double d = std::max({std::abs(a.mz - w.mz), std::abs(a.xx - w.xx),
                                   std::abs(a.yy - w.yy), std::abs(a.zz - w.zz)});
        std::snprintf(buf, sizeof(buf), "max diff %.2e (tol 1e-3)", d);
        rep.line("window-average-consistency", d < 1e-3, buf);
    }
    { // determinism across worker counts
        qd::SweepSpec spec;
        spec.kind = qd::SweepKind::grid2d;
        spec.axis1 = {"J0", 0.0, 3.0, 31};
        spec.axis2 = qd::Axis{"J1", 0.0, 3.0, 31};
        spec.observables = {qd::Observable::discord, qd::Observable::concurrence};
        const std::string a = qd::csv_string(qd::run_sweep(spec, 1));
        const std::string b = qd::csv_string(qd::run_sweep(spec, 8));
        rep.line("determinism", a == b, "threads=1 and threads=8 CSVs byte-identical");
    }
    { // non-ergodicity witness
        const double band = qd::positivity_band(1000);
        qd::QuenchParams p{1.0, 2.0, 1.0, 1.0, 1.0, 1000, 0.0};
        const double d_asym = qd::geometric_discord_xstate(qd::assemble_rho(
            qd::asymptotic_correlators(qd::build_mode_grid(p), p), band));
        qd::QuenchParams e0{1.0, 1.0, 1.0, 1.0, 1.0, 1000, 0.0};
        qd::QuenchParams e1{2.0, 2.0, 1.0, 1.0, 1.0, 1000, 0.0};
        const double d0 = qd::geometric_discord_xstate(qd::assemble_rho(
            qd::nn_correlators(qd::build_mode_grid(e0), e0, 0.0), band));
        const double d1 = qd::geometric_discord_xstate(qd::assemble_rho(
            qd::nn_correlators(qd::build_mode_grid(e1), e1, 0.0), band));
        const double g0 = std::abs(d_asym - d0), g1 = std::abs(d_asym - d1);
        std::snprintf(buf, sizeof(buf),
                      "asymptotic %.4f vs equilibria %.4f / %.4f (gaps > 1e-3)",
                      d_asym, d0, d1);
        rep.line("non-ergodicity", g0 > 1e-3 && g1 > 1e-3, buf);
    }
    { // finite-T non-collapse
        const double d = max_abs_diff(curve(1.0, 1.0, 0.25, 1000),
                                      curve(1.0, 1.0, 4.0, 1000));
        std::snprintf(buf, sizeof(buf), "kT=1 curves h=0.25 vs h=4 differ by %.2e (> 1e-3)", d);
        rep.line("finite-T-non-collapse", d > 1e-3, buf);
    }
    { // temperature damping of the Ising peak
        auto peak = [](const std::vector<double>& c) {
            double m = 0.0;
            for (double v : c)
                if (std::isfinite(v)) m = std::max(m, v);
            return m;
        };
        const double p0 = peak(curve(1.0, 0.0, 1.0, 1000));
        const double p1 = peak(curve(1.0, 1.0, 1.0, 1000));
        const double p3 = peak(curve(1.0, 3.0, 1.0, 1000));
        std::snprintf(buf, sizeof(buf), "peaks kT=0:%.4f > kT=1:%.4f > kT=3:%.4f",
                      p0, p1, p3);
        rep.line("temperature-damping", p0 > p1 && p1 > p3, buf);
    }
    { // size stability
        double worst = 0.0;
        for (double g : {0.0, 0.5, 1.0})
            worst = std::max(worst, max_abs_diff(curve(g, 0.0, 1.0, 500),
                                                 curve(g, 0.0, 1.0, 1000)));
        std::snprintf(buf, sizeof(buf), "N=500 vs N=1000 curves differ by %.2e (tol 1e-3)",
                      worst);
        rep.line("size-stability", worst < 1e-3, buf);
    }
    (void)threads;
    std::cout << (rep.failures == 0 ? "all properties hold\n"
                                    : std::to_string(rep.failures) + " properties failed\n");
    return rep.failures == 0 ? 0 : 1;
}

} // namespace
