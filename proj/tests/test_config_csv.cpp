#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>

#include "qd/config.hpp"
#include "qd/csv.hpp"
#include "qd/sweep.hpp"

using namespace qd;

TEST_CASE("minimal document fills the defaults") {
    const SweepSpec spec =
        parse_config("{kind: lambda_sweep, axis1: [lambda, 0, 10, 201]}");
    CHECK(spec.kind == SweepKind::lambda_sweep);
    CHECK(spec.base.n_sites == 1000);
    CHECK(spec.base.gamma == 1.0);
    CHECK(spec.base.kT == 0.0);
    CHECK(spec.time_mode.kind == TimeModeKind::asymptotic_average);
    REQUIRE(spec.observables.size() == 1);
    CHECK(spec.observables[0] == Observable::discord);
    CHECK(spec.axis1.name == "lambda");
    CHECK(spec.axis1.count == 201);
}

TEST_CASE("multi-line form with comments") {
    const SweepSpec spec = parse_config(
        "# discord vs time\n"
        "kind: time_series\n"
        "gamma: 1\n"
        "kT: 0\n"
        "h0: 1\n"
        "h1: 1\n"
        "J0: 1\n"
        "J1: 2\n"
        "axis1: [t, 0, 20, 400]\n"
        "observables: [discord, concurrence]\n");
    CHECK(spec.kind == SweepKind::time_series);
    CHECK(spec.base.J1 == 2.0);
    CHECK(spec.axis1.name == "t");
    CHECK(spec.axis1.count == 400);
    // a t axis defaults the evaluation to at-time
    CHECK(spec.time_mode.kind == TimeModeKind::at_time);
    CHECK(spec.observables.size() == 2);
}

TEST_CASE("odd chain length is rejected naming the key and the rule") {
    try {
        (void)parse_config("{kind: lambda_sweep, N: 7, axis1: [lambda, 0, 1, 5]}");
        CHECK(false);
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("N") != std::string::npos);
        CHECK(msg.find("even") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected with the line number") {
    try {
        (void)parse_config("kind: lambda_sweep\nbogus: 3\naxis1: [lambda, 0, 1, 5]\n");
        CHECK(false);
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("bogus") != std::string::npos);
    }
}

TEST_CASE("time modes parse and round-trip through to_string") {
    CHECK(parse_time_mode("asymptotic").kind == TimeModeKind::asymptotic_average);
    const TimeMode at = parse_time_mode("at:2.5");
    CHECK(at.kind == TimeModeKind::at_time);
    CHECK(at.t == 2.5);
    const TimeMode win = parse_time_mode("window:500,100,400");
    CHECK(win.kind == TimeModeKind::window_average);
    CHECK(win.window_start == 500.0);
    CHECK(win.window_width == 100.0);
    CHECK(win.window_samples == 400);
    CHECK_THROWS_AS((void)parse_time_mode("sometime"), ConfigError);
    CHECK_THROWS_AS((void)parse_time_mode("window:5"), ConfigError);
}

TEST_CASE("subcommand kind conflicts are rejected") {
    CHECK_THROWS_AS((void)parse_config("{kind: grid2d, axis1: [J0, 0, 1, 5]}",
                                       SweepKind::time_series),
                    ConfigError);
    // and the forced kind fills in when absent
    const SweepSpec spec = parse_config("{axis1: [t, 0, 5, 11]}",
                                        SweepKind::time_series);
    CHECK(spec.kind == SweepKind::time_series);
}

TEST_CASE("csv line counts: header plus one row per point") {
    SweepSpec spec;
    spec.kind = SweepKind::lambda_sweep;
    spec.base.n_sites = 100;
    spec.axis1 = {"lambda1", 0.5, 1.5, 3};
    const SweepResult r = run_sweep(spec, 1);
    const std::string csv = csv_string(r);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    SweepSpec g2;
    g2.kind = SweepKind::grid2d;
    g2.base.n_sites = 16;
    g2.axis1 = {"J0", 0.2, 2.0, 101};
    g2.axis2 = Axis{"J1", 0.2, 2.0, 101};
    const SweepResult r2 = run_sweep(g2, 0);
    const std::string csv2 = csv_string(r2);
    CHECK(std::count(csv2.begin(), csv2.end(), '\n') == 10202);
}

TEST_CASE("csv numbers round-trip at 12 significant digits") {
    SweepSpec spec;
    spec.kind = SweepKind::lambda_sweep;
    spec.base.n_sites = 200;
    spec.base.kT = 0.7;
    spec.axis1 = {"lambda", 0.3, 3.7, 11};
    spec.observables = {Observable::discord, Observable::mz, Observable::zz};
    const SweepResult r = run_sweep(spec, 1);
    std::istringstream in(csv_string(r));
    std::string line;
    std::getline(in, line);
    CHECK(line == "lambda,discord,mz,zz,reason");
    int row = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() >= 4);
        for (int k = 0; k < 3; ++k) {
            const double parsed = std::strtod(cells[1 + k].c_str(), nullptr);
            CHECK(format_number(parsed) == cells[1 + k]);
        }
        ++row;
    }
    CHECK(row == 11);
}

TEST_CASE("NA points render as the literal token with a reason") {
    SweepSpec spec;
    spec.kind = SweepKind::lambda_sweep;
    spec.base.n_sites = 100;
    spec.axis1 = {"kT", -1.0, 1.0, 3}; // kT = -1 is invalid at the first point
    const SweepResult r = run_sweep(spec, 1);
    CHECK(r.na_count == 1);
    std::istringstream in(csv_string(r));
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(first.find(",NA,") != std::string::npos);
    CHECK(first.find("invalid-params") != std::string::npos);
}

TEST_CASE("metadata sidecar records the run recipe") {
    SweepSpec spec;
    spec.kind = SweepKind::grid2d;
    spec.base.n_sites = 16;
    spec.base.gamma = 0.5;
    spec.base.kT = 2.0;
    spec.axis1 = {"J0", 0.0, 1.0, 3};
    spec.axis2 = Axis{"h0", 0.5, 1.5, 4};
    const SweepResult r = run_sweep(spec, 1);
    const std::string meta = meta_string(r);
    for (const char* needle :
         {"\"n_sites\": 16", "\"gamma\": 0.5", "\"kT\": 2.0", "asymptotic",
          "\"axes\"", "\"J0\"", "\"h0\"", "\"count\": 4", "\"version\""})
        CHECK(meta.find(needle) != std::string::npos);
}
