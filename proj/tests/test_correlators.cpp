#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "qd/correlators.hpp"
#include "qd/model.hpp"

using namespace qd;

namespace {
ModeGrid grid_for(const QuenchParams& p) { return build_mode_grid(p); }
} // namespace

TEST_CASE("fully polarized chain: closed-form finite-N values") {
    QuenchParams p{0, 0, 1, 1, 1, 1000, 0};
    const ModeGrid g = grid_for(p);
    for (double t : {0.0, 3.7}) {
        CHECK(magnetization(g, p, t) == doctest::Approx(0.5).epsilon(1e-14));
        const PairCorrelators c = nn_correlators(g, p, t);
        // sum of cos(2 pi p / N) over p = 1..N/2 is exactly -1
        CHECK(c.xx == doctest::Approx(-0.0005).epsilon(1e-12));
        CHECK(c.yy == doctest::Approx(-0.0005).epsilon(1e-12));
        CHECK(c.zz == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("zero-field chain magnetization is the folded cosine sum -1/N") {
    QuenchParams p{1, 1, 0, 0, 1, 1000, 0};
    CHECK(magnetization(grid_for(p), p, 0.0) ==
          doctest::Approx(-0.001).epsilon(1e-12));
}

TEST_CASE("quench magnetization against the independent summation oracle") {
    QuenchParams p{1, 5, 1, 1, 1, 1000, 0};
    CHECK(magnetization(grid_for(p), p, 2.0) ==
          doctest::Approx(1.2217383123090560e-01).epsilon(1e-11));
}

TEST_CASE("diagonal contractions are exact") {
    QuenchParams p{1.3, 0.4, 0.9, 1.7, 0.6, 500, 0.7};
    const Contractions c = contractions(grid_for(p), p, 0, 1.9);
    CHECK(c.Q.real() == 1.0);
    CHECK(c.Q.imag() == 0.0);
    CHECK(c.G.real() == -1.0);
    CHECK(c.G.imag() == 0.0);
    CHECK(std::abs(c.F.imag()) < 1e-10 * std::max(1.0, std::abs(c.F.real())));
    // F at separation 0 is the per-site <sigma^z> = 2 <M^z>, at every t
    for (double t : {0.0, 0.8, 5.0}) {
        const Contractions ct = contractions(grid_for(p), p, 0, t);
        CHECK(ct.F.real() ==
              doctest::Approx(2.0 * magnetization(grid_for(p), p, t)).epsilon(1e-13));
    }
}

TEST_CASE("no-quench contractions are time-independent") {
    QuenchParams p{2, 2, 0.7, 0.7, 1, 1000, 0};
    const Contractions a = contractions(grid_for(p), p, 1, 0.0);
    const Contractions b = contractions(grid_for(p), p, 1, 13.5);
    CHECK(a.Q == b.Q);
    CHECK(a.G == b.G);
    CHECK(a.F == b.F);
}

TEST_CASE("quench contractions against the independent summation oracle") {
    QuenchParams p{1, 2, 1, 1, 1, 1000, 0};
    const Contractions c = contractions(grid_for(p), p, 1, 1.0);
    CHECK(c.Q.real() == doctest::Approx(-2.0000000000000000e-03).epsilon(1e-11));
    CHECK(c.Q.imag() == doctest::Approx(-3.0932299960541115e-02).epsilon(1e-11));
    CHECK(c.G.real() == doctest::Approx(2.0000000000000000e-03).epsilon(1e-11));
    CHECK(c.G.imag() == doctest::Approx(c.Q.imag()).epsilon(1e-15));
    CHECK(c.F.real() == doctest::Approx(7.5743146953211771e-01).epsilon(1e-11));
    CHECK(c.F.imag() == 0.0);
}

TEST_CASE("separation outside {0, 1} is rejected") {
    QuenchParams p{1, 1, 1, 1, 1, 100, 0};
    CHECK_THROWS_AS((void)contractions(grid_for(p), p, 2, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)contractions(grid_for(p), p, -1, 0.0),
                    std::invalid_argument);
}

TEST_CASE("nearest-neighbor correlators against the independent oracle") {
    QuenchParams p{1, 2, 1, 1, 1, 1000, 0};
    const PairCorrelators c = nn_correlators(grid_for(p), p, 1.0);
    CHECK(c.mz == doctest::Approx(1.9599740362096180e-01).epsilon(1e-11));
    CHECK(c.xx == doctest::Approx(1.8935786738302943e-01).epsilon(1e-11));
    CHECK(c.yy == doctest::Approx(-3.9144977106792100e-02).epsilon(1e-10));
    CHECK(c.zz == doctest::Approx(6.8304821556169085e-02).epsilon(1e-10));
    CHECK(std::abs(c.mz) <= 0.5);
    CHECK(std::abs(c.xx) <= 0.25);
    CHECK(std::abs(c.yy) <= 0.25);
    CHECK(std::abs(c.zz) <= 0.25);
}

TEST_CASE("isotropic chain: xx equals yy exactly") {
    QuenchParams p{1.7, 0.4, 0.8, 1.2, 0.0, 1000, 0.3};
    for (double t : {0.0, 2.2}) {
        const PairCorrelators c = nn_correlators(grid_for(p), p, t);
        CHECK(c.xx == c.yy);
    }
}

TEST_CASE("zero-temperature scale covariance of all correlators") {
    QuenchParams p{1, 2, 1, 1, 0.5, 1000, 0};
    QuenchParams q{4, 8, 4, 4, 0.5, 1000, 0};
    const PairCorrelators a = nn_correlators(grid_for(p), p, 2.0);
    const PairCorrelators b = nn_correlators(grid_for(q), q, 0.5);
    CHECK(a.mz == doctest::Approx(b.mz).epsilon(1e-13));
    CHECK(a.xx == doctest::Approx(b.xx).epsilon(1e-13));
    CHECK(a.yy == doctest::Approx(b.yy).epsilon(1e-13));
    CHECK(a.zz == doctest::Approx(b.zz).epsilon(1e-13));
}

TEST_CASE("asymptotic average: no-quench case equals the t = 0 correlators") {
    QuenchParams p{1.5, 1.5, 0.9, 0.9, 1, 1000, 0.2};
    const PairCorrelators a = asymptotic_correlators(grid_for(p), p);
    const PairCorrelators b = nn_correlators(grid_for(p), p, 0.0);
    CHECK(a.mz == b.mz);
    CHECK(a.xx == b.xx);
    CHECK(a.yy == b.yy);
    CHECK(a.zz == b.zz);
}

TEST_CASE("asymptotic average: isotropic quench equals the t = 0 correlators") {
    QuenchParams p{1, 3, 1, 0.5, 0.0, 1000, 0};
    const PairCorrelators a = asymptotic_correlators(grid_for(p), p);
    const PairCorrelators b = nn_correlators(grid_for(p), p, 0.0);
    CHECK(a.mz == b.mz);
    CHECK(a.xx == b.xx);
    CHECK(a.yy == b.yy);
    CHECK(a.zz == b.zz);
}

TEST_CASE("asymptotic average matches the late-window mean") {
    QuenchParams p{1, 2, 1, 1, 1, 1000, 0};
    const PairCorrelators a = asymptotic_correlators(grid_for(p), p);
    const PairCorrelators w =
        window_average_correlators(grid_for(p), p, 500.0, 100.0, 400);
    CHECK(a.mz == doctest::Approx(w.mz).epsilon(1e-3));
    CHECK(a.xx == doctest::Approx(w.xx).epsilon(1e-3));
    CHECK(std::abs(a.yy - w.yy) < 1e-3);
    CHECK(std::abs(a.zz - w.zz) < 1e-3);
}

TEST_CASE("critical pre-quench couplings (zero mode) stay finite at kT = 0") {
    // J0 = h0 puts the phi = pi mode at zero energy; the degenerate-mode
    // weight resolves tanh(beta*0)/0 to a vanishing contribution
    QuenchParams p{1, 2, 1, 1, 1, 1000, 0};
    const PairCorrelators c = nn_correlators(grid_for(p), p, 0.5);
    CHECK(std::isfinite(c.mz));
    CHECK(std::isfinite(c.xx));
    CHECK(std::isfinite(c.yy));
    CHECK(std::isfinite(c.zz));
    // and the same point with small kT > 0 is close (continuity in kT)
    QuenchParams q = p;
    q.kT = 1e-6;
    const PairCorrelators d = nn_correlators(grid_for(q), q, 0.5);
    CHECK(c.mz == doctest::Approx(d.mz).epsilon(1e-6));
    CHECK(c.zz == doctest::Approx(d.zz).epsilon(1e-6));
}

TEST_CASE("negative time is rejected") {
    QuenchParams p{1, 1, 1, 1, 1, 100, 0};
    CHECK_THROWS_AS((void)nn_correlators(grid_for(p), p, -1.0),
                    std::invalid_argument);
}
