#include "qd/correlators.hpp"

#include <cmath>
#include <stdexcept>

#include "qd/numerics.hpp"

namespace qd {

namespace {

// Normalized (1/N) mode sums feeding every nearest-neighbor quantity.
//   mz : <M^z>
//   F0 : F at separation 0          Fc, Fs : cos / sin parts of F at sep 1
//   Qr : real part of Q at sep 1    Qi     : shared imaginary quench term
struct ModeSums {
    double mz, F0, Fc, Fs, Qr, Qi;
};

// One fixed-order pass over the mode grid.  asymptotic = true replaces
// sin^2[2 t Gamma1] by its time average 1/2 and sin[4 t Gamma1] by 0.
ModeSums accumulate(const ModeGrid& g, const QuenchParams& p, bool asymptotic,
                    double t) {
    // quench coefficients; both vanish identically when J0 h1 = J1 h0
    const double qF = p.J1 * (p.J0 * p.h1 - p.J1 * p.h0);
    const double qS = p.J1 * p.h0 - p.J0 * p.h1;

    KahanSum mz, F0, Fc, Fs, Qr, Qi;
    const std::size_t half = g.phi.size();
    for (std::size_t i = 0; i < half; ++i) {
        const double c = g.cos_phi[i];
        const double s = g.sin_phi[i];
        const double G0 = g.gamma0[i];
        const double G1 = g.gamma1[i];
        const double d = g.delta[i];

        // tanh(beta Gamma0)/Gamma0.  At Gamma0 = 0 every numerator it
        // multiplies vanishes as well ((J0 cos phi + h0) is a component of
        // Gamma0 and delta_p = 0 there), so the kT > 0 limit beta and the
        // kT = 0 degenerate-mode weight both yield a zero contribution.
        double fac;
        if (G0 > 0.0)
            fac = g.weight[i] / G0;
        else
            fac = g.kT > 0.0 ? 1.0 / g.kT : 0.0;

        // S2 = sin^2(2 t G1)/G1^2, S4 = sin(4 t G1)/G1 with their removable
        // limits (2t)^2 and 4t at G1 = 0 (where delta_p = 0 anyway).
        double S2, S4;
        if (G1 > 0.0) {
            if (asymptotic) {
                S2 = 0.5 / (G1 * G1);
                S4 = 0.0;
            } else {
                const double sn = std::sin(2.0 * t * G1);
                S2 = sn * sn / (G1 * G1);
                S4 = std::sin(4.0 * t * G1) / G1;
            }
        } else {
            S2 = asymptotic ? 0.0 : 4.0 * t * t;
            S4 = asymptotic ? 0.0 : 4.0 * t;
        }

        const double A = (p.J0 * c + p.h0) * fac;
        const double quench_cos = qF * d * d * S2 * fac;
        const double fcos = 2.0 * A + quench_cos;
        const double fsin = d * (p.J0 + 2.0 * qS * (p.J1 * c + p.h1) * S2) * fac;

        mz.add(A + 0.5 * quench_cos);
        F0.add(fcos);
        Fc.add(c * fcos);
        Fs.add(s * fsin);
        Qr.add(2.0 * c);
        Qi.add(qS * d * s * S4 * fac);
    }
    const double n = static_cast<double>(g.n_sites);
    return {mz.value() / n, F0.value() / n, Fc.value() / n,
            Fs.value() / n, Qr.value() / n, Qi.value() / n};
}

PairCorrelators from_sums(const ModeSums& s) {
    PairCorrelators c;
    c.mz = s.mz;
    const double Fp = s.Fc + s.Fs; // F_{l,l+1}
    const double Fm = s.Fc - s.Fs; // F_{l+1,l}
    c.xx = Fp / 4.0;
    c.yy = Fm / 4.0;
    // -Q G = Qr^2 + Qi^2 for Q = Qr + i Qi, G = -Qr + i Qi (exactly real)
    c.zz = (s.F0 * s.F0 + s.Qr * s.Qr + s.Qi * s.Qi - Fp * Fm) / 4.0;
    return c;
}

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("t: time must be finite and >= 0");
}

} // namespace

double magnetization(const ModeGrid& grid, const QuenchParams& params, double t) {
    check_time(t);
    return accumulate(grid, params, false, t).mz;
}

Contractions contractions(const ModeGrid& grid, const QuenchParams& params,
                          int sep, double t) {
    if (sep != 0 && sep != 1)
        throw std::invalid_argument("sep: only separations 0 and 1 are defined");
    check_time(t);
    const ModeSums s = accumulate(grid, params, false, t);
    Contractions out;
    if (sep == 0) {
        // cos 0 = 1 collapses the 1/N sum of 2's to exactly 1; sin 0 kills
        // the imaginary term and the sin part of F
        out.Q = {1.0, 0.0};
        out.G = {-1.0, 0.0};
        out.F = {s.F0, 0.0};
    } else {
        out.Q = {s.Qr, s.Qi};
        out.G = {-s.Qr, s.Qi};
        out.F = {s.Fc + s.Fs, 0.0};
    }
    return out;
}

PairCorrelators nn_correlators(const ModeGrid& grid, const QuenchParams& params,
                               double t) {
    check_time(t);
    return from_sums(accumulate(grid, params, false, t));
}

PairCorrelators asymptotic_correlators(const ModeGrid& grid,
                                       const QuenchParams& params) {
    return from_sums(accumulate(grid, params, true, 0.0));
}

PairCorrelators window_average_correlators(const ModeGrid& grid,
                                           const QuenchParams& params,
                                           double t_start, double width,
                                           int samples) {
    if (samples < 2)
        throw std::invalid_argument("window average needs at least 2 samples");
    if (!(t_start >= 0.0) || !(width > 0.0))
        throw std::invalid_argument("window average needs t_start >= 0 and width > 0");
    KahanSum mz, xx, yy, zz;
    for (int k = 0; k < samples; ++k) {
        const double t = t_start + width * k / (samples - 1);
        const PairCorrelators c = nn_correlators(grid, params, t);
        mz.add(c.mz);
        xx.add(c.xx);
        yy.add(c.yy);
        zz.add(c.zz);
    }
    const double n = samples;
    return {mz.value() / n, xx.value() / n, yy.value() / n, zz.value() / n};
}

} // namespace qd
