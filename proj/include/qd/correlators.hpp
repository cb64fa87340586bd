#pragma once

#include <complex>

#include "qd/model.hpp"

namespace qd {

/// Two-point fermionic contractions for a site pair at separation m - l.
/// Q and G share one imaginary quench term and differ by the sign of the
/// 2 cos[(m-l) phi_p] term; F is real (stored complex for uniformity).
/// At separation 0: Q = 1, G = -1 exactly and F equals the per-site
/// <sigma^z> = 2 <M^z>.
struct Contractions {
    std::complex<double> Q;
    std::complex<double> G;
    std::complex<double> F;
};

/// Nearest-neighbor spin-1/2 correlators at time t after the quench.
/// mz is the per-site magnetization <M^z> in [-1/2, 1/2]; xx, yy, zz are
/// <S^a_l S^a_{l+1}> in [-1/4, 1/4].
struct PairCorrelators {
    double mz = 0.0;
    double xx = 0.0;
    double yy = 0.0;
    double zz = 0.0;
};

/// Transverse magnetization <M^z>(t): thermally weighted mode sum with the
/// sin^2[2 t Gamma(h1,J1)] quench term.
double magnetization(const ModeGrid& grid, const QuenchParams& params, double t);

/// Contractions for sep in {0, 1}; rejects other separations.
Contractions contractions(const ModeGrid& grid, const QuenchParams& params,
                          int sep, double t);

/// Wick's theorem:  xx = F_{l,l+1}/4,  yy = F_{l+1,l}/4,
/// zz = (F_{l,l}^2 - Q_{l,l+1} G_{l,l+1} - F_{l+1,l} F_{l,l+1}) / 4.
/// F with reversed indices flips the sign of the sin[(m-l) phi_p] factor only.
PairCorrelators nn_correlators(const ModeGrid& grid, const QuenchParams& params,
                               double t);

/// Infinite-time average: sin^2[2 t Gamma1] -> 1/2, sin[4 t Gamma1] -> 0
/// per mode.  Equals nn_correlators at any t when J0 h1 = J1 h0, and the
/// t = 0 correlators when gamma = 0.
PairCorrelators asymptotic_correlators(const ModeGrid& grid,
                                       const QuenchParams& params);

/// Mean of nn_correlators over `samples` uniform times in
/// [t_start, t_start + width]; cross-validates the analytic average.
PairCorrelators window_average_correlators(const ModeGrid& grid,
                                           const QuenchParams& params,
                                           double t_start, double width,
                                           int samples);

} // namespace qd
