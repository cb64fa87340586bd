#include "qd/xstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qd {

namespace {

// Shrinks one coherence to its block bound sqrt(d1*d2); returns the
// violation |coh|^2 - d1*d2 that was present (<= 0 means none).
double project_block(std::complex<double>& coh, double d1, double d2) {
    const double bound = std::max(d1, 0.0) * std::max(d2, 0.0);
    const double excess = std::norm(coh) - bound;
    if (excess <= 0.0) return excess;
    coh *= (bound > 0.0) ? std::sqrt(bound / std::norm(coh)) : 0.0;
    return excess;
}

} // namespace

TwoQubitXState assemble_rho(const PairCorrelators& c, double positivity_tol) {
    TwoQubitXState r;
    r.r11 = c.mz + c.zz + 0.25;
    r.r22 = 0.25 - c.zz;
    r.r33 = r.r22;
    r.r44 = -c.mz + c.zz + 0.25;
    r.r23 = {c.xx + c.yy, 0.0};
    r.r14 = {c.xx - c.yy, 0.0};

    double worst = std::max({-r.r11, -r.r22, -r.r44, 0.0});
    if (worst > positivity_tol)
        throw PositivityError("assemble_rho: negative population " +
                                  std::to_string(worst) + " exceeds tolerance " +
                                  std::to_string(positivity_tol),
                              worst, positivity_tol);
    r.r11 = std::max(r.r11, 0.0);
    r.r22 = r.r33 = std::max(r.r22, 0.0);
    r.r44 = std::max(r.r44, 0.0);

    const double v_inner = project_block(r.r23, r.r22, r.r33);
    const double v_outer = project_block(r.r14, r.r11, r.r44);
    const double violation = std::max({v_inner, v_outer, 0.0});
    if (violation > positivity_tol)
        throw PositivityError("assemble_rho: block positivity violated by " +
                                  std::to_string(violation) + " (tolerance " +
                                  std::to_string(positivity_tol) + ")",
                              violation, positivity_tol);
    r.projected_violation = std::max(violation, worst);
    return r;
}

BlochDecomposition bloch_decompose(const TwoQubitXState& rho) {
    BlochDecomposition b;
    const double x3 = rho.r11 - rho.r44;
    b.x = {0.0, 0.0, x3};
    b.y = {0.0, 0.0, x3};
    const std::complex<double> e = rho.r23;
    const std::complex<double> f = rho.r14;
    b.T[0][0] = 2.0 * (e + f).real();
    b.T[0][1] = 2.0 * (e - f).imag();
    b.T[1][0] = -2.0 * (e + f).imag();
    b.T[1][1] = 2.0 * (e - f).real();
    b.T[2][2] = rho.r11 - rho.r22 - rho.r33 + rho.r44;
    return b;
}

double geometric_discord_general(const BlochDecomposition& b) {
    double x2 = 0.0, t2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        x2 += b.x[i] * b.x[i];
        for (int j = 0; j < 3; ++j) t2 += b.T[i][j] * b.T[i][j];
    }
    Mat3 K;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = b.x[i] * b.x[j];
            for (int k = 0; k < 3; ++k) s += b.T[i][k] * b.T[j][k];
            K[i][j] = s;
        }
    // enforce exact symmetry against rounding before the eigensolve
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) K[i][j] = K[j][i] = 0.5 * (K[i][j] + K[j][i]);
    const double kmax = largest_eig_sym3(K);
    const double d = 0.25 * (x2 + t2 - kmax);
    return d < 0.0 && d > -1e-12 ? 0.0 : d;
}

double geometric_discord_xstate(const TwoQubitXState& rho) {
    const double x3 = rho.r11 - rho.r44;
    const double t3 = rho.r11 - rho.r22 - rho.r33 + rho.r44;
    const double e = std::abs(rho.r23);
    const double f = std::abs(rho.r14);
    const double tp = 2.0 * (e + f);
    const double tm = 2.0 * (e - f);
    const double kmax = std::max({tp * tp, tm * tm, x3 * x3 + t3 * t3});
    const double d =
        0.25 * (x3 * x3 + tp * tp + tm * tm + t3 * t3 - kmax);
    return d < 0.0 && d > -1e-12 ? 0.0 : d;
}

double concurrence(const TwoQubitXState& rho) {
    // negative determinants from rounding are clamped before the square roots
    const double inner = std::sqrt(std::max(rho.r22 * rho.r33, 0.0));
    const double outer = std::sqrt(std::max(rho.r11 * rho.r44, 0.0));
    const double c = 2.0 * std::max({std::abs(rho.r14) - inner,
                                     std::abs(rho.r23) - outer, 0.0});
    return std::min(c, 1.0);
}

} // namespace qd
