#include "qd/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qd {

namespace {
bool finite(double x) { return std::isfinite(x); }
} // namespace

void QuenchParams::validate() const {
    if (!finite(J0) || !finite(J1) || !finite(h0) || !finite(h1))
        throw std::invalid_argument("J0/J1/h0/h1 must be finite");
    if (!finite(gamma) || gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("gamma: anisotropy must lie in [0, 1], got " +
                                    std::to_string(gamma));
    if (n_sites < 4)
        throw std::invalid_argument("N: chain length must be >= 4, got " +
                                    std::to_string(n_sites));
    if (n_sites % 2 != 0)
        throw std::invalid_argument("N: chain length must be even (mode sums run p = 1..N/2), got " +
                                    std::to_string(n_sites));
    if (!finite(kT) || kT < 0.0)
        throw std::invalid_argument("kT: temperature must be >= 0, got " +
                                    std::to_string(kT));
}

double dispersion(double h, double J, double phi, double gamma) {
    const double u = J * std::cos(phi) + h;
    const double v = gamma * J * std::sin(phi);
    return std::sqrt(u * u + v * v);
}

ModeGrid build_mode_grid(const QuenchParams& params) {
    params.validate();
    const int half = params.n_sites / 2;
    ModeGrid g;
    g.n_sites = params.n_sites;
    g.kT = params.kT;
    g.phi.resize(half);
    g.delta.resize(half);
    g.gamma0.resize(half);
    g.gamma1.resize(half);
    g.weight.resize(half);
    g.cos_phi.resize(half);
    g.sin_phi.resize(half);
    const double step = 2.0 * M_PI / params.n_sites;
    for (int p = 1; p <= half; ++p) {
        const int i = p - 1;
        const double phi = step * p;
        // the last mode sits at phi = pi exactly; snapping its sine to zero
        // keeps delta_p and the dispersions at their exact analytic values
        const double c = p == half ? -1.0 : std::cos(phi);
        const double s = p == half ? 0.0 : std::sin(phi);
        g.phi[i] = phi;
        g.cos_phi[i] = c;
        g.sin_phi[i] = s;
        g.delta[i] = 2.0 * params.gamma * s;
        const double u0 = params.J0 * c + params.h0;
        const double v0 = params.gamma * params.J0 * s;
        g.gamma0[i] = std::sqrt(u0 * u0 + v0 * v0);
        const double u1 = params.J1 * c + params.h1;
        const double v1 = params.gamma * params.J1 * s;
        g.gamma1[i] = std::sqrt(u1 * u1 + v1 * v1);
        // kT = 0 short-circuits to weight 1; beta is never materialized
        g.weight[i] = params.kT == 0.0 ? 1.0 : std::tanh(g.gamma0[i] / params.kT);
    }
    return g;
}

} // namespace qd
