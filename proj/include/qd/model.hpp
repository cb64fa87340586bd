#pragma once

#include <vector>

namespace qd {

/// Physical configuration of the step-quenched anisotropic XY chain:
/// coupling J0 and field h0 before the quench, J1/h1 after, anisotropy
/// gamma in [0,1], chain length n_sites (even, >= 4), temperature kT >= 0.
struct QuenchParams {
    double J0 = 1.0;
    double J1 = 1.0;
    double h0 = 1.0;
    double h1 = 1.0;
    double gamma = 1.0;
    int n_sites = 1000;
    double kT = 0.0;

    bool no_quench() const { return J0 * h1 == J1 * h0; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Per-mode precomputation shared by every correlator:
///   phi_p    = 2*pi*p / N,  p = 1 .. N/2
///   delta_p  = 2*gamma*sin(phi_p)
///   gamma0_p = dispersion at (h0, J0), gamma1_p at (h1, J1)
///   weight_p = tanh(gamma0_p / kT), the thermal occupation factor
///              (exactly 1 for every mode at kT = 0)
struct ModeGrid {
    std::vector<double> phi;
    std::vector<double> delta;
    std::vector<double> gamma0;
    std::vector<double> gamma1;
    std::vector<double> weight;
    // cos/sin of phi, with the p = N/2 mode snapped to (-1, 0) exactly so
    // the zero-mode conventions below engage at the exact point
    std::vector<double> cos_phi;
    std::vector<double> sin_phi;
    int n_sites = 0;
    double kT = 0.0;
};

/// Single-mode quasiparticle energy
///   sqrt[(J cos(phi) + h)^2 + gamma^2 J^2 sin^2(phi)]  >= 0.
double dispersion(double h, double J, double phi, double gamma);

/// Rejects invalid params (kT < 0, odd or too-small N, ...).
ModeGrid build_mode_grid(const QuenchParams& params);

} // namespace qd
