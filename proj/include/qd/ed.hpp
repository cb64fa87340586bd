#pragma once

#include "qd/model.hpp"
#include "qd/xstate.hpp"

namespace qd {

/// Exact-diagonalization configuration: a small chain (4 <= N <= 10, even)
/// plus the evolution time after the quench.
struct EDConfig {
    QuenchParams params;
    double t = 0.0;
};

/// Dense exact solution on 2^N states: thermal state of H(J0, h0)
/// (uniform mixture over the ground eigenspace at kT = 0, degeneracy
/// tolerance 1e-10 on eigenvalues), unitary evolution under H(J1, h1),
/// partial trace onto a nearest-neighbor pair.  The reduction is verified
/// X-structured within 1e-9 (exact by parity conservation).
TwoQubitXState ed_reduced_density(const EDConfig& cfg);

/// ed_reduced_density composed with the X-state discord formula.
double ed_discord(const EDConfig& cfg);

/// Post-quench energy drift |Tr[rho(t) H1] - Tr[rho(0) H1]|; exact
/// evolution keeps it at rounding level.
double ed_energy_drift(const EDConfig& cfg);

} // namespace qd
