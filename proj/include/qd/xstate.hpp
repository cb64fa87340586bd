#pragma once

#include <array>
#include <complex>
#include <stdexcept>

#include "qd/correlators.hpp"
#include "qd/numerics.hpp"

namespace qd {

/// Two-qubit X-structured density matrix
///   [ r11  .    .    r14 ]
///   [ .    r22  r23  .   ]
///   [ .    r23* r33  .   ]
///   [ r14* .    .    r44 ]
/// with r22 = r33 (equal by construction here).  Coherences are real for
/// states assembled from the chain's correlators; kept complex because the
/// exact-diagonalization reduction legitimately produces complex r14 at
/// finite N.
struct TwoQubitXState {
    double r11 = 0.0, r22 = 0.0, r33 = 0.0, r44 = 0.0;
    std::complex<double> r23{0.0, 0.0};
    std::complex<double> r14{0.0, 0.0};
    /// Largest block-positivity violation removed during assembly
    /// (|coherence|^2 - diagonal product before projection), 0 if none.
    double projected_violation = 0.0;

    double trace() const { return r11 + r22 + r33 + r44; }
};

/// Raised when an assembled state violates block positivity beyond
/// tolerance; carries the measured violation for diagnosis.
struct PositivityError : std::runtime_error {
    double violation;
    double tolerance;
    PositivityError(const std::string& msg, double v, double tol)
        : std::runtime_error(msg), violation(v), tolerance(tol) {}
};

/// Local Bloch vectors and correlation tensor:
///   x_i = Tr[rho (sigma_i x 1)], y_i = Tr[rho (1 x sigma_i)],
///   T_ij = Tr[rho (sigma_i x sigma_j)].
struct BlochDecomposition {
    std::array<double, 3> x{0, 0, 0};
    std::array<double, 3> y{0, 0, 0};
    Mat3 T{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};
};

/// Populations from the correlators:
///   r11 = mz + zz + 1/4, r22 = r33 = 1/4 - zz, r44 = -mz + zz + 1/4,
///   r23 = xx + yy, r14 = xx - yy.  Trace is 1 by construction.
/// Block violations up to positivity_tol are projected away (the coherence
/// is shrunk to its block bound, recorded in projected_violation); larger
/// ones raise PositivityError.
TwoQubitXState assemble_rho(const PairCorrelators& c, double positivity_tol = 1e-9);

/// Assembly tolerance for states built from the chain's closed forms: their
/// boundary terms produce O(1/N^2) indefiniteness near product-state
/// corners, so the band scales as 16/N^2; genuine formula inconsistencies
/// sit far above it.
inline double positivity_band(int n_sites) {
    const double n = n_sites;
    return 16.0 / (n * n) > 1e-9 ? 16.0 / (n * n) : 1e-9;
}

/// x = y = (0, 0, r11 - r44); T diagonal
/// diag(2 Re(r23 + r14), 2 Re(r23 - r14), r11 - r22 - r33 + r44) for real
/// coherences, with the exact off-diagonal xy-block entries when the
/// coherences carry phases.
BlochDecomposition bloch_decompose(const TwoQubitXState& rho);

/// Geometric discord D = (||x||^2 + ||T||^2 - k_max)/4 with k_max the
/// largest eigenvalue of K = x x^T + T T^T (measurement on the first
/// qubit; the two sides coincide for these symmetric states).
double geometric_discord_general(const BlochDecomposition& b);

/// Closed-form discord for the X family: K's eigenvalues are
/// 4(|r23|+|r14|)^2, 4(|r23|-|r14|)^2 and x3^2 + t3^2, so no eigensolver
/// is needed.  Agrees with the general path to 1e-12.
double geometric_discord_xstate(const TwoQubitXState& rho);

/// X-state concurrence
///   C = 2 max(0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)).
double concurrence(const TwoQubitXState& rho);

} // namespace qd
