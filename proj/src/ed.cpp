#include "qd/ed.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qd {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cx = std::complex<double>;

constexpr double kDegeneracyTol = 1e-10;
constexpr double kStructureTol = 1e-9;

// H = -(J/2) sum_i [(1+g) sx_i sx_{i+1} + (1-g) sy_i sy_{i+1}] - h sum_i sz_i
// on the sigma^z product basis, periodic wrap, bit i of the index = site i
// (bit 0 means spin up).  The matrix is real symmetric: flipping an equal
// pair of bits costs -J*gamma, an unequal pair -J.
MatrixXd build_hamiltonian(double J, double h, double gamma, int n) {
    const int dim = 1 << n;
    MatrixXd H = MatrixXd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        double diag = 0.0;
        for (int i = 0; i < n; ++i) diag += (s >> i) & 1 ? 1.0 : -1.0;
        H(s, s) = h * diag; // -h * sum((-1)^bit) with bit 0 = up
        for (int i = 0; i < n; ++i) {
            const int j = (i + 1) % n;
            const int bi = (s >> i) & 1;
            const int bj = (s >> j) & 1;
            const int flipped = s ^ ((1 << i) | (1 << j));
            H(flipped, s) += bi == bj ? -J * gamma : -J;
        }
    }
    return H;
}

// Ground-state multiplet at kT = 0 (columns), else empty.
MatrixXd ground_multiplet(const VectorXd& evals, const MatrixXd& evecs) {
    int count = 1;
    while (count < evals.size() && evals[count] <= evals[0] + kDegeneracyTol)
        ++count;
    return evecs.leftCols(count);
}

// Gibbs state e^{-beta H}/Z from the eigendecomposition (kT > 0).
MatrixXd gibbs_state(const VectorXd& evals, const MatrixXd& evecs, double kT) {
    VectorXd w = (-(evals.array() - evals[0]) / kT).exp().matrix();
    w /= w.sum();
    return evecs * w.asDiagonal() * evecs.transpose();
}

// Partial trace onto the nearest-neighbor pair (sites 0, 1); reduced index
// 2*bit0 + bit1 so basis order is |uu>, |ud>, |du>, |dd>.
Eigen::Matrix4cd reduce_pair(const MatrixXcd& rho, int n) {
    const int dim = 1 << n;
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < dim; ++a) {
        const int env = a & ~3;
        const int ia = 2 * (a & 1) + ((a >> 1) & 1);
        for (int pb = 0; pb < 4; ++pb) {
            const int b = env | ((pb >> 1) & 1) | ((pb & 1) << 1);
            const int ib = 2 * (b & 1) + ((b >> 1) & 1);
            out(ia, ib) += rho(a, b);
        }
    }
    return out;
}

Eigen::Matrix4cd reduce_pair_pure(const VectorXcd& psi, int n) {
    const int dim = 1 << n;
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < dim; ++a) {
        const int env = a & ~3;
        const int ia = 2 * (a & 1) + ((a >> 1) & 1);
        for (int pb = 0; pb < 4; ++pb) {
            const int b = env | ((pb >> 1) & 1) | ((pb & 1) << 1);
            const int ib = 2 * (b & 1) + ((b >> 1) & 1);
            out(ia, ib) += psi[a] * std::conj(psi[b]);
        }
    }
    return out;
}

void check_config(const EDConfig& cfg) {
    cfg.params.validate();
    if (cfg.params.n_sites > 10)
        throw std::invalid_argument("ED supports N <= 10 (dimension 2^N <= 1024)");
    if (!(cfg.t >= 0.0) || !std::isfinite(cfg.t))
        throw std::invalid_argument("t: time must be finite and >= 0");
}

TwoQubitXState to_xstate(const Eigen::Matrix4cd& r) {
    // entries outside the X pattern must vanish (parity conservation)
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const bool on_x = i == j || (i == 0 && j == 3) || (i == 3 && j == 0) ||
                              (i == 1 && j == 2) || (i == 2 && j == 1);
            if (!on_x) off = std::max(off, std::abs(r(i, j)));
        }
    if (off > kStructureTol)
        throw std::runtime_error("ED reduction is not X-structured: off-pattern entry " +
                                 std::to_string(off));
    if (std::abs(r(1, 1) - r(2, 2)) > kStructureTol)
        throw std::runtime_error("ED reduction breaks r22 = r33 symmetry");

    TwoQubitXState s;
    s.r11 = r(0, 0).real();
    s.r22 = s.r33 = 0.5 * (r(1, 1).real() + r(2, 2).real());
    s.r44 = r(3, 3).real();
    s.r23 = r(1, 2);
    s.r14 = r(0, 3);
    return s;
}

struct Solved {
    VectorXd evals0, evals1;
    MatrixXd evecs0, evecs1;
    bool quenched;
};

Solved solve(const EDConfig& cfg) {
    const QuenchParams& p = cfg.params;
    Solved s;
    const MatrixXd H0 = build_hamiltonian(p.J0, p.h0, p.gamma, p.n_sites);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es0(H0);
    s.evals0 = es0.eigenvalues();
    s.evecs0 = es0.eigenvectors();
    s.quenched = cfg.t > 0.0 && !(p.J0 == p.J1 && p.h0 == p.h1);
    if (s.quenched) {
        const MatrixXd H1 = build_hamiltonian(p.J1, p.h1, p.gamma, p.n_sites);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es1(H1);
        s.evals1 = es1.eigenvalues();
        s.evecs1 = es1.eigenvectors();
    }
    return s;
}

Eigen::Matrix4cd reduced_density(const EDConfig& cfg) {
    check_config(cfg);
    const QuenchParams& p = cfg.params;
    const Solved s = solve(cfg);

    if (p.kT == 0.0) {
        // average the pure-state reductions over the ground multiplet
        const MatrixXd g = ground_multiplet(s.evals0, s.evecs0);
        Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
        for (int k = 0; k < g.cols(); ++k) {
            VectorXcd psi = g.col(k).cast<cx>();
            if (s.quenched) {
                const VectorXd coeff = s.evecs1.transpose() * g.col(k);
                VectorXcd phased(coeff.size());
                for (int m = 0; m < coeff.size(); ++m)
                    phased[m] = coeff[m] * std::polar(1.0, -s.evals1[m] * cfg.t);
                psi = s.evecs1.cast<cx>() * phased;
            }
            acc += reduce_pair_pure(psi, p.n_sites);
        }
        return acc / static_cast<double>(g.cols());
    }

    const MatrixXd rho0 = gibbs_state(s.evals0, s.evecs0, p.kT);
    if (!s.quenched) return reduce_pair(rho0.cast<cx>(), p.n_sites);

    VectorXcd phases(s.evals1.size());
    for (int m = 0; m < s.evals1.size(); ++m)
        phases[m] = std::polar(1.0, -s.evals1[m] * cfg.t);
    const MatrixXcd U =
        s.evecs1.cast<cx>() * phases.asDiagonal() * s.evecs1.transpose().cast<cx>();
    const MatrixXcd rho_t = U * rho0.cast<cx>() * U.adjoint();
    return reduce_pair(rho_t, p.n_sites);
}

} // namespace

TwoQubitXState ed_reduced_density(const EDConfig& cfg) {
    return to_xstate(reduced_density(cfg));
}

double ed_discord(const EDConfig& cfg) {
    return geometric_discord_xstate(ed_reduced_density(cfg));
}

double ed_energy_drift(const EDConfig& cfg) {
    check_config(cfg);
    const QuenchParams& p = cfg.params;
    const MatrixXd H0 = build_hamiltonian(p.J0, p.h0, p.gamma, p.n_sites);
    const MatrixXd H1 = build_hamiltonian(p.J1, p.h1, p.gamma, p.n_sites);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es0(H0);
    MatrixXd rho0;
    if (p.kT == 0.0) {
        const MatrixXd g = ground_multiplet(es0.eigenvalues(), es0.eigenvectors());
        rho0 = g * g.transpose() / static_cast<double>(g.cols());
    } else {
        rho0 = gibbs_state(es0.eigenvalues(), es0.eigenvectors(), p.kT);
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es1(H1);
    VectorXcd phases(es1.eigenvalues().size());
    for (int m = 0; m < phases.size(); ++m)
        phases[m] = std::polar(1.0, -es1.eigenvalues()[m] * cfg.t);
    const MatrixXcd U = es1.eigenvectors().cast<cx>() * phases.asDiagonal() *
                        es1.eigenvectors().transpose().cast<cx>();
    const MatrixXcd rho_t = U * rho0.cast<cx>() * U.adjoint();
    const double e0 = (rho0 * H1).trace();
    const cx et = (rho_t * H1.cast<cx>()).trace();
    return std::abs(et - e0);
}

} // namespace qd
