#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "qd/numerics.hpp"

using qd::KahanSum;
using qd::largest_eig_sym3;
using qd::Mat3;

namespace {

// power-iteration oracle, accelerated by repeated squaring of the shifted
// matrix so near-degenerate top eigenvalues still converge
double power_iteration_eigmax(const Mat3& K) {
    double shift = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) shift += std::abs(K[i][j]);
    double M[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] = K[i][j] + (i == j ? shift : 0.0);
    for (int sq = 0; sq < 60; ++sq) {
        double P[3][3] = {};
        double scale = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) P[i][j] += M[i][k] * M[k][j];
                scale = std::max(scale, std::abs(P[i][j]));
            }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M[i][j] = P[i][j] / scale;
    }
    // M is now (numerically) a projector onto the top eigenspace of K+shift
    double v[3] = {M[0][0] + M[0][1] + M[0][2], M[1][0] + M[1][1] + M[1][2],
                   M[2][0] + M[2][1] + M[2][2]};
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (double& x : v) x /= norm;
    double Kv[3];
    for (int i = 0; i < 3; ++i) {
        Kv[i] = 0.0;
        for (int j = 0; j < 3; ++j) Kv[i] += K[i][j] * v[j];
    }
    return v[0] * Kv[0] + v[1] * Kv[1] + v[2] * Kv[2];
}

} // namespace

TEST_CASE("largest_eig_sym3 trivial matrices") {
    Mat3 id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    CHECK(largest_eig_sym3(id) == doctest::Approx(1.0).epsilon(1e-14));
    Mat3 diag{{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}};
    CHECK(largest_eig_sym3(diag) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("largest_eig_sym3 matches power iteration on random PSD") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 500; ++trial) {
        // K = A A^T is symmetric PSD
        double A[3][3];
        for (auto& row : A)
            for (double& x : row) x = nd(rng);
        Mat3 K{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += A[i][k] * A[j][k];
                K[i][j] = s;
            }
        const double ref = power_iteration_eigmax(K);
        CHECK(largest_eig_sym3(K) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("largest_eig_sym3 rejects asymmetric input") {
    Mat3 bad{{{1, 0.5, 0}, {0.5 + 1e-6, 1, 0}, {0, 0, 1}}};
    CHECK_THROWS_AS((void)largest_eig_sym3(bad), std::invalid_argument);
}

TEST_CASE("compensated summation recovers cancellation") {
    KahanSum s;
    s.add(1.0);
    for (int i = 0; i < 10; ++i) s.add(1e-17);
    s.add(-1.0);
    CHECK(s.value() == doctest::Approx(1e-16).epsilon(1e-3));
}
