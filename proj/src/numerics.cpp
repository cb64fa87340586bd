#include "qd/numerics.hpp"

#include <algorithm>
#include <stdexcept>

namespace qd {

double largest_eig_sym3(const Mat3& K) {
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(K[i][j]));
    const double asym = std::max({std::abs(K[0][1] - K[1][0]),
                                  std::abs(K[0][2] - K[2][0]),
                                  std::abs(K[1][2] - K[2][1])});
    if (asym > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("largest_eig_sym3: matrix is not symmetric");

    const double p1 = K[0][1] * K[0][1] + K[0][2] * K[0][2] + K[1][2] * K[1][2];
    if (p1 == 0.0)
        return std::max({K[0][0], K[1][1], K[2][2]});

    const double q = (K[0][0] + K[1][1] + K[2][2]) / 3.0;
    const double p2 = (K[0][0] - q) * (K[0][0] - q) + (K[1][1] - q) * (K[1][1] - q) +
                      (K[2][2] - q) * (K[2][2] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);

    // r = det((K - q I)/p) / 2, clamped against rounding
    Mat3 B;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B[i][j] = (K[i][j] - (i == j ? q : 0.0)) / p;
    const double detB = B[0][0] * (B[1][1] * B[2][2] - B[1][2] * B[2][1]) -
                        B[0][1] * (B[1][0] * B[2][2] - B[1][2] * B[2][0]) +
                        B[0][2] * (B[1][0] * B[2][1] - B[1][1] * B[2][0]);
    const double r = std::clamp(detB / 2.0, -1.0, 1.0);
    double lam = q + 2.0 * p * std::cos(std::acos(r) / 3.0);

    // Newton polish on det(K - lam I) = -lam^3 + a lam^2 - b lam + c
    const double a = K[0][0] + K[1][1] + K[2][2];
    const double b = K[0][0] * K[1][1] - K[0][1] * K[1][0] +
                     K[0][0] * K[2][2] - K[0][2] * K[2][0] +
                     K[1][1] * K[2][2] - K[1][2] * K[2][1];
    const double c = K[0][0] * (K[1][1] * K[2][2] - K[1][2] * K[2][1]) -
                     K[0][1] * (K[1][0] * K[2][2] - K[1][2] * K[2][0]) +
                     K[0][2] * (K[1][0] * K[2][1] - K[1][1] * K[2][0]);
    for (int it = 0; it < 2; ++it) {
        const double f = ((-lam + a) * lam - b) * lam + c;
        const double fp = (-3.0 * lam + 2.0 * a) * lam - b;
        if (std::abs(fp) < 1e-300) break;
        const double step = f / fp;
        // near-degenerate roots make Newton ill-conditioned; the trig value stands
        if (std::abs(step) > 1e-6 * std::max(1.0, std::abs(lam))) break;
        lam -= step;
    }
    return lam;
}

} // namespace qd
