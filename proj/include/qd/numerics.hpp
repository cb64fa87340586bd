#pragma once

#include <array>
#include <cmath>

namespace qd {

/// Kahan-Babuska-Neumaier compensated accumulator.  Mode sums are always
/// accumulated in fixed ascending order with this, so results are
/// reproducible across thread counts.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Largest eigenvalue of a symmetric 3x3 matrix via the trigonometric
/// closed form, polished with two Newton steps on the characteristic
/// polynomial.  Rejects inputs whose asymmetry exceeds 1e-12 (relative).
double largest_eig_sym3(const Mat3& K);

} // namespace qd
