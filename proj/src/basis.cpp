#include "billiard/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "billiard/bessel.hpp"

namespace billiard {

using std::numbers::pi;

CornerBasis::CornerBasis(Vec2 origin, int count) : origin_(origin), count_(count) {
    if (count < 1) throw std::invalid_argument("basis needs at least one function");
}

int CornerBasis::semiclassical_size(double k, double r_max) {
    return static_cast<int>(std::ceil(1.5 * k * r_max));
}

void CornerBasis::eval_point(double k, const Vec2& q, const Vec2& inward_normal,
                             const BasisRequest& request, BasisEval& out) const {
    const int n = count_;
    if (request.values) out.value.assign(n, 0.0);
    if (request.k_derivatives) out.k_deriv.assign(n, 0.0);
    if (request.normal_derivatives) out.n_deriv.assign(n, 0.0);
    if (request.gradients) {
        out.grad_x.assign(n, 0.0);
        out.grad_y.assign(n, 0.0);
    }

    const Vec2 rel = q - origin_;
    const double r = rel.norm();
    if (r < 1e-14) return;  // all orders are positive, everything vanishes at the corner
    const double x = k * r;

    double phi = std::atan2(rel.y, rel.x);
    if (phi < 0.0) phi += 2.0 * pi;

    // Orders 2i/3 fall into three residue classes mod 1; one ladder per class
    // covers every order plus the +1 neighbours used for J'.
    const int m_max = (2 * n) / 3 + 3;
    const std::vector<double> ladders[3] = {
        bessel_j_ladder(0.0, m_max, x),
        bessel_j_ladder(1.0 / 3.0, m_max, x),
        bessel_j_ladder(2.0 / 3.0, m_max, x),
    };

    const bool need_prime =
        request.k_derivatives || request.normal_derivatives || request.gradients;

    // sin/cos of 2 i phi / 3 by angle addition, re-seeded periodically.
    const double dphi = 2.0 * phi / 3.0;
    const double sd = std::sin(dphi), cd = std::cos(dphi);
    double s = 0.0, c = 1.0;
    for (int i = 1; i <= n; ++i) {
        if (i % 64 == 1) {
            s = std::sin(dphi * (i - 1));
            c = std::cos(dphi * (i - 1));
        }
        const double s_new = s * cd + c * sd;
        const double c_new = c * cd - s * sd;
        s = s_new;
        c = c_new;

        const double nu = 2.0 * i / 3.0;
        const int cls = (2 * i) % 3;           // residue numerator of nu mod 1
        const int m = (2 * i) / 3;             // integer part
        const double J = ladders[cls][m];
        if (request.values) out.value[i - 1] = J * s;
        if (!need_prime) continue;

        const double Jp = (nu / x) * J - ladders[cls][m + 1];
        if (request.k_derivatives) out.k_deriv[i - 1] = r * Jp * s;
        if (request.normal_derivatives || request.gradients) {
            const double gx = k * (rel.x / r) * Jp * s - nu * (rel.y / (r * r)) * J * c;
            const double gy = k * (rel.y / r) * Jp * s + nu * (rel.x / (r * r)) * J * c;
            if (request.gradients) {
                out.grad_x[i - 1] = gx;
                out.grad_y[i - 1] = gy;
            }
            if (request.normal_derivatives) {
                out.n_deriv[i - 1] = inward_normal.x * gx + inward_normal.y * gy;
            }
        }
    }
}

} // namespace billiard
