#ifndef BILLIARD_BASIS_HPP
#define BILLIARD_BASIS_HPP

#include <vector>

#include "billiard/geometry.hpp"

/**
 * @file basis.hpp
 * @brief Corner-adapted Fourier-Bessel basis f_i(k; r, phi) =
 *        J_{2i/3}(k r) sin(2 i phi / 3) about the reentrant corner.
 *
 * The fractional orders make every basis function vanish identically on the
 * two straight edges meeting at the corner (polar angles 0 and 3 pi / 2), so
 * the Dirichlet condition there is satisfied by construction.
 */
namespace billiard {

/// What eval_point should fill in.
struct BasisRequest {
    bool values = true;
    bool k_derivatives = false;   ///< d f_i / d k
    bool normal_derivatives = false;
    bool gradients = false;
};

/// Per-point basis data, one entry per basis function.
struct BasisEval {
    std::vector<double> value;
    std::vector<double> k_deriv;
    std::vector<double> n_deriv;
    std::vector<double> grad_x;
    std::vector<double> grad_y;
};

class CornerBasis {
public:
    /// count basis functions about the given corner origin.
    CornerBasis(Vec2 origin, int count);

    [[nodiscard]] int size() const { return count_; }
    [[nodiscard]] Vec2 origin() const { return origin_; }
    /// Fractional order 2 i / 3 of basis function i (1-based index).
    [[nodiscard]] static double order(int i) { return 2.0 * i / 3.0; }

    /**
     * @brief Evaluates the requested quantities for every basis function at q.
     *
     * The inward normal is only needed when normal derivatives are requested.
     * All Bessel orders are produced by three residue-class ladders per point.
     */
    void eval_point(double k, const Vec2& q, const Vec2& inward_normal,
                    const BasisRequest& request, BasisEval& out) const;

    /// Semiclassical minimum basis size 3 k r_max / 2 from the turning-point rule.
    static int semiclassical_size(double k, double r_max);

private:
    Vec2 origin_;
    int count_;
};

} // namespace billiard

#endif
