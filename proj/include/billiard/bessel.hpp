#ifndef BILLIARD_BESSEL_HPP
#define BILLIARD_BESSEL_HPP

#include <complex>
#include <vector>

/**
 * @file bessel.hpp
 * @brief Bessel functions of the first kind of fractional order and Hankel
 *        functions of the first kind, in the regime the boundary solvers need.
 *
 * Orders of the form 2i/3 dominate: the corner-adapted basis requires whole
 * ladders J_{rho}, J_{rho+1}, ... at fixed argument. Single evaluations go
 * through GSL; ladders use downward recurrence seeded (or Miller-normalized)
 * against GSL so that an N-term ladder costs O(N) instead of N full
 * evaluations. Naive forward recurrence is useless here because the solvers
 * live deep in the turning-point region x ~ order.
 */
namespace billiard {

/// J_nu(x) for nu >= 0, x >= 0. Throws when (nu, x) leaves the supported budget.
double bessel_j(double order, double x);

/// Derivative J'_nu(x) for nu >= 0, x > 0.
double bessel_j_prime(double order, double x);

/**
 * @brief Values J_{rho + m}(x) for m = 0..count-1 at fixed argument.
 *
 * rho in [0, 1); works across the oscillatory and evanescent regions. Orders
 * whose values underflow to zero (deep turning-point region) come back as 0.
 */
std::vector<double> bessel_j_ladder(double rho, int count, double x);

/// n-th positive zero of J_nu, bracketed and bisected from the implementation.
double bessel_j_zero(double order, int n);

/// H^(1)_nu(x) = J_nu(x) + i Y_nu(x) for nu in {0, 1, 2}, x > 0.
std::complex<double> hankel1(int order, double x);

} // namespace billiard

#endif
