#ifndef BILLIARD_SOLVERS_HPP
#define BILLIARD_SOLVERS_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "billiard/basis.hpp"
#include "billiard/geometry.hpp"

/**
 * @file solvers.hpp
 * @brief Five boundary-based Helmholtz eigenvalue methods over a shared
 *        collocation substrate.
 *
 * The Vergini-Saraceno scaling method with the corner-adapted Fourier-Bessel
 * basis is the production path; the boundary-integral sweep (BIM), its
 * expanded window variant (EBIM), the decomposition method (DM) and the
 * particular-solutions method (PSM) serve as cross-checks.
 */
namespace billiard {

struct SolverOptions {
    double boundary_per_wavelength = 7.0;  ///< N_boundary = 7 k L / (2 pi)
    double basis_per_wavelength = 4.0;     ///< N_basis = 4 k L / (2 pi)
    double truncation_eps = 1e-15;         ///< spectral cut removing the nullspace of F
    int min_basis = 12;
    /// Re-center each accepted window level and solve once more (error ~ |k-k0|^3
    /// collapses to the window floor). Used where oracle precision is needed.
    bool polish = false;
};

struct SweepOptions {
    double step_fraction = 0.15;   ///< coarse step as a fraction of the local mean spacing
    double max_step = 0.15;
    double refine_tol = 1e-9;      ///< golden-section window in k
    double accept_ratio = 0.02;    ///< dip depth relative to the bracket shoulder
    double pair_ratio = 0.5;       ///< secondary dip ratio that triggers a split scan
    SolverOptions solver;
};

/// Eigenvalue window with basis-expansion coefficients (VS).
struct SolveWindow {
    double k0 = 0.0;
    double dk = 0.0;
    std::vector<double> levels;
    std::vector<Eigen::VectorXd> coefficients;  ///< one per level, corner-basis coefficients
    int n_basis = 0;
    int n_boundary = 0;
    int n_retained = 0;         ///< basis directions kept by the spectral cut
    double smallest_retained = 0.0;
    int discarded_spurious = 0;
};

/// EBIM window: accepted generalized eigenvalues with the quadratic correction applied.
struct EbimWindow {
    double k0 = 0.0;
    double dk = 0.0;
    std::vector<double> levels;
    std::vector<std::complex<double>> lambdas;
    bool rejected = false;          ///< ill-conditioned beyond budget
    double condition_estimate = 0.0;
    std::string diagnostic;
};

/**
 * @brief Fredholm matrix A(k) = I - ds Q(k) of the double-layer kernel, or its
 *        first/second k-derivative (deriv = 1, 2).
 *
 * Billiards with a symmetry-line segment are assembled with the antisymmetrized
 * (method of images) kernel on the physical boundary, selecting odd states.
 */
Eigen::MatrixXcd fredholm_matrix(const Billiard& billiard, double k,
                                 const std::vector<BoundaryPoint>& points, int deriv = 0);

/// Midpoint collocation grid for the Hankel-kernel methods at wavenumber k.
std::vector<BoundaryPoint> bim_collocation(const Billiard& billiard, double k,
                                           const SolverOptions& options = {});

/// Smallest singular values (first, second) of A(k); the BIM sweep detector.
std::pair<double, double> bim_detector(const Billiard& billiard, double k,
                                       const SolverOptions& options = {});

/// Eigenvalues in [k_min, k_max] from minima of the smallest singular value of A(k).
std::vector<double> bim_sweep(const Billiard& billiard, double k_min, double k_max,
                              const SweepOptions& options = {});

/// Expanded BIM: generalized eigenvalue window around k0.
EbimWindow ebim_window(const Billiard& billiard, double k0, double dk,
                       const SolverOptions& options = {});

/// Decomposition-method detector: two smallest tension eigenvalues of F u = lambda G u.
std::pair<double, double> dm_detector(const Billiard& billiard, double k,
                                      const SolverOptions& options = {});

/// Eigenvalues in [k_min, k_max] from minima of the DM tension.
std::vector<double> dm_sweep(const Billiard& billiard, double k_min, double k_max,
                             const SweepOptions& options = {});

/// Particular-solutions detector; n_interior = 0 picks 4 N_basis samples.
std::pair<double, double> psm_detector(const Billiard& billiard, double k, int n_interior,
                                       const SolverOptions& options = {});

std::vector<double> psm_sweep(const Billiard& billiard, double k_min, double k_max,
                              int n_interior = 0, const SweepOptions& options = {});

/// Quasi-uniform interior sample (low-discrepancy, clipped to the domain).
std::vector<Vec2> interior_sample(const Billiard& billiard, int count);

/// Vergini-Saraceno scaling window around k0 with half-width dk.
SolveWindow vs_window(const Billiard& billiard, double k0, double dk,
                      const SolverOptions& options = {});

/**
 * @brief Windows scheduled over [k_min, k_max] with stride 1.5 dk (adjacent
 *        windows overlap by dk/2), solved in parallel.
 */
std::vector<SolveWindow> vs_range(const Billiard& billiard, double k_min, double k_max,
                                  double dk, const SolverOptions& options = {});

/**
 * @brief Evaluates a VS eigenstate Psi(q) = sum_i x_i f_i(k; q) inside the domain.
 */
double eigenstate_value(const Billiard& billiard, double k, const Eigen::VectorXd& coefficients,
                        const Vec2& q);

/// Generic sweep engine shared by the detector-based methods (exposed for tests).
std::vector<double> sweep_levels(const std::function<std::pair<double, double>(double)>& detector,
                                 const Billiard& billiard, double k_min, double k_max,
                                 const SweepOptions& options);

} // namespace billiard

#endif
