#ifndef BILLIARD_DYNAMICS_HPP
#define BILLIARD_DYNAMICS_HPP

#include <cstdint>
#include <vector>

#include "billiard/geometry.hpp"

/**
 * @file dynamics.hpp
 * @brief Bounce map of the full mushroom in Poincare-Birkhoff coordinates,
 *        SALI orbit classification and chaotic transport measurements.
 */
namespace billiard {

/// Point of the bounce map section: arclength s and tangential momentum p = sin(alpha).
struct PhasePoint {
    double s = 0.0;
    double p = 0.0;
};

enum class OrbitClass { Regular, Chaotic, Undetermined };

/// One application of the bounce map plus the data the tangent map needs.
struct BounceOutcome {
    PhasePoint next;
    double chord = 0.0;       ///< free-flight length between the collisions
    int segment = -1;         ///< segment hit
    double kappa_from = 0.0;  ///< curvature at departure
    double kappa_to = 0.0;    ///< curvature at arrival
    bool corner = false;      ///< landed within tolerance of a corner (orbit ends)
};

/// 2x2 tangent map of one bounce in (s, p).
struct TangentMap {
    double dsds = 0.0, dsdp = 0.0, dpds = 0.0, dpdp = 0.0;
};

/**
 * @brief Applies the bounce map once: exact ray/segment and ray/arc
 *        intersection followed by specular reflection.
 *
 * Requires |p| < 1. Landing within 1e-12 arclength of a corner sets the
 * corner flag instead of producing a next point.
 */
BounceOutcome bounce_step(const Billiard& billiard, const PhasePoint& point);

/// Convenience wrapper that throws on corner hits.
PhasePoint bounce(const Billiard& billiard, const PhasePoint& point);

/// Exact Jacobian of the bounce map for a step already taken.
TangentMap bounce_jacobian(const PhasePoint& from, const PhasePoint& to, const BounceOutcome& hit);

/**
 * @brief SALI classification: evolves two deviation vectors through the
 *        linearized map; exponential SALI collapse means chaos.
 *
 * Chaotic once SALI < 1e-8, regular if SALI > 1e-2 when the budget runs out,
 * undetermined in between or on a corner hit.
 */
OrbitClass classify_orbit(const Billiard& billiard, PhasePoint initial, int n_bounces);

/**
 * @brief Mean squared momentum of an ensemble started uniformly on p = 0,
 *        one entry per bounce count 0..n_bounces.
 */
std::vector<double> momentum_spread(const Billiard& billiard, int ensemble_size, int n_bounces,
                                    std::uint64_t seed);

struct TransportResult {
    std::vector<double> filling_curve;   ///< occupied fraction of the final occupancy, per bounce
    int transport_steps = 0;             ///< N_T: first bounce reaching the threshold
    int grid_resolution = 0;
    std::size_t occupied_cells = 0;      ///< cells visited within the budget
    double asymptotic_occupancy = 0.0;   ///< mean occupied cells over the final 10%
};

/**
 * @brief Chaotic transport time from the filling ratio of an (s, p) occupancy
 *        grid, ensemble started uniformly on p = 0.
 *
 * Throws when the occupancy has not stabilized within the bounce budget.
 */
TransportResult transport_time(const Billiard& billiard, std::size_t ensemble_size,
                               int grid_cells, double threshold, int bounce_budget,
                               std::uint64_t seed);

/// Localization parameter alpha = L k / (pi N_T), the Heisenberg/transport time ratio.
double localization_alpha(const Billiard& billiard, double k, double transport_steps);

/// First-visit bounce index per (s, p) cell, INT32_MAX where never visited.
std::vector<std::int32_t> first_visit_grid(const Billiard& billiard, std::size_t ensemble_size,
                                           int grid_cells, int bounce_budget, std::uint64_t seed);

} // namespace billiard

#endif
