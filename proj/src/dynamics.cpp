#include "billiard/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace billiard {

using std::numbers::pi;

namespace {

constexpr double kCornerTol = 1e-12;   // arclength tolerance around corners
constexpr double kMinAdvance = 1e-10;  // reject intersections closer than this

struct RayHit {
    double t = std::numeric_limits<double>::infinity();
    int segment = -1;
    double local = 0.0;
};

/// Closest forward intersection of the ray q0 + t v with the boundary.
RayHit trace(const Billiard& billiard, const Vec2& q0, const Vec2& v) {
    RayHit best;
    const auto& segs = billiard.segments();
    for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
        const Segment& seg = segs[i];
        if (seg.kind == SegmentKind::Line) {
            const Vec2 d = seg.b - seg.a;
            const double len = d.norm();
            const Vec2 u = d / len;
            const double denom = v.cross(u);
            if (std::abs(denom) < 1e-15) continue;  // parallel
            const Vec2 rel = seg.a - q0;
            const double t = rel.cross(u) / denom;
            if (t < kMinAdvance || t >= best.t) continue;
            const double along = (q0 + t * v - seg.a).dot(u);
            if (along < -1e-12 || along > len + 1e-12) continue;
            best = {t, i, std::clamp(along, 0.0, len)};
        } else {
            const Vec2 d = q0 - seg.center;
            const double b = d.dot(v);
            const double c0 = d.squared_norm() - seg.radius * seg.radius;
            const double disc = b * b - c0;
            if (disc < 0.0) continue;
            const double root = std::sqrt(disc);
            for (double t : {-b - root, -b + root}) {
                if (t < kMinAdvance || t >= best.t) continue;
                const Vec2 hit = q0 + t * v - seg.center;
                double theta = std::atan2(hit.y, hit.x);
                while (theta < seg.theta0 - 1e-12) theta += 2.0 * pi;
                if (theta > seg.theta1 + 1e-12) continue;
                const double local = std::clamp((theta - seg.theta0) * seg.radius, 0.0,
                                                seg.length());
                best = {t, i, local};
            }
        }
    }
    return best;
}

} // namespace

BounceOutcome bounce_step(const Billiard& billiard, const PhasePoint& point) {
    if (!(std::abs(point.p) < 1.0)) {
        throw std::domain_error("bounce requires |p| < 1 (grazing orbits are singular)");
    }
    int seg_idx;
    double local;
    billiard.locate(point.s, seg_idx, local);
    const Segment& seg = billiard.segments()[seg_idx];
    const Vec2 q0 = seg.point_at(local);
    const Vec2 tangent = seg.tangent_at(local);
    const Vec2 normal = tangent.perp();
    const double cos_a = std::sqrt(1.0 - point.p * point.p);
    const Vec2 v = point.p * tangent + cos_a * normal;

    BounceOutcome out;
    out.kappa_from = seg.curvature();

    const RayHit hit = trace(billiard, q0, v);
    if (hit.segment < 0) {
        out.corner = true;  // numerically grazing escape, treat like a corner
        return out;
    }
    const Segment& target = billiard.segments()[hit.segment];
    const double len = target.length();
    if (hit.local < kCornerTol || hit.local > len - kCornerTol) {
        out.corner = true;
        return out;
    }

    const Vec2 n1 = target.normal_at(hit.local);
    const Vec2 t1 = target.tangent_at(hit.local);
    const Vec2 reflected = v - 2.0 * v.dot(n1) * n1;

    out.next.s = billiard.segment_start(hit.segment) + hit.local;
    out.next.p = reflected.dot(t1);
    out.chord = hit.t;
    out.segment = hit.segment;
    out.kappa_to = target.curvature();
    return out;
}

PhasePoint bounce(const Billiard& billiard, const PhasePoint& point) {
    const BounceOutcome out = bounce_step(billiard, point);
    if (out.corner) throw std::runtime_error("orbit hit a corner");
    return out.next;
}

TangentMap bounce_jacobian(const PhasePoint& from, const PhasePoint& to, const BounceOutcome& hit) {
    const double c0 = std::sqrt(1.0 - from.p * from.p);
    const double c1 = std::sqrt(1.0 - to.p * to.p);
    const double tau = hit.chord;
    const double k0 = hit.kappa_from;
    const double k1 = hit.kappa_to;
    TangentMap m;
    m.dsds = (tau * k0 - c0) / c1;
    m.dsdp = -tau / (c0 * c1);
    m.dpds = c0 * k1 + c1 * k0 - tau * k0 * k1;
    m.dpdp = (tau * k1 - c1) / c0;
    return m;
}

OrbitClass classify_orbit(const Billiard& billiard, PhasePoint state, int n_bounces) {
    if (n_bounces < 100) throw std::invalid_argument("classification needs at least 100 bounces");
    double w1s = 1.0, w1p = 0.0;
    double w2s = 0.0, w2p = 1.0;
    double sali = 2.0;
    for (int n = 0; n < n_bounces; ++n) {
        const BounceOutcome out = bounce_step(billiard, state);
        if (out.corner) return OrbitClass::Undetermined;
        const TangentMap m = bounce_jacobian(state, out.next, out);
        state = out.next;

        double a1s = m.dsds * w1s + m.dsdp * w1p;
        double a1p = m.dpds * w1s + m.dpdp * w1p;
        double a2s = m.dsds * w2s + m.dsdp * w2p;
        double a2p = m.dpds * w2s + m.dpdp * w2p;
        const double n1 = std::hypot(a1s, a1p);
        const double n2 = std::hypot(a2s, a2p);
        if (n1 == 0.0 || n2 == 0.0) return OrbitClass::Undetermined;
        w1s = a1s / n1;
        w1p = a1p / n1;
        w2s = a2s / n2;
        w2p = a2p / n2;

        const double plus = std::hypot(w1s + w2s, w1p + w2p);
        const double minus = std::hypot(w1s - w2s, w1p - w2p);
        sali = std::min(plus, minus);
        if (sali < 1e-8) return OrbitClass::Chaotic;
    }
    // Regular orbits of a 2D area-preserving map lose alignment only
    // algebraically (deviation vectors shear together like 1/n), so the
    // regularity floor scales with the budget instead of sitting at a
    // fixed SALI value.
    return sali * static_cast<double>(n_bounces) > 5e-2 ? OrbitClass::Regular
                                                        : OrbitClass::Undetermined;
}

namespace {

/// Deterministic near-uniform ensemble on the p = 0 line, jittered to avoid
/// hitting corners and rational resonances with the occupancy grid.
std::vector<PhasePoint> line_ensemble(const Billiard& billiard, std::size_t count,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.05, 0.95);
    const double L = billiard.perimeter();
    std::vector<PhasePoint> points(count);
    for (std::size_t i = 0; i < count; ++i) {
        points[i].s = (static_cast<double>(i) + jitter(rng)) * L / static_cast<double>(count);
        points[i].p = 0.0;
    }
    return points;
}

} // namespace

std::vector<double> momentum_spread(const Billiard& billiard, int ensemble_size, int n_bounces,
                                    std::uint64_t seed) {
    if (ensemble_size < 1) throw std::invalid_argument("empty ensemble");
    auto ensemble = line_ensemble(billiard, static_cast<std::size_t>(ensemble_size), seed);
    std::vector<double> second_moment(n_bounces + 1, 0.0);
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(default_workers()),
                                             std::vector<double>(n_bounces + 1, 0.0));
    std::vector<std::size_t> counts(partial.size(), 0);

    parallel_chunks(ensemble.size(), static_cast<int>(partial.size()),
                    [&](int chunk, std::size_t begin, std::size_t end) {
        auto& acc = partial[chunk];
        for (std::size_t i = begin; i < end; ++i) {
            PhasePoint state = ensemble[i];
            bool alive = true;
            acc[0] += state.p * state.p;
            for (int n = 1; n <= n_bounces && alive; ++n) {
                const BounceOutcome out = bounce_step(billiard, state);
                if (out.corner || !(std::abs(out.next.p) < 1.0)) {
                    alive = false;
                    break;
                }
                state = out.next;
                acc[n] += state.p * state.p;
            }
            if (alive) ++counts[chunk];
        }
    });

    std::size_t alive_total = 0;
    for (std::size_t c = 0; c < partial.size(); ++c) {
        alive_total += counts[c];
        for (int n = 0; n <= n_bounces; ++n) second_moment[n] += partial[c][n];
    }
    if (alive_total == 0) throw std::runtime_error("entire ensemble terminated on corners");
    for (auto& v : second_moment) v /= static_cast<double>(alive_total);
    return second_moment;
}

std::vector<std::int32_t> first_visit_grid(const Billiard& billiard, std::size_t ensemble_size,
                                           int grid_cells, int bounce_budget, std::uint64_t seed) {
    const double L = billiard.perimeter();
    const std::size_t cells = static_cast<std::size_t>(grid_cells) * grid_cells;
    const std::int32_t never = std::numeric_limits<std::int32_t>::max();
    auto ensemble = line_ensemble(billiard, ensemble_size, seed);

    const int workers = default_workers();
    std::vector<std::vector<std::int32_t>> partial(workers,
                                                   std::vector<std::int32_t>(cells, never));

    parallel_chunks(ensemble.size(), workers, [&](int chunk, std::size_t begin, std::size_t end) {
        auto& grid = partial[chunk];
        for (std::size_t i = begin; i < end; ++i) {
            PhasePoint state = ensemble[i];
            for (int n = 0; n <= bounce_budget; ++n) {
                const int si = std::min(grid_cells - 1,
                                        static_cast<int>(state.s / L * grid_cells));
                const int pi_ = std::min(grid_cells - 1,
                                         static_cast<int>((state.p + 1.0) * 0.5 * grid_cells));
                auto& cell = grid[static_cast<std::size_t>(si) * grid_cells + pi_];
                cell = std::min(cell, n);
                if (n == bounce_budget) break;
                const BounceOutcome out = bounce_step(billiard, state);
                if (out.corner || !(std::abs(out.next.p) < 1.0)) break;
                state = out.next;
            }
        }
    });

    std::vector<std::int32_t> merged(cells, never);
    for (const auto& grid : partial) {
        for (std::size_t c = 0; c < cells; ++c) merged[c] = std::min(merged[c], grid[c]);
    }
    return merged;
}

TransportResult transport_time(const Billiard& billiard, std::size_t ensemble_size,
                               int grid_cells, double threshold, int bounce_budget,
                               std::uint64_t seed) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw std::invalid_argument("threshold must lie in (0, 1)");
    }
    if (ensemble_size == 0) throw std::invalid_argument("empty ensemble");

    const auto first = first_visit_grid(billiard, ensemble_size, grid_cells, bounce_budget, seed);

    // Cumulative count of cells first visited by bounce n.
    std::vector<std::size_t> occupied(bounce_budget + 1, 0);
    for (const auto v : first) {
        if (v <= bounce_budget) ++occupied[v];
    }
    for (int n = 1; n <= bounce_budget; ++n) occupied[n] += occupied[n - 1];

    const int tail_start = bounce_budget - std::max(1, bounce_budget / 10);
    double asymptotic = 0.0;
    for (int n = tail_start; n <= bounce_budget; ++n) asymptotic += static_cast<double>(occupied[n]);
    asymptotic /= static_cast<double>(bounce_budget - tail_start + 1);

    const double final_occ = static_cast<double>(occupied[bounce_budget]);
    const double tail_growth =
        (final_occ - static_cast<double>(occupied[tail_start])) / final_occ;
    if (tail_growth > 0.02) {
        throw std::runtime_error("occupancy still growing at the end of the bounce budget (" +
                                 std::to_string(tail_growth * 100.0) + "% over the final 10%)");
    }

    TransportResult result;
    result.grid_resolution = grid_cells;
    result.occupied_cells = occupied[bounce_budget];
    result.asymptotic_occupancy = asymptotic;
    result.filling_curve.resize(bounce_budget + 1);
    for (int n = 0; n <= bounce_budget; ++n) {
        result.filling_curve[n] = static_cast<double>(occupied[n]) / final_occ;
    }
    result.transport_steps = bounce_budget;
    for (int n = 0; n <= bounce_budget; ++n) {
        if (static_cast<double>(occupied[n]) >= threshold * asymptotic) {
            result.transport_steps = n;
            break;
        }
    }
    return result;
}

double localization_alpha(const Billiard& billiard, double k, double transport_steps) {
    if (!(k > 0.0) || !(transport_steps >= 1.0)) {
        throw std::invalid_argument("alpha requires k > 0 and N_T >= 1");
    }
    return billiard.perimeter() * k / (pi * transport_steps);
}

} // namespace billiard
