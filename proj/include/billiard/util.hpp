#ifndef BILLIARD_UTIL_HPP
#define BILLIARD_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace billiard {

/**
 * @brief Two-dimensional point / vector with the usual arithmetic.
 */
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x, double y) : x(x), y(y) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double a) const { return {a * x, a * y}; }
    Vec2 operator/(double a) const { return {x / a, y / a}; }

    [[nodiscard]] double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    [[nodiscard]] double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    [[nodiscard]] double norm() const { return std::hypot(x, y); }
    [[nodiscard]] double squared_norm() const { return x * x + y * y; }
    [[nodiscard]] Vec2 normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::runtime_error("normalizing a zero-length vector");
        return {x / n, y / n};
    }
    /// Rotation by +90 degrees (counter-clockwise).
    [[nodiscard]] Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double a, const Vec2& v) { return {a * v.x, a * v.y}; }

/**
 * @brief Runs chunk_fn(begin, end) over a fixed partition of [0, n).
 *
 * The partition depends only on n and the worker count, so reductions that
 * merge per-chunk results in chunk order are reproducible run to run.
 */
void parallel_chunks(std::size_t n, int n_workers,
                     const std::function<void(int chunk, std::size_t begin, std::size_t end)>& chunk_fn);

/// Worker count used by parallel code paths (hardware concurrency by default).
int default_workers();

/// Adaptive quadrature of f over [a, b] (Gauss-Kronrod, absolute/relative targets).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double epsabs = 1e-12, double epsrel = 1e-10);

/// Adaptive quadrature of f over [a, inf).
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double epsabs = 1e-12, double epsrel = 1e-10);

/// Golden-section minimization of f on [a, b] to the requested x tolerance.
double golden_minimize(const std::function<double(double)>& f, double a, double b, double xtol);

/// Bisection root of f on a bracketing interval [a, b].
double bisect_root(const std::function<double(double)>& f, double a, double b, double xtol);

/// Nodes and weights of an 8-point Gauss-Legendre rule mapped to [a, b].
void gauss_legendre8(double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

/// FNV-1a hash of a byte string, used for config manifests.
std::uint64_t fnv1a(const std::string& bytes);

} // namespace billiard

#endif
