#ifndef BILLIARD_GEOMETRY_HPP
#define BILLIARD_GEOMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "billiard/util.hpp"

/**
 * @file geometry.hpp
 * @brief Billiard boundaries as ordered line/arc segments with arclength
 *        parametrization, normals, curvature and closed-form measures.
 *
 * The mushroom family (full and desymmetrized half) is the production
 * geometry; the rectangle, disk and circular sector are built-in test
 * geometries with analytic Dirichlet spectra used as solver oracles.
 */
namespace billiard {

enum class SegmentKind { Line, Arc };

/**
 * @brief One boundary piece, traversed so that the interior lies on the left.
 *
 * Lines run from a to b. Arcs are swept counter-clockwise around center from
 * angle theta0 to theta1 (theta1 > theta0), so the inward normal of a convex
 * cap points at the center and the signed curvature is +1/radius.
 */
struct Segment {
    SegmentKind kind = SegmentKind::Line;
    Vec2 a, b;
    Vec2 center;
    double radius = 0.0;
    double theta0 = 0.0, theta1 = 0.0;
    bool on_symmetry_line = false;  ///< lies on the reflection axis of the full billiard
    bool basis_ray = false;         ///< straight edge through the basis origin where the corner basis vanishes

    [[nodiscard]] double length() const;
    /// Position at arclength t in [0, length] along the segment.
    [[nodiscard]] Vec2 point_at(double t) const;
    /// Unit tangent in the traversal direction.
    [[nodiscard]] Vec2 tangent_at(double t) const;
    /// Inward unit normal (tangent rotated by +90 degrees).
    [[nodiscard]] Vec2 normal_at(double t) const;
    /// Signed curvature: +1/radius on counter-clockwise arcs, 0 on lines.
    [[nodiscard]] double curvature() const;
};

/**
 * @brief A boundary point carrying everything the solvers need at a
 *        collocation / quadrature node.
 */
struct BoundaryPoint {
    double s = 0.0;        ///< global arclength from the billiard origin
    Vec2 position;
    Vec2 normal;           ///< inward unit normal
    double curvature = 0.0;
    double r_n = 0.0;      ///< (position - basis origin) . outward normal
    double weight = 0.0;   ///< quadrature weight (cell length or Gauss weight)
    int segment = 0;       ///< index of the owning segment
};

/// Which segments a sampling pass should visit.
enum class SegmentFilter {
    All,              ///< every segment
    PhysicalOnly,     ///< skip the symmetry line (method-of-images collocation)
    TensionActive,    ///< skip the basis rays (corner-adapted basis vanishes there)
};

/**
 * @brief A billiard domain: ordered segments, area, Weyl constants, interior test.
 */
class Billiard {
public:
    enum class Shape { MushroomHalf, MushroomFull, Rectangle, Disk, Sector };

    Billiard(Shape shape, std::vector<Segment> segments, double area, double corner_constant,
             Vec2 basis_origin, std::vector<double> params);

    [[nodiscard]] Shape shape() const { return shape_; }
    [[nodiscard]] const std::vector<Segment>& segments() const { return segments_; }
    [[nodiscard]] double perimeter() const { return perimeter_; }
    /// Perimeter restricted to segments passing the filter.
    [[nodiscard]] double perimeter(SegmentFilter filter) const;
    [[nodiscard]] double area() const { return area_; }
    /// Corner + curvature constant of the Weyl counting series.
    [[nodiscard]] double corner_constant() const { return corner_constant_; }
    [[nodiscard]] Vec2 basis_origin() const { return basis_origin_; }
    /// Stem half-width / width parameter for mushrooms; side lengths etc. otherwise.
    [[nodiscard]] const std::vector<double>& params() const { return params_; }

    /// Global arclength of the start of segment i.
    [[nodiscard]] double segment_start(int i) const { return offsets_[i]; }
    /// Position at global arclength s (wrapped into [0, perimeter)).
    [[nodiscard]] Vec2 point_at(double s) const;
    [[nodiscard]] Vec2 tangent_at(double s) const;
    /// Locate the owning segment and local arclength of global s.
    void locate(double s, int& segment, double& local) const;
    /// Arclength positions of all segment junctions (the corners).
    [[nodiscard]] std::vector<double> corner_arclengths() const;

    [[nodiscard]] bool contains(const Vec2& q) const;

    /// Axis-aligned bounding box (lo, hi corners).
    void bounding_box(Vec2& lo, Vec2& hi) const;

    /// Largest distance from the basis origin to the boundary.
    [[nodiscard]] double max_radius_from_origin() const;

    /**
     * @brief Midpoint sampling: n equal-arclength cells over the filtered
     *        segments, one point per cell center. Corners are cell edges or
     *        interior to no cell, never sample points.
     */
    [[nodiscard]] std::vector<BoundaryPoint> sample_midpoint(int n, SegmentFilter filter = SegmentFilter::All) const;

    /**
     * @brief Composite 8-point Gauss-Legendre sampling with at least
     *        points_per_unit nodes per unit arclength on each filtered segment.
     */
    [[nodiscard]] std::vector<BoundaryPoint> sample_gauss(double points_per_unit,
                                                          SegmentFilter filter = SegmentFilter::All) const;

private:
    [[nodiscard]] BoundaryPoint make_point(int seg, double local, double weight) const;

    Shape shape_;
    std::vector<Segment> segments_;
    std::vector<double> offsets_;
    double perimeter_ = 0.0;
    double area_ = 0.0;
    double corner_constant_ = 0.0;
    Vec2 basis_origin_;
    std::vector<double> params_;
};

/// Desymmetrized mushroom: quarter-circle cap (R=1), stem of width w, height 1.
Billiard make_half_mushroom(double w);
/// Full mushroom: semicircular cap (R=1), stem of width 2w, height 1.
Billiard make_full_mushroom(double w);
/// Axis-aligned rectangle [0,lx] x [0,ly].
Billiard make_rectangle(double lx, double ly);
/// Disk of radius R centered at the origin.
Billiard make_disk(double R);
/// Circular sector of the given opening angle and radius, corner at the origin.
Billiard make_sector(double opening, double R);

/**
 * @brief Relative Liouville measure of the chaotic component, Eq. closed form
 *        for the mushroom with R = h = 1.
 *
 * Monotonically increasing from mu_c(0) = 0 (semicircle) to mu_c(1) = 1
 * (half-stadium). Throws outside [0, 1].
 */
double mu_c(double w);

/// Mean level count N(E) = A E/(4 pi) - L sqrt(E)/(4 pi) + c for Dirichlet conditions.
double weyl_counting(const Billiard& billiard, double E);
/// Mean level density dN/dE.
double weyl_density(const Billiard& billiard, double E);
/// Same counting function expressed in the wavenumber k = sqrt(E).
double weyl_counting_k(const Billiard& billiard, double k);

} // namespace billiard

#endif
