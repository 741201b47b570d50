#include "billiard/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace billiard {

using std::numbers::pi;

double Segment::length() const {
    if (kind == SegmentKind::Line) return (b - a).norm();
    return radius * (theta1 - theta0);
}

Vec2 Segment::point_at(double t) const {
    if (kind == SegmentKind::Line) {
        const double len = length();
        const double u = len > 0.0 ? t / len : 0.0;
        return a + u * (b - a);
    }
    const double theta = theta0 + t / radius;
    return center + Vec2{radius * std::cos(theta), radius * std::sin(theta)};
}

Vec2 Segment::tangent_at(double t) const {
    if (kind == SegmentKind::Line) return (b - a).normalized();
    const double theta = theta0 + t / radius;
    return {-std::sin(theta), std::cos(theta)};
}

Vec2 Segment::normal_at(double t) const { return tangent_at(t).perp(); }

double Segment::curvature() const {
    return kind == SegmentKind::Arc ? 1.0 / radius : 0.0;
}

Billiard::Billiard(Shape shape, std::vector<Segment> segments, double area, double corner_constant,
                   Vec2 basis_origin, std::vector<double> params)
    : shape_(shape),
      segments_(std::move(segments)),
      area_(area),
      corner_constant_(corner_constant),
      basis_origin_(basis_origin),
      params_(std::move(params)) {
    offsets_.reserve(segments_.size() + 1);
    double s = 0.0;
    for (const auto& seg : segments_) {
        offsets_.push_back(s);
        s += seg.length();
    }
    offsets_.push_back(s);
    perimeter_ = s;
    // Segment endpoints must match head-to-tail for a closed curve.
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& cur = segments_[i];
        const auto& nxt = segments_[(i + 1) % segments_.size()];
        const Vec2 end = cur.point_at(cur.length());
        const Vec2 start = nxt.point_at(0.0);
        if ((end - start).norm() > 1e-12) {
            throw std::runtime_error("billiard boundary is not closed at segment " + std::to_string(i));
        }
    }
}

double Billiard::perimeter(SegmentFilter filter) const {
    double total = 0.0;
    for (const auto& seg : segments_) {
        if (filter == SegmentFilter::PhysicalOnly && seg.on_symmetry_line) continue;
        if (filter == SegmentFilter::TensionActive && seg.basis_ray) continue;
        total += seg.length();
    }
    return total;
}

void Billiard::locate(double s, int& segment, double& local) const {
    s = std::fmod(s, perimeter_);
    if (s < 0.0) s += perimeter_;
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), s);
    segment = static_cast<int>(it - offsets_.begin()) - 1;
    segment = std::clamp(segment, 0, static_cast<int>(segments_.size()) - 1);
    local = s - offsets_[segment];
}

Vec2 Billiard::point_at(double s) const {
    int seg;
    double local;
    locate(s, seg, local);
    return segments_[seg].point_at(local);
}

Vec2 Billiard::tangent_at(double s) const {
    int seg;
    double local;
    locate(s, seg, local);
    return segments_[seg].tangent_at(local);
}

std::vector<double> Billiard::corner_arclengths() const {
    std::vector<double> corners(offsets_.begin(), offsets_.end() - 1);
    return corners;
}

bool Billiard::contains(const Vec2& q) const {
    switch (shape_) {
        case Shape::MushroomHalf: {
            const double w = params_[0];
            if (q.x < 0.0) return false;
            if (q.y >= 0.0) return q.squared_norm() < 1.0;
            return q.x < w && q.y > -1.0;
        }
        case Shape::MushroomFull: {
            const double w = params_[0];
            if (q.y >= 0.0) return q.squared_norm() < 1.0;
            return std::abs(q.x) < w && q.y > -1.0;
        }
        case Shape::Rectangle:
            return q.x > 0.0 && q.x < params_[0] && q.y > 0.0 && q.y < params_[1];
        case Shape::Disk:
            return q.squared_norm() < params_[0] * params_[0];
        case Shape::Sector: {
            const double opening = params_[0], R = params_[1];
            if (q.squared_norm() >= R * R) return false;
            double phi = std::atan2(q.y, q.x);
            if (phi < 0.0) phi += 2.0 * pi;
            return phi > 0.0 && phi < opening;
        }
    }
    return false;
}

void Billiard::bounding_box(Vec2& lo, Vec2& hi) const {
    lo = {1e300, 1e300};
    hi = {-1e300, -1e300};
    for (const auto& seg : segments_) {
        const double len = seg.length();
        const int steps = seg.kind == SegmentKind::Line ? 1 : 64;
        for (int i = 0; i <= steps; ++i) {
            const Vec2 q = seg.point_at(len * i / steps);
            lo.x = std::min(lo.x, q.x);
            lo.y = std::min(lo.y, q.y);
            hi.x = std::max(hi.x, q.x);
            hi.y = std::max(hi.y, q.y);
        }
    }
}

double Billiard::max_radius_from_origin() const {
    double r = 0.0;
    for (const auto& seg : segments_) {
        const double len = seg.length();
        const int steps = seg.kind == SegmentKind::Line ? 1 : 128;
        for (int i = 0; i <= steps; ++i) {
            r = std::max(r, (seg.point_at(len * i / steps) - basis_origin_).norm());
        }
    }
    return r;
}

BoundaryPoint Billiard::make_point(int seg, double local, double weight) const {
    const Segment& segment = segments_[seg];
    BoundaryPoint p;
    p.s = offsets_[seg] + local;
    p.position = segment.point_at(local);
    p.normal = segment.normal_at(local);
    p.curvature = segment.curvature();
    // r_n uses the outward normal so that the scaling-method weight is positive
    // for boundaries star-shaped about the basis origin.
    p.r_n = (p.position - basis_origin_).dot(-1.0 * p.normal);
    p.weight = weight;
    p.segment = seg;
    return p;
}

std::vector<BoundaryPoint> Billiard::sample_midpoint(int n, SegmentFilter filter) const {
    if (n < 8) throw std::invalid_argument("sample_midpoint requires n >= 8");
    std::vector<int> active;
    double total = 0.0;
    for (int i = 0; i < static_cast<int>(segments_.size()); ++i) {
        const auto& seg = segments_[i];
        if (filter == SegmentFilter::PhysicalOnly && seg.on_symmetry_line) continue;
        if (filter == SegmentFilter::TensionActive && seg.basis_ray) continue;
        active.push_back(i);
        total += seg.length();
    }

    // Cells are laid out per segment (largest-remainder apportionment of n),
    // so corners are always cell boundaries, never straddled and never sampled.
    std::vector<int> counts(active.size(), 1);
    std::vector<double> fractions(active.size());
    int assigned = static_cast<int>(active.size());
    for (std::size_t a = 0; a < active.size(); ++a) {
        const double ideal = segments_[active[a]].length() / total * n;
        const int extra = std::max(0, static_cast<int>(std::floor(ideal)) - 1);
        counts[a] += extra;
        assigned += extra;
        fractions[a] = ideal - std::floor(ideal);
    }
    while (assigned < n) {
        std::size_t best = 0;
        for (std::size_t a = 1; a < active.size(); ++a) {
            if (fractions[a] > fractions[best]) best = a;
        }
        ++counts[best];
        fractions[best] = -1.0;
        ++assigned;
    }

    std::vector<BoundaryPoint> points;
    points.reserve(n);
    for (std::size_t a = 0; a < active.size(); ++a) {
        const double len = segments_[active[a]].length();
        const double ds = len / counts[a];
        for (int j = 0; j < counts[a]; ++j) {
            points.push_back(make_point(active[a], (j + 0.5) * ds, ds));
        }
    }
    return points;
}

std::vector<BoundaryPoint> Billiard::sample_gauss(double points_per_unit, SegmentFilter filter) const {
    std::vector<BoundaryPoint> points;
    std::vector<double> nodes, weights;
    for (int i = 0; i < static_cast<int>(segments_.size()); ++i) {
        const auto& seg = segments_[i];
        if (filter == SegmentFilter::PhysicalOnly && seg.on_symmetry_line) continue;
        if (filter == SegmentFilter::TensionActive && seg.basis_ray) continue;
        const double len = seg.length();
        const int target = std::max(8, static_cast<int>(std::ceil(points_per_unit * len)));
        const int panels = (target + 7) / 8;
        const double panel_len = len / panels;
        for (int p = 0; p < panels; ++p) {
            gauss_legendre8(p * panel_len, (p + 1) * panel_len, nodes, weights);
            for (int q = 0; q < 8; ++q) points.push_back(make_point(i, nodes[q], weights[q]));
        }
    }
    return points;
}

namespace {

/// Dirichlet corner term of the Weyl series for interior angle theta.
double corner_term(double theta) { return (pi * pi - theta * theta) / (24.0 * pi * theta); }

Segment line(Vec2 a, Vec2 b) {
    Segment s;
    s.kind = SegmentKind::Line;
    s.a = a;
    s.b = b;
    return s;
}

Segment arc(Vec2 center, double radius, double theta0, double theta1) {
    Segment s;
    s.kind = SegmentKind::Arc;
    s.center = center;
    s.radius = radius;
    s.theta0 = theta0;
    s.theta1 = theta1;
    s.a = center + Vec2{radius * std::cos(theta0), radius * std::sin(theta0)};
    s.b = center + Vec2{radius * std::cos(theta1), radius * std::sin(theta1)};
    return s;
}

void check_stem_width(double w) {
    if (!(w > 0.0 && w < 1.0)) throw std::invalid_argument("stem width must satisfy 0 < w < 1");
}

} // namespace

Billiard make_half_mushroom(double w) {
    check_stem_width(w);
    // Anti-clockwise from the reentrant corner at (w, 0): hat underside, cap
    // arc, symmetry line, stem bottom, stem side. The corner-adapted basis
    // vanishes on the hat underside (polar angle 0 about the corner) and the
    // stem side (angle 3 pi / 2).
    Segment hat = line({w, 0.0}, {1.0, 0.0});
    hat.basis_ray = true;
    Segment cap = arc({0.0, 0.0}, 1.0, 0.0, pi / 2.0);
    Segment sym = line({0.0, 1.0}, {0.0, -1.0});
    sym.on_symmetry_line = true;
    Segment bottom = line({0.0, -1.0}, {w, -1.0});
    Segment side = line({w, -1.0}, {w, 0.0});
    side.basis_ray = true;

    // Four right-angle corners, one reentrant 3 pi / 2 corner, quarter arc.
    const double c = 4.0 * corner_term(pi / 2.0) + corner_term(1.5 * pi) + (pi / 2.0) / (12.0 * pi);
    const double area = w + pi / 4.0;
    return Billiard(Billiard::Shape::MushroomHalf, {hat, cap, sym, bottom, side}, area, c,
                    {w, 0.0}, {w});
}

Billiard make_full_mushroom(double w) {
    check_stem_width(w);
    // Anti-clockwise from (1, 0): cap arc over the top, left hat underside,
    // left stem side, stem bottom, right stem side, right hat underside.
    Segment cap = arc({0.0, 0.0}, 1.0, 0.0, pi);
    Segment hat_l = line({-1.0, 0.0}, {-w, 0.0});
    Segment side_l = line({-w, 0.0}, {-w, -1.0});
    Segment bottom = line({-w, -1.0}, {w, -1.0});
    Segment side_r = line({w, -1.0}, {w, 0.0});
    Segment hat_r = line({w, 0.0}, {1.0, 0.0});

    const double c = 4.0 * corner_term(pi / 2.0) + 2.0 * corner_term(1.5 * pi) + pi / (12.0 * pi);
    const double area = 2.0 * w + pi / 2.0;
    return Billiard(Billiard::Shape::MushroomFull, {cap, hat_l, side_l, bottom, side_r, hat_r},
                    area, c, {w, 0.0}, {w});
}

Billiard make_rectangle(double lx, double ly) {
    if (lx <= 0.0 || ly <= 0.0) throw std::invalid_argument("rectangle sides must be positive");
    Segment s0 = line({0.0, 0.0}, {lx, 0.0});
    Segment s1 = line({lx, 0.0}, {lx, ly});
    Segment s2 = line({lx, ly}, {0.0, ly});
    Segment s3 = line({0.0, ly}, {0.0, 0.0});
    const double c = 4.0 * corner_term(pi / 2.0);
    return Billiard(Billiard::Shape::Rectangle, {s0, s1, s2, s3}, lx * ly, c,
                    {lx / 2.0, ly / 2.0}, {lx, ly});
}

Billiard make_disk(double R) {
    if (R <= 0.0) throw std::invalid_argument("disk radius must be positive");
    Segment s = arc({0.0, 0.0}, R, 0.0, 2.0 * pi);
    const double c = (2.0 * pi / R) / (12.0 * pi);
    return Billiard(Billiard::Shape::Disk, {s}, pi * R * R, c, {0.0, 0.0}, {R});
}

Billiard make_sector(double opening, double R) {
    if (!(opening > 0.0 && opening < 2.0 * pi) || R <= 0.0) {
        throw std::invalid_argument("sector requires opening in (0, 2 pi) and positive radius");
    }
    Segment e0 = line({0.0, 0.0}, {R, 0.0});
    e0.basis_ray = true;
    Segment rim = arc({0.0, 0.0}, R, 0.0, opening);
    Segment e1 = line({R * std::cos(opening), R * std::sin(opening)}, {0.0, 0.0});
    e1.basis_ray = true;
    const double c = corner_term(opening) + 2.0 * corner_term(pi / 2.0) + opening / (12.0 * pi);
    return Billiard(Billiard::Shape::Sector, {e0, rim, e1}, 0.5 * opening * R * R, c,
                    {0.0, 0.0}, {opening, R});
}

double mu_c(double w) {
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("mu_c requires w in [0, 1]");
    // Circular-segment measure of the regular cap orbits, R = h = 1.
    const double seg = std::acos(w) - w * std::sqrt(1.0 - w * w);
    return 1.0 - 0.5 * seg / (w + pi / 4.0);
}

double weyl_counting(const Billiard& billiard, double E) {
    if (E < 0.0) throw std::invalid_argument("weyl_counting requires E >= 0");
    return billiard.area() * E / (4.0 * pi) - billiard.perimeter() * std::sqrt(E) / (4.0 * pi) +
           billiard.corner_constant();
}

double weyl_density(const Billiard& billiard, double E) {
    if (E <= 0.0) throw std::invalid_argument("weyl_density requires E > 0");
    return billiard.area() / (4.0 * pi) - billiard.perimeter() / (8.0 * pi * std::sqrt(E));
}

double weyl_counting_k(const Billiard& billiard, double k) {
    return weyl_counting(billiard, k * k);
}

} // namespace billiard
