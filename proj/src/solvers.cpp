#include "billiard/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "billiard/bessel.hpp"

namespace billiard {

using std::numbers::pi;
using Complex = std::complex<double>;

namespace {

constexpr Complex kImag{0.0, 1.0};

bool has_symmetry_line(const Billiard& b) {
    for (const auto& seg : b.segments()) {
        if (seg.on_symmetry_line) return true;
    }
    return false;
}

/// Mean level density dN/dk of the Weyl series (floored away from zero).
double weyl_dk(const Billiard& b, double k) {
    const double d = b.area() * k / (2.0 * pi) - b.perimeter() / (4.0 * pi);
    return std::max(d, 0.25);
}

/// Collocation sizes change only at 5-unit k steps so sweep detectors stay
/// piecewise-smooth inside any refinement bracket.
double size_key(double k) { return 5.0 * std::ceil(k / 5.0); }

int basis_count(const Billiard& b, double k, const SolverOptions& opt) {
    const double L = b.perimeter();
    const int from_rule = static_cast<int>(std::ceil(opt.basis_per_wavelength * k * L / (2.0 * pi)));
    const int semiclassical = CornerBasis::semiclassical_size(k, b.max_radius_from_origin()) + 2;
    return std::max({from_rule, semiclassical, opt.min_basis});
}

double boundary_density(double k, const SolverOptions& opt) {
    return std::max(opt.boundary_per_wavelength * k / (2.0 * pi), 4.0);
}

/// Double-layer kernel (deriv = 0) and its first two k-derivatives.
Complex kernel_value(double k, double cos_phi, double tau, int deriv) {
    const double x = k * tau;
    switch (deriv) {
        case 0:
            return -kImag * (0.5 * k) * cos_phi * hankel1(1, x);
        case 1:
            return -kImag * (0.5 * k) * cos_phi * tau * hankel1(0, x);
        default:
            return kImag / (2.0 * k) * cos_phi *
                   ((x * x - 2.0) * hankel1(1, x) + x * hankel1(2, x));
    }
}

} // namespace

std::vector<BoundaryPoint> bim_collocation(const Billiard& billiard, double k,
                                           const SolverOptions& options) {
    const bool images = has_symmetry_line(billiard);
    const auto filter = images ? SegmentFilter::PhysicalOnly : SegmentFilter::All;
    const double length = billiard.perimeter(filter);
    const double k_size = size_key(k);
    const int n = std::max(64, static_cast<int>(std::ceil(
                                    options.boundary_per_wavelength * k_size * length / (2.0 * pi))));
    return billiard.sample_midpoint(n, filter);
}

Eigen::MatrixXcd fredholm_matrix(const Billiard& billiard, double k,
                                 const std::vector<BoundaryPoint>& points, int deriv) {
    const bool images = has_symmetry_line(billiard);
    const int n = static_cast<int>(points.size());
    Eigen::MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i) {
        const Vec2 qi = points[i].position;
        // The angle factor uses the outward normal; with it the diagonal limit
        // is -kappa/(2 pi) and the singular values dip at the interior
        // Dirichlet eigenvalues (checked against the disk spectrum).
        const Vec2 n_out = -1.0 * points[i].normal;
        for (int j = 0; j < n; ++j) {
            Complex q_total;
            if (i == j) {
                q_total = deriv == 0 ? Complex(-points[i].curvature / (2.0 * pi), 0.0)
                                     : Complex(0.0, 0.0);
            } else {
                const Vec2 d = qi - points[j].position;
                const double tau = d.norm();
                q_total = kernel_value(k, n_out.dot(d) / tau, tau, deriv);
            }
            if (images) {
                const Vec2 mirrored{-points[j].position.x, points[j].position.y};
                const Vec2 d = qi - mirrored;
                const double tau = d.norm();
                q_total -= kernel_value(k, n_out.dot(d) / tau, tau, deriv);
            }
            const double identity = (deriv == 0 && i == j) ? 1.0 : 0.0;
            A(i, j) = identity - points[j].weight * q_total;
        }
    }
    return A;
}

std::pair<double, double> bim_detector(const Billiard& billiard, double k,
                                       const SolverOptions& options) {
    const auto points = bim_collocation(billiard, k, options);
    const Eigen::MatrixXcd A = fredholm_matrix(billiard, k, points, 0);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    const auto& sv = svd.singularValues();
    const int n = static_cast<int>(sv.size());
    return {sv(n - 1), n >= 2 ? sv(n - 2) : sv(n - 1)};
}

std::vector<double> sweep_levels(const std::function<std::pair<double, double>(double)>& detector,
                                 const Billiard& billiard, double k_min, double k_max,
                                 const SweepOptions& options) {
    struct Node {
        double k;
        double primary;
        double secondary;
    };
    // One extra step on each side so dips at the range ends are bracketed;
    // accepted levels are clipped back to [k_min, k_max].
    std::vector<Node> grid;
    double k = std::max(k_min - options.step_fraction / weyl_dk(billiard, k_min), 0.5);
    const double k_stop = k_max + options.max_step;
    while (k <= k_stop) {
        const auto [p, s] = detector(k);
        grid.push_back({k, p, s});
        const double step = std::min(options.max_step,
                                     options.step_fraction / weyl_dk(billiard, k));
        k += step;
    }

    std::vector<double> levels;
    auto refine_and_accept = [&](double lo, double hi, double shoulder) {
        const double k_star = golden_minimize(
            [&](double kk) { return detector(kk).first; }, lo, hi, options.refine_tol);
        const auto [p_star, s_star] = detector(k_star);
        if (p_star < options.accept_ratio * shoulder) {
            levels.push_back(k_star);
            // A small second singular value flags an unresolved close pair:
            // rescan the bracket finely and refine every interior dip.
            if (s_star < options.pair_ratio * shoulder) {
                const int fine = 80;
                std::vector<double> vals(fine + 1);
                for (int i = 0; i <= fine; ++i) {
                    vals[i] = detector(lo + (hi - lo) * i / fine).first;
                }
                for (int i = 1; i < fine; ++i) {
                    if (vals[i] < vals[i - 1] && vals[i] < vals[i + 1]) {
                        const double kk = golden_minimize(
                            [&](double kx) { return detector(kx).first; },
                            lo + (hi - lo) * (i - 1) / fine, lo + (hi - lo) * (i + 1) / fine,
                            options.refine_tol);
                        if (detector(kk).first < options.accept_ratio * shoulder) {
                            levels.push_back(kk);
                        }
                    }
                }
            }
        }
    };

    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (grid[i].primary < grid[i - 1].primary && grid[i].primary < grid[i + 1].primary) {
            const double shoulder = std::max(grid[i - 1].primary, grid[i + 1].primary);
            refine_and_accept(grid[i - 1].k, grid[i + 1].k, shoulder);
        }
    }

    std::sort(levels.begin(), levels.end());
    std::vector<double> unique;
    for (double v : levels) {
        if (v < k_min || v > k_max) continue;
        if (unique.empty() || v - unique.back() > 50.0 * options.refine_tol) unique.push_back(v);
    }
    return unique;
}

std::vector<double> bim_sweep(const Billiard& billiard, double k_min, double k_max,
                              const SweepOptions& options) {
    return sweep_levels(
        [&](double k) { return bim_detector(billiard, k, options.solver); }, billiard, k_min,
        k_max, options);
}

EbimWindow ebim_window(const Billiard& billiard, double k0, double dk,
                       const SolverOptions& options) {
    EbimWindow window;
    window.k0 = k0;
    window.dk = dk;

    const auto points = bim_collocation(billiard, k0, options);
    const Eigen::MatrixXcd A = fredholm_matrix(billiard, k0, points, 0);
    const Eigen::MatrixXcd A1 = fredholm_matrix(billiard, k0, points, 1);

    {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(A1);
        const auto& sv = svd.singularValues();
        window.condition_estimate = sv(0) / std::max(sv(sv.size() - 1), 1e-300);
        if (window.condition_estimate > 1e15) {
            window.rejected = true;
            window.diagnostic = "dA/dk condition estimate " +
                                std::to_string(window.condition_estimate) +
                                " beyond budget; regularization is an open problem";
            return window;
        }
    }

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const Eigen::MatrixXcd B = lu.solve(A1);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(B);
    if (es.info() != Eigen::Success) {
        window.rejected = true;
        window.diagnostic = "eigensolver failed";
        return window;
    }

    // Generalized eigenvalues of A u = lambda A' u are the reciprocals of the
    // eigenvalues of A^-1 A'. Left vectors come from the inverse of the
    // right-eigenvector matrix.
    const Eigen::MatrixXcd& V = es.eigenvectors();
    Eigen::MatrixXcd V_inv;
    bool have_left = true;
    Eigen::MatrixXcd A2;
    {
        Eigen::PartialPivLU<Eigen::MatrixXcd> vlu(V);
        V_inv = vlu.solve(Eigen::MatrixXcd::Identity(V.rows(), V.cols()));
        if (!V_inv.allFinite()) have_left = false;
    }

    for (int j = 0; j < es.eigenvalues().size(); ++j) {
        const Complex theta = es.eigenvalues()(j);
        if (std::abs(theta) < 1e-300) continue;
        const Complex lambda = 1.0 / theta;
        if (std::abs(lambda) >= dk) continue;
        if (std::abs(lambda.imag()) >= 1e-2 * std::abs(lambda.real())) continue;

        Complex correction{0.0, 0.0};
        if (have_left) {
            if (A2.size() == 0) A2 = fredholm_matrix(billiard, k0, points, 2);
            const Eigen::VectorXcd u = V.col(j);
            const Eigen::RowVectorXcd ell = V_inv.row(j);
            const Complex num = ell * (lu.solve(A2 * u));
            const Complex den = theta * (ell * u)(0);
            if (std::abs(den) > 1e-300) correction = 0.5 * lambda * lambda * num / den;
        }
        const Complex k_new = k0 - lambda - correction;
        window.levels.push_back(k_new.real());
        window.lambdas.push_back(lambda);
    }

    std::vector<std::size_t> order(window.levels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return window.levels[a] < window.levels[b]; });
    std::vector<double> lv;
    std::vector<Complex> lm;
    for (std::size_t i : order) {
        lv.push_back(window.levels[i]);
        lm.push_back(window.lambdas[i]);
    }
    window.levels = std::move(lv);
    window.lambdas = std::move(lm);
    return window;
}

namespace {

struct TensionMatrices {
    Eigen::MatrixXd F;   // boundary tension
    Eigen::MatrixXd dF;  // k-derivative (only when requested)
    Eigen::MatrixXd G;   // normalization (only when requested)
    int n_boundary = 0;
};

enum class GKind { None, Boundary, Interior };

/// Assembles the tension matrix F (weight w), optionally dF/dk and G.
TensionMatrices assemble_tension(const Billiard& billiard, const CornerBasis& basis, double k,
                                 bool scaling_weight, bool want_df, GKind g_kind, int n_interior,
                                 const SolverOptions& options) {
    const auto points =
        billiard.sample_gauss(boundary_density(size_key(k), options), SegmentFilter::TensionActive);
    const int n_q = static_cast<int>(points.size());
    const int n_b = basis.size();

    if (scaling_weight || g_kind == GKind::Boundary) {
        for (const auto& p : points) {
            if (p.r_n <= 0.0) {
                throw std::runtime_error(
                    "boundary weight 1/r_n invalid: boundary is not star-shaped about the "
                    "basis origin at s=" + std::to_string(p.s));
            }
        }
    }

    BasisRequest request;
    request.values = true;
    request.k_derivatives = want_df;
    request.normal_derivatives = g_kind == GKind::Boundary;

    Eigen::MatrixXd B(n_q, n_b);
    Eigen::MatrixXd C = want_df ? Eigen::MatrixXd(n_q, n_b) : Eigen::MatrixXd();
    Eigen::MatrixXd D = g_kind == GKind::Boundary ? Eigen::MatrixXd(n_q, n_b) : Eigen::MatrixXd();
    Eigen::VectorXd w_f(n_q), w_g(n_q);

    BasisEval eval;
    for (int q = 0; q < n_q; ++q) {
        basis.eval_point(k, points[q].position, points[q].normal, request, eval);
        for (int i = 0; i < n_b; ++i) B(q, i) = eval.value[i];
        if (want_df) {
            for (int i = 0; i < n_b; ++i) C(q, i) = eval.k_deriv[i];
        }
        if (g_kind == GKind::Boundary) {
            for (int i = 0; i < n_b; ++i) D(q, i) = eval.n_deriv[i];
        }
        w_f(q) = scaling_weight ? points[q].weight / points[q].r_n : points[q].weight;
        w_g(q) = points[q].weight * points[q].r_n;
    }

    TensionMatrices out;
    out.n_boundary = n_q;
    const Eigen::MatrixXd Bw = w_f.cwiseSqrt().asDiagonal() * B;
    out.F.noalias() = Bw.transpose() * Bw;
    if (want_df) {
        const Eigen::MatrixXd Cw = w_f.asDiagonal() * C;
        Eigen::MatrixXd cross = B.transpose() * Cw;
        out.dF = cross + cross.transpose();
    }
    if (g_kind == GKind::Boundary) {
        const Eigen::MatrixXd Dw = (w_g / (2.0 * k * k)).cwiseSqrt().asDiagonal() * D;
        out.G.noalias() = Dw.transpose() * Dw;
    } else if (g_kind == GKind::Interior) {
        const auto inside = interior_sample(billiard, n_interior);
        Eigen::MatrixXd Bi(static_cast<int>(inside.size()), n_b);
        BasisRequest values_only;
        for (int m = 0; m < static_cast<int>(inside.size()); ++m) {
            basis.eval_point(k, inside[m], {0.0, 0.0}, values_only, eval);
            for (int i = 0; i < n_b; ++i) Bi(m, i) = eval.value[i];
        }
        out.G.noalias() =
            (billiard.area() / static_cast<double>(inside.size())) * Bi.transpose() * Bi;
    }
    return out;
}

/// Smallest two eigenvalues of F u = lambda G u with spectral truncation of G.
std::pair<double, double> truncated_gep(const Eigen::MatrixXd& F, const Eigen::MatrixXd& G,
                                        double eps) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gd(G);
    const auto& gl = gd.eigenvalues();
    const double cut = eps * gl(gl.size() - 1);
    int first = 0;
    while (first < gl.size() && gl(first) <= cut) ++first;
    const int kept = static_cast<int>(gl.size()) - first;
    if (kept < 2) throw std::runtime_error("normalization matrix numerically rank deficient");

    Eigen::MatrixXd P(G.rows(), kept);
    for (int i = 0; i < kept; ++i) {
        P.col(i) = gd.eigenvectors().col(first + i) / std::sqrt(gl(first + i));
    }
    const Eigen::MatrixXd M = P.transpose() * F * P;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> md((M + M.transpose()) / 2.0);
    return {md.eigenvalues()(0), md.eigenvalues()(std::min<int>(1, kept - 1))};
}

} // namespace

std::vector<Vec2> interior_sample(const Billiard& billiard, int count) {
    // Additive low-discrepancy lattice over the bounding box, clipped to the
    // domain (rejection covers the cap and other non-rectangular parts).
    Vec2 lo, hi;
    billiard.bounding_box(lo, hi);
    constexpr double a1 = 0.7548776662466927;
    constexpr double a2 = 0.5698402909980532;
    std::vector<Vec2> points;
    points.reserve(count);
    double u = 0.5, v = 0.5;
    int guard = 0;
    while (static_cast<int>(points.size()) < count && guard < 1000 * count) {
        u += a1;
        u -= std::floor(u);
        v += a2;
        v -= std::floor(v);
        const Vec2 q{lo.x + u * (hi.x - lo.x), lo.y + v * (hi.y - lo.y)};
        if (billiard.contains(q)) points.push_back(q);
        ++guard;
    }
    if (static_cast<int>(points.size()) < count) {
        throw std::runtime_error("interior sampling failed to fill the requested count");
    }
    return points;
}

std::pair<double, double> dm_detector(const Billiard& billiard, double k,
                                      const SolverOptions& options) {
    const CornerBasis basis(billiard.basis_origin(), basis_count(billiard, size_key(k), options));
    const auto m = assemble_tension(billiard, basis, k, /*scaling_weight=*/false,
                                    /*want_df=*/false, GKind::Boundary, 0, options);
    return truncated_gep(m.F, m.G, options.truncation_eps);
}

std::vector<double> dm_sweep(const Billiard& billiard, double k_min, double k_max,
                             const SweepOptions& options) {
    return sweep_levels(
        [&](double k) { return dm_detector(billiard, k, options.solver); }, billiard, k_min,
        k_max, options);
}

std::pair<double, double> psm_detector(const Billiard& billiard, double k, int n_interior,
                                       const SolverOptions& options) {
    const CornerBasis basis(billiard.basis_origin(), basis_count(billiard, size_key(k), options));
    const int n_int = n_interior > 0 ? n_interior : 4 * basis.size();
    if (n_int < 4 * basis.size()) {
        throw std::invalid_argument("particular solutions method needs >= 4 N_basis samples");
    }
    const auto m = assemble_tension(billiard, basis, k, /*scaling_weight=*/false,
                                    /*want_df=*/false, GKind::Interior, n_int, options);
    return truncated_gep(m.F, m.G, options.truncation_eps);
}

std::vector<double> psm_sweep(const Billiard& billiard, double k_min, double k_max,
                              int n_interior, const SweepOptions& options) {
    return sweep_levels(
        [&](double k) { return psm_detector(billiard, k, n_interior, options.solver); },
        billiard, k_min, k_max, options);
}

SolveWindow vs_window(const Billiard& billiard, double k0, double dk,
                      const SolverOptions& options) {
    SolveWindow window;
    window.k0 = k0;
    window.dk = dk;

    const CornerBasis basis(billiard.basis_origin(), basis_count(billiard, k0, options));
    const auto m = assemble_tension(billiard, basis, k0, /*scaling_weight=*/true,
                                    /*want_df=*/true, GKind::None, 0, options);
    window.n_basis = basis.size();
    window.n_boundary = m.n_boundary;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> fd(m.F);
    const auto& fl = fd.eigenvalues();
    const double cut = options.truncation_eps * fl(fl.size() - 1);
    int first = 0;
    while (first < fl.size() && fl(first) <= cut) ++first;
    const int kept = static_cast<int>(fl.size()) - first;
    window.n_retained = kept;
    window.discarded_spurious = static_cast<int>(fl.size()) - kept;
    if (kept < 1) return window;
    window.smallest_retained = fl(first);

    Eigen::MatrixXd Ct(m.F.rows(), kept);
    for (int i = 0; i < kept; ++i) {
        Ct.col(i) = fd.eigenvectors().col(first + i) / std::sqrt(fl(first + i));
    }
    Eigen::MatrixXd M = Ct.transpose() * m.dF * Ct;
    M = ((M + M.transpose()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> md(M);

    for (int j = 0; j < md.eigenvalues().size(); ++j) {
        const double mu = md.eigenvalues()(j);
        if (mu == 0.0) continue;
        const double shift = 2.0 / mu;
        if (std::abs(shift) >= dk) continue;
        window.levels.push_back(k0 - shift);
        window.coefficients.emplace_back((Ct * md.eigenvectors().col(j)).normalized());
    }

    // Sort by level.
    std::vector<std::size_t> order(window.levels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return window.levels[a] < window.levels[b]; });
    std::vector<double> lv;
    std::vector<Eigen::VectorXd> cf;
    for (std::size_t i : order) {
        lv.push_back(window.levels[i]);
        cf.push_back(std::move(window.coefficients[i]));
    }
    window.levels = std::move(lv);
    window.coefficients = std::move(cf);

    if (options.polish) {
        // Window error grows like |k - k0|^3, so re-centering on each accepted
        // level collapses it to the solver floor within a few passes.
        SolverOptions once = options;
        once.polish = false;
        for (std::size_t i = 0; i < window.levels.size(); ++i) {
            for (int pass = 0; pass < 3; ++pass) {
                const SolveWindow re = vs_window(billiard, window.levels[i], dk, once);
                if (re.levels.empty()) break;
                std::size_t best = 0;
                for (std::size_t j = 1; j < re.levels.size(); ++j) {
                    if (std::abs(re.levels[j] - window.levels[i]) <
                        std::abs(re.levels[best] - window.levels[i])) {
                        best = j;
                    }
                }
                const double shift = std::abs(re.levels[best] - window.levels[i]);
                if (shift >= dk / 2.0) break;
                window.levels[i] = re.levels[best];
                window.coefficients[i] = re.coefficients[best];
                if (shift < 1e-10) break;
            }
        }
    }
    return window;
}

std::vector<SolveWindow> vs_range(const Billiard& billiard, double k_min, double k_max,
                                  double dk, const SolverOptions& options) {
    std::vector<double> centers;
    for (double k0 = k_min + dk; k0 - dk < k_max; k0 += 1.5 * dk) centers.push_back(k0);

    std::vector<SolveWindow> windows(centers.size());
    parallel_chunks(centers.size(), default_workers(), [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            windows[i] = vs_window(billiard, centers[i], dk, options);
        }
    });
    return windows;
}

double eigenstate_value(const Billiard& billiard, double k, const Eigen::VectorXd& coefficients,
                        const Vec2& q) {
    const CornerBasis basis(billiard.basis_origin(), static_cast<int>(coefficients.size()));
    BasisEval eval;
    basis.eval_point(k, q, {0.0, 0.0}, BasisRequest{}, eval);
    double sum = 0.0;
    for (int i = 0; i < coefficients.size(); ++i) sum += coefficients(i) * eval.value[i];
    return sum;
}

} // namespace billiard
