#include "billiard/bessel.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace billiard {

namespace {

constexpr double kOrderBudget = 1.1e4;
constexpr double kArgumentBudget = 1.1e4;

struct ErrorHandlerGuard {
    gsl_error_handler_t* old;
    ErrorHandlerGuard() : old(gsl_set_error_handler_off()) {}
    ~ErrorHandlerGuard() { gsl_set_error_handler(old); }
};

double jnu_checked(double order, double x) {
    ErrorHandlerGuard eh;
    gsl_sf_result res;
    const int status = gsl_sf_bessel_Jnu_e(order, x, &res);
    if (status == GSL_SUCCESS) return res.val;
    if (status == GSL_EUNDRFLW) return 0.0;
    throw std::runtime_error("J_nu evaluation failed at nu=" + std::to_string(order) +
                             ", x=" + std::to_string(x) + ": " + gsl_strerror(status));
}

void check_domain(double order, double x) {
    if (order < 0.0 || x < 0.0) throw std::domain_error("bessel_j requires order >= 0 and x >= 0");
    if (order > kOrderBudget || x > kArgumentBudget) {
        throw std::domain_error("bessel_j outside the supported budget: nu=" + std::to_string(order) +
                                ", x=" + std::to_string(x));
    }
}

double refine_zero(double order, double lo, double hi) {
    double flo = jnu_checked(order, lo);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = jnu_checked(order, mid);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double bessel_j(double order, double x) {
    check_domain(order, x);
    if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
    return jnu_checked(order, x);
}

double bessel_j_prime(double order, double x) {
    check_domain(order, x);
    if (x <= 0.0) throw std::domain_error("bessel_j_prime requires x > 0");
    return (order / x) * bessel_j(order, x) - bessel_j(order + 1.0, x);
}

std::vector<double> bessel_j_ladder(double rho, int count, double x) {
    if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error("ladder offset must lie in [0, 1)");
    if (count < 0) throw std::domain_error("ladder count must be non-negative");
    if (count == 0) return {};
    check_domain(rho + count, x);

    std::vector<double> values(count, 0.0);
    if (x == 0.0) {
        if (rho == 0.0) values[0] = 1.0;
        return values;
    }
    if (count <= 3) {
        for (int m = 0; m < count; ++m) values[m] = jnu_checked(rho + m, x);
        return values;
    }

    // Above roughly this order the values sit past the turning point; direct
    // seeding there loses accuracy (and eventually underflows), while a Miller
    // descent through the growth region is self-correcting.
    const double nu_cut = x + 10.0 * std::cbrt(x) + 24.0;
    const int m_top = count - 1;

    if (rho + m_top + 1.0 <= nu_cut) {
        // Ladder top is in the oscillatory / near-turning region: seed the top
        // two orders accurately and recur downward (stable for J).
        double above = jnu_checked(rho + m_top + 1.0, x);
        double here = jnu_checked(rho + m_top, x);
        values[m_top] = here;
        for (int m = m_top; m > 0; --m) {
            const double nu = rho + m;
            const double below = (2.0 * nu / x) * here - above;
            above = here;
            here = below;
            values[m - 1] = below;
        }
        return values;
    }

    // Miller's algorithm: arbitrary seed above the ladder, recur down through
    // the turning point, normalize against one accurate low-order value.
    const int buffer = 30;
    double above = 0.0;
    double here = 1e-300;
    for (int m = m_top + buffer; m > 0; --m) {
        const double nu = rho + m;
        double below = (2.0 * nu / x) * here - above;
        if (std::abs(below) > 1e250) {
            // Rescale mid-descent; stored values above this point shrink with
            // the pair (they are genuinely hundreds of decades smaller).
            below *= 1e-250;
            here *= 1e-250;
            for (int mm = m; mm <= m_top; ++mm) values[mm] *= 1e-250;
        }
        above = here;
        here = below;
        if (m - 1 <= m_top) values[m - 1] = below;
    }

    int anchor = 0;
    for (int m = 1; m < 3 && m <= m_top; ++m) {
        if (std::abs(values[m]) > std::abs(values[anchor])) anchor = m;
    }
    const double ref = jnu_checked(rho + anchor, x);
    const double scale = ref / values[anchor];
    for (int m = 0; m <= m_top; ++m) values[m] *= scale;
    return values;
}

double bessel_j_zero(double order, int n) {
    if (n < 1) throw std::domain_error("zero index must be >= 1");
    // March past the turning point in quarter-period steps, bisect each
    // bracketed sign change until the n-th zero is pinned down.
    double x = order > 0.0 ? order : 0.1;
    double f_prev = bessel_j(order, x);
    const double step = 0.25;
    int found = 0;
    for (int it = 0; it < 2000000; ++it) {
        const double x_next = x + step;
        const double f_next = bessel_j(order, x_next);
        if ((f_prev < 0.0) != (f_next < 0.0)) {
            ++found;
            if (found == n) return refine_zero(order, x, x_next);
        }
        x = x_next;
        f_prev = f_next;
    }
    throw std::runtime_error("failed to locate Bessel zero");
}

std::complex<double> hankel1(int order, double x) {
    if (order < 0 || order > 2) throw std::domain_error("hankel1 supports orders 0, 1, 2");
    if (!(x > 0.0)) throw std::domain_error("hankel1 requires x > 0 (singular at the origin)");
    if (x > kArgumentBudget) throw std::domain_error("hankel1 outside the supported budget");
    ErrorHandlerGuard eh;
    gsl_sf_result jr, yr;
    int sj, sy;
    switch (order) {
        case 0:
            sj = gsl_sf_bessel_J0_e(x, &jr);
            sy = gsl_sf_bessel_Y0_e(x, &yr);
            break;
        case 1:
            sj = gsl_sf_bessel_J1_e(x, &jr);
            sy = gsl_sf_bessel_Y1_e(x, &yr);
            break;
        default:
            sj = gsl_sf_bessel_Jn_e(2, x, &jr);
            sy = gsl_sf_bessel_Yn_e(2, x, &yr);
            break;
    }
    if ((sj != GSL_SUCCESS && sj != GSL_EUNDRFLW) || (sy != GSL_SUCCESS && sy != GSL_EUNDRFLW)) {
        throw std::runtime_error("Hankel evaluation failed at x=" + std::to_string(x));
    }
    return {jr.val, yr.val};
}

} // namespace billiard
