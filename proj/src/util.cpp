#include "billiard/util.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <memory>
#include <thread>

namespace billiard {

int default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_chunks(std::size_t n, int n_workers,
                     const std::function<void(int, std::size_t, std::size_t)>& chunk_fn) {
    if (n == 0) return;
    if (n_workers <= 0) n_workers = default_workers();
    const int chunks = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(n_workers)));
    if (chunks == 1) {
        chunk_fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (int c = 0; c < chunks; ++c) {
        const std::size_t begin = n * c / chunks;
        const std::size_t end = n * (c + 1) / chunks;
        pool.emplace_back([&, c, begin, end] { chunk_fn(c, begin, end); });
    }
    for (auto& t : pool) t.join();
}

namespace {

struct GslFn {
    const std::function<double(double)>* f;
    static double call(double x, void* params) {
        return (*static_cast<const GslFn*>(params)->f)(x);
    }
};

struct WorkspaceGuard {
    gsl_integration_workspace* w;
    explicit WorkspaceGuard(std::size_t n) : w(gsl_integration_workspace_alloc(n)) {}
    ~WorkspaceGuard() { gsl_integration_workspace_free(w); }
};

struct ErrorHandlerGuard {
    gsl_error_handler_t* old;
    ErrorHandlerGuard() : old(gsl_set_error_handler_off()) {}
    ~ErrorHandlerGuard() { gsl_set_error_handler(old); }
};

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double epsabs, double epsrel) {
    ErrorHandlerGuard eh;
    WorkspaceGuard ws(4000);
    GslFn wrap{&f};
    gsl_function F;
    F.function = &GslFn::call;
    F.params = &wrap;
    double result = 0.0, error = 0.0;
    int status = gsl_integration_qag(&F, a, b, epsabs, epsrel, 4000, GSL_INTEG_GAUSS61,
                                     ws.w, &result, &error);
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        throw std::runtime_error("quadrature failed on [" + std::to_string(a) + ", " +
                                 std::to_string(b) + "]: " + gsl_strerror(status));
    }
    return result;
}

double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double epsabs, double epsrel) {
    ErrorHandlerGuard eh;
    WorkspaceGuard ws(4000);
    GslFn wrap{&f};
    gsl_function F;
    F.function = &GslFn::call;
    F.params = &wrap;
    double result = 0.0, error = 0.0;
    int status = gsl_integration_qagiu(&F, a, epsabs, epsrel, 4000, ws.w, &result, &error);
    if (status != GSL_SUCCESS && status != GSL_EROUND) {
        throw std::runtime_error("semi-infinite quadrature failed at a=" + std::to_string(a) +
                                 ": " + gsl_strerror(status));
    }
    return result;
}

double golden_minimize(const std::function<double(double)>& f, double a, double b, double xtol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double bisect_root(const std::function<double(double)>& f, double a, double b, double xtol) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::runtime_error("bisect_root: interval does not bracket a root");
    while (b - a > xtol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

void gauss_legendre8(double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
    // Abscissae and weights on [-1, 1].
    static const double x[4] = {0.1834346424956498, 0.5255324099163290,
                                0.7966664774136267, 0.9602898564975363};
    static const double w[4] = {0.3626837833783620, 0.3137066458778873,
                                0.2223810344533745, 0.1012285362903763};
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    nodes.resize(8);
    weights.resize(8);
    for (int i = 0; i < 4; ++i) {
        nodes[2 * i] = mid - half * x[i];
        nodes[2 * i + 1] = mid + half * x[i];
        weights[2 * i] = weights[2 * i + 1] = half * w[i];
    }
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace billiard
