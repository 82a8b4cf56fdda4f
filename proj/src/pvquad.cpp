#include "tauwalk/pvquad.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tw {

GaussLegendre::GaussLegendre(int order) {
    if (order < 1) throw std::invalid_argument("quadrature order must be positive");
    x.resize(order);
    w.resize(order);
    for (int i = 0; i < order; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess
        double t = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = t;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = order * (t * p1 - p0) / (t * t - 1);
            double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        double p0 = 1, p1 = t;
        for (int k = 2; k <= order; ++k) {
            double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = order * (t * p1 - p0) / (t * t - 1);
        x[i] = t;
        w[i] = 2.0 / ((1 - t * t) * dp * dp);
    }
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int order) {
    static thread_local int cached_order = -1;
    static thread_local GaussLegendre* gl = nullptr;
    if (cached_order != order) {
        delete gl;
        gl = new GaussLegendre(order);
        cached_order = order;
    }
    double total = 0;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h, mid = lo + h / 2, half = h / 2;
        double s = 0;
        for (int i = 0; i < order; ++i) s += gl->w[i] * f(mid + half * gl->x[i]);
        total += s * half;
    }
    return total;
}

double pv_arcsine_integral(double u, int panels, int order) {
    if (!(u > 0) || u > 2) throw std::invalid_argument("u must lie in (0, 2]");
    const double pi = std::numbers::pi;
    double theta_u = std::asin(u - 1);
    double sigma_u = 0.5 - theta_u / pi;

    // After y = 1 + sin(theta) the difference quotient
    //   (sigma(y) - sigma(u)) / (u - y) * cos(theta)
    // becomes cos(theta) * (d / sin d) / (pi * cos((theta + theta_u)/2)),
    // d = (theta_u - theta)/2, smooth across theta_u.
    auto g = [&](double th) {
        double d = (theta_u - th) / 2;
        double ratio = std::abs(d) < 1e-8 ? 1.0 + d * d / 6.0 : d / std::sin(d);
        return std::cos(th) * ratio / (pi * std::cos((th + theta_u) / 2));
    };

    double smooth = 0;
    if (theta_u > -pi / 2) smooth += integrate(g, -pi / 2, theta_u, panels, order);
    if (theta_u < pi / 2) smooth += integrate(g, theta_u, pi / 2, panels, order);

    // sigma(u) * PV int_0^2 dy/(u-y) = sigma(u) * log(u / (2-u)); the
    // u = 2 endpoint has sigma = 0 and contributes nothing.
    double tail = 0;
    if (u < 2 && sigma_u != 0) tail = sigma_u * std::log(u / (2 - u));
    return smooth + tail;
}

}  // namespace tw
