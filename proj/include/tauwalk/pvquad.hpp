// Gauss-Legendre panels and the principal-value integral of the arcsine
// density, the analytic backbone of the equilibrium checks.
#pragma once

#include <functional>
#include <vector>

namespace tw {

// Nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int order);
};

// Composite Gauss-Legendre integral of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels = 16, int order = 24);

// PV int_0^2 (1/2 - arcsin(y-1)/pi) / (u - y) dy for u in (0, 2]; the exact
// value is log(2u).  The integrand is regularized by the substitution
// y = 1 + sin(theta), which leaves a smooth integrand plus an explicit
// logarithm, so plain panels converge fast.
double pv_arcsine_integral(double u, int panels = 24, int order = 24);

}  // namespace tw
