#include "spldg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "spldg/legendre.hpp"

namespace spldg {

QuadRule gauss_legendre(int n) {
    if (n < 1 || n > 32) {
        throw std::invalid_argument("gauss_legendre: order must be in [1,32], got " +
                                    std::to_string(n));
    }
    QuadRule rule;
    rule.order = n;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    std::vector<double> vals(n + 1), ders(n + 1);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev initial guess for the i-th root (descending order)
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            legendre_eval(n, t, vals, ders);
            const double dt = vals[n] / ders[n];
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        legendre_eval(n, t, vals, ders);
        const double w = 2.0 / ((1.0 - t * t) * ders[n] * ders[n]);
        rule.nodes[n - 1 - i] = t;
        rule.nodes[i] = -t;
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;  // exact midpoint for odd rules
    return rule;
}

}  // namespace spldg
