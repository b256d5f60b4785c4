#include "spldg/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spldg {

double Problem::div_a(double x, double y) const {
    if (da1_dx && da2_dy) return da1_dx(x, y) + da2_dy(x, y);
    const double h = 1e-6;
    const double d1 = (a1(std::min(x + h, 1.0), y) - a1(std::max(x - h, 0.0), y)) /
                      (std::min(x + h, 1.0) - std::max(x - h, 0.0));
    const double d2 = (a2(x, std::min(y + h, 1.0)) - a2(x, std::max(y - h, 0.0))) /
                      (std::min(y + h, 1.0) - std::max(y - h, 0.0));
    return d1 + d2;
}

Problem example1(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("example1: requires 0 < epsilon < 1");
    }
    const double e = epsilon;
    // u = g(x) h(y) with g = (1 - e^{-(1-x)/eps}) sin x, h = y^3 (1 - e^{-2(1-y)/eps}).
    // expm1 keeps the layer factors accurate when the exponent is tiny.
    auto E1 = [e](double x) { return std::exp(-(1.0 - x) / e); };
    auto L1 = [e](double x) { return -std::expm1(-(1.0 - x) / e); };
    auto E2 = [e](double y) { return std::exp(-2.0 * (1.0 - y) / e); };
    auto L2 = [e](double y) { return -std::expm1(-2.0 * (1.0 - y) / e); };
    auto g = [=](double x) { return L1(x) * std::sin(x); };
    auto gp = [=](double x) { return L1(x) * std::cos(x) - E1(x) * std::sin(x) / e; };
    auto gpp = [=](double x) {
        return -L1(x) * std::sin(x) - 2.0 * E1(x) * std::cos(x) / e -
               E1(x) * std::sin(x) / (e * e);
    };
    auto h = [=](double y) { return y * y * y * L2(y); };
    auto hp = [=](double y) {
        return 3.0 * y * y * L2(y) - 2.0 * y * y * y * E2(y) / e;
    };
    auto hpp = [=](double y) {
        return 6.0 * y * L2(y) - 12.0 * y * y * E2(y) / e -
               4.0 * y * y * y * E2(y) / (e * e);
    };

    Problem pb;
    pb.epsilon = e;
    pb.a1 = [](double x, double) { return 2.0 - x; };
    pb.a2 = [](double, double y) { return 3.0 - y * y * y; };
    pb.b = [](double, double) { return 1.0; };
    pb.da1_dx = [](double, double) { return -1.0; };
    pb.da2_dy = [](double, double y) { return -3.0 * y * y; };
    pb.alpha1 = 1.0;
    pb.alpha2 = 2.0;
    pb.beta = 1.5;  // min of b - div a / 2 = 3/2 + 3 y^2 / 2
    pb.f = [=](double x, double y) {
        return -e * (gpp(x) * h(y) + g(x) * hpp(y)) + (2.0 - x) * gp(x) * h(y) +
               (3.0 - y * y * y) * g(x) * hp(y) + g(x) * h(y);
    };
    ExactSolution ex;
    ex.u = [=](double x, double y) { return g(x) * h(y); };
    ex.u_x = [=](double x, double y) { return gp(x) * h(y); };
    ex.u_y = [=](double x, double y) { return g(x) * hp(y); };
    pb.exact = std::move(ex);
    return pb;
}

CoercivityReport verify_coercivity(const Problem& problem) {
    CoercivityReport rep;
    rep.beta_declared = problem.beta;
    rep.min_value = std::numeric_limits<double>::infinity();
    const int n = 100;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double x = static_cast<double>(i) / n;
            const double y = static_cast<double>(j) / n;
            const double v = problem.b(x, y) - 0.5 * problem.div_a(x, y);
            if (v < rep.min_value) {
                rep.min_value = v;
                rep.at_x = x;
                rep.at_y = y;
            }
        }
    }
    rep.ok = rep.min_value >= problem.beta;
    return rep;
}

double pde_residual(const Problem& problem, double x, double y, double fd_step) {
    if (!problem.exact) throw std::invalid_argument("pde_residual: no exact solution");
    const ExactSolution& ex = *problem.exact;
    double uxx, uyy;
    if (ex.u_xx && ex.u_yy) {
        uxx = ex.u_xx(x, y);
        uyy = ex.u_yy(x, y);
    } else {
        const double h = fd_step;
        uxx = (ex.u(x + h, y) - 2.0 * ex.u(x, y) + ex.u(x - h, y)) / (h * h);
        uyy = (ex.u(x, y + h) - 2.0 * ex.u(x, y) + ex.u(x, y - h)) / (h * h);
    }
    return -problem.epsilon * (uxx + uyy) + problem.a1(x, y) * ex.u_x(x, y) +
           problem.a2(x, y) * ex.u_y(x, y) + problem.b(x, y) * ex.u(x, y) -
           problem.f(x, y);
}

}  // namespace spldg
