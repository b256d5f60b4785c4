#pragma once

#include <functional>
#include <optional>

namespace spldg {

using ScalarFn = std::function<double(double, double)>;

// Exact solution record for manufactured-solution runs. Only u and its first
// derivatives are required; second derivatives are optional diagnostics.
struct ExactSolution {
    ScalarFn u, u_x, u_y;
    ScalarFn u_xx, u_yy;  // may be empty
};

// Data of -eps*Lap(u) + a.grad(u) + b*u = f on (0,1)^2 with u = 0 on the
// boundary, under a >= (alpha1, alpha2) > 0 and b - (1/2) div a >= beta > 0.
struct Problem {
    double epsilon = 0.0;
    ScalarFn a1, a2, b, f;
    ScalarFn da1_dx, da2_dy;  // analytic derivatives; empty -> central differences
    double alpha1 = 0.0, alpha2 = 0.0, beta = 0.0;
    std::optional<ExactSolution> exact;

    // div a = d(a1)/dx + d(a2)/dy, analytic when supplied, otherwise central
    // differences with step 1e-6.
    double div_a(double x, double y) const;
};

// The test problem: a1 = 2-x, a2 = 3-y^3, b = 1, alpha1 = 1, alpha2 = 2, and
// u = (1 - e^{-(1-x)/eps}) y^3 (1 - e^{-2(1-y)/eps}) sin x,
// with f assembled from the analytic derivatives so the PDE holds identically.
Problem example1(double epsilon);

struct CoercivityReport {
    double min_value = 0.0;    // sampled min of b - (1/2) div a on a 101x101 grid
    double at_x = 0.0, at_y = 0.0;
    double beta_declared = 0.0;
    bool ok = false;           // min_value >= beta_declared
};
CoercivityReport verify_coercivity(const Problem& problem);

// PDE residual -eps*Lap(u) + a.grad(u) + b*u - f at (x,y), using analytic
// second derivatives when present and a central-difference Laplacian otherwise.
double pde_residual(const Problem& problem, double x, double y, double fd_step = 1e-4);

}  // namespace spldg
