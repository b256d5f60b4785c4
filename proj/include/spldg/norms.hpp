#pragma once

#include "spldg/assembly.hpp"
#include "spldg/fem_space.hpp"
#include "spldg/problem.hpp"

namespace spldg {

// Squared pieces of the energy norm; energy^2 = sum of all seven.
struct ErrorComponents {
    double eps_p = 0, eps_q = 0, weighted_u = 0;  // the ||.|| triple-norm part
    double jump_x_interior = 0, jump_x_outflow = 0;
    double jump_y_interior = 0, jump_y_outflow = 0;
    double sum() const {
        return eps_p + eps_q + weighted_u + jump_x_interior + jump_x_outflow +
               jump_y_interior + jump_y_outflow;
    }
};

struct ErrorReport {
    double l2_triple = 0;       // ||w - W||
    double energy = 0;          // |||w - W|||
    double supercloseness = 0;  // |||Pi w - W|||
    ErrorComponents energy_components;
    ErrorComponents superclose_components;
};

// ||V|| = sqrt( ||V_p||^2/eps + ||V_q||^2/eps + ||(b - div a /2)^{1/2} V_u||^2 )
// for a discrete triple. Throws if the reaction weight is negative at a
// quadrature point (coercivity violated).
double lnorm_triple(const FemSpace& space, const Problem& problem, const DiscreteTriple& V,
                    int quad_points);

// Same norm of the mixed error (u-W_u, p-W_p, q-W_q) with the exact functions
// evaluated at quadrature points. Requires problem.exact.
double lnorm_error(const FemSpace& space, const Problem& problem, const DiscreteTriple& W,
                   int quad_points);

// Full energy norm of a discrete triple, all jump sums included.
double energy_norm(const FemSpace& space, const Problem& problem, const AssemblyOptions& opts,
                   const DiscreteTriple& V);

// |||w - W|||. The exact solution is continuous with u = 0 on the boundary,
// so every jump of w - W equals the (sign-flipped) jump of W alone; the jump
// sums are evaluated from the discrete field only.
double energy_error(const FemSpace& space, const Problem& problem, const AssemblyOptions& opts,
                    const DiscreteTriple& W);

// The three errors of a run: ||w-W||, |||Pi w - W||| (purely discrete) and
// |||w - W|||. `projected` must be the output of project_triple.
ErrorReport error_report(const DiscreteTriple& W, const DiscreteTriple& projected,
                         const Problem& problem, const FemSpace& space,
                         const AssemblyOptions& opts);

// Error-integral quadrature order.
inline int error_quad_points(int degree) { return degree + 3 > 5 ? degree + 3 : 5; }

}  // namespace spldg
