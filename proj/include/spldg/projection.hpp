#pragma once

#include "spldg/fem_space.hpp"
#include "spldg/problem.hpp"

namespace spldg {

// The three local Gauss-Radau projections into V_N.
//   Minus: interior moments vs Q^{k-1}, right-edge and top-edge moments vs
//          P^{k-1} with the trace from inside the element, and the value at
//          the upper-right corner.
//   XPlus: interior moments vs P^{k-1} (x) P^k, left-edge moments vs P^k.
//   YPlus: interior moments vs P^k (x) P^{k-1}, bottom-edge moments vs P^k.
enum class ProjectionKind { Minus, XPlus, YPlus };

// Elementwise projection of a continuous target z. The local condition matrix
// is affine-invariant, so it is factorized once on the reference element and
// reused; moment integrals of z use the error quadrature rule max(5, k+3).
DiscreteField project(ProjectionKind kind, const ScalarFn& z, const FemSpace& space);

// (Pi^- u, Pi_x^+ (eps u_x), Pi_y^+ (eps u_y)); requires problem.exact.
DiscreteTriple project_triple(const Problem& problem, const FemSpace& space);

// Largest defining-condition residual of `projected` on element (i,j),
// relative to ||z||_inf over the element's sample points. Recomputes every
// condition by direct quadrature; used by tests and the acceptance suite.
double condition_residual(ProjectionKind kind, const ScalarFn& z, const FemSpace& space,
                          const DiscreteField& projected, int i, int j);

}  // namespace spldg
