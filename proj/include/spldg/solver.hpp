#pragma once

#include <memory>

#include <Eigen/Dense>

#include "spldg/assembly.hpp"

namespace spldg {

// Sparse LU factorization (direct solver) with fill-reducing column ordering.
class Factorization {
public:
    explicit Factorization(const SparseSystem& system);

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    // Order-of-magnitude estimate ||A||_inf * max ||A^{-1} r||_inf / ||r||_inf
    // over a few fixed random probes.
    double condition_estimate() const;
    int size() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

Factorization factorize(const SparseSystem& system);
Eigen::VectorXd solve(const Factorization& fact, const Eigen::VectorXd& rhs);

struct LdgSolution {
    DiscreteTriple W;
    double rel_residual = 0.0;  // ||Ax-b||_2 / ||b||_2 on the monolithic system
};

// Assemble and solve. With opts.condense the auxiliary fields P, Q are
// eliminated elementwise (their equations are local given the upwind/
// alternating fluxes), the reduced U system is solved by sparse LU and P, Q
// are reconstructed; the reported residual is always the monolithic one.
LdgSolution solve_ldg(const FemSpace& space, const Problem& problem,
                      const AssemblyOptions& opts);

// Same, reusing an existing assembly.
LdgSolution solve_assembled(const FemSpace& space, const AssembledSystem& assembled,
                            bool condense);

}  // namespace spldg
