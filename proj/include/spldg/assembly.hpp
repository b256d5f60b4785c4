#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "spldg/fem_space.hpp"
#include "spldg/problem.hpp"

namespace spldg {

struct AssemblyOptions {
    double lambda1 = 0.0;  // penalty weights on the outflow edges x=1 / y=1
    double lambda2 = 0.0;
    int quad_points = 5;   // Gauss-Legendre points per direction
    bool condense = false; // element-sweep elimination of P and Q at solve time
};

// Square sparse matrix in CSR form plus the right-hand side.
struct SparseSystem {
    int n = 0;
    std::vector<int> row_ptr;   // size n+1
    std::vector<int> col_idx;   // ascending within each row
    std::vector<double> values;
    Eigen::VectorXd rhs;

    int nnz() const { return static_cast<int>(values.size()); }
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
    double quadratic_form(const Eigen::VectorXd& v) const;  // v^T A v
    void dump_matrix_market(std::ostream& os) const;
};

// Local blocks of the rows owned by one element (its own test functions).
// A default-constructed (0x0) matrix means the coupling is absent, i.e. the
// element sits on the corresponding boundary.
struct ElementBlocks {
    Eigen::MatrixXd sp;                          // s-rows, P columns: (P,s)/eps
    Eigen::MatrixXd su_self, su_left;            // s-rows, U columns
    Eigen::MatrixXd rq;                          // r-rows, Q columns
    Eigen::MatrixXd ru_self, ru_down;            // r-rows, U columns
    Eigen::MatrixXd vu_self, vu_left, vu_down;   // v-rows, U columns
    Eigen::MatrixXd vp_self, vp_right;           // v-rows, P columns
    Eigen::MatrixXd vq_self, vq_up;              // v-rows, Q columns
    Eigen::VectorXd rhs_v;                       // (f, v)
};

struct AssembledSystem {
    SparseSystem system;                // monolithic matrix of B(.;.), rows = tests
    std::vector<ElementBlocks> blocks;  // element-major, kept for condensation
};

// Assemble B(W;z) = (f,v) with T1..T4, the upwind convection flux, the
// alternating diffusion fluxes, and hat{U} = 0 at the domain boundary.
// Deterministic: one pass over elements in index order.
AssembledSystem assemble(const FemSpace& space, const Problem& problem,
                         const AssemblyOptions& opts);

}  // namespace spldg
