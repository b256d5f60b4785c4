#pragma once

#include <Eigen/Dense>

#include "spldg/mesh.hpp"

namespace spldg {

// Discontinuous tensor-product space V_N of degree-k Legendre polynomials per
// element. Monolithic dof layout is element-major; within an element
// field-major (U block, P block, Q block); within a field the tensor Legendre
// index ix + (k+1)*iy.
struct FemSpace {
    TensorMesh mesh;
    int degree = 1;

    int nx() const { return mesh.x.n_cells; }
    int ny() const { return mesh.y.n_cells; }
    int order_1d() const { return degree + 1; }
    int nloc() const { return order_1d() * order_1d(); }
    int n_elems() const { return nx() * ny(); }
    int ndof_field() const { return nloc() * n_elems(); }
    int ndof_total() const { return 3 * ndof_field(); }

    // i, j are 1-based element coordinates
    int elem(int i, int j) const { return (i - 1) + nx() * (j - 1); }
    int dof(int e, int field, int local) const { return (e * 3 + field) * nloc() + local; }

    struct DofRef {
        int elem, field, local;
    };
    DofRef decode(int gdof) const {
        const int n = nloc();
        return {gdof / (3 * n), (gdof / n) % 3, gdof % n};
    }
};

FemSpace make_space(TensorMesh mesh, int degree);

// One scalar field: coefficient vector in the per-field layout (element-major
// blocks of nloc coefficients).
struct DiscreteField {
    const FemSpace* space = nullptr;
    Eigen::VectorXd coef;

    // Point value; points on element boundaries resolve to the element on the
    // left/below (trace v^-). Throws std::domain_error outside [0,1]^2.
    double eval(double x, double y) const;
    // Value at reference coordinates (s,t) in [-1,1]^2 of element (i,j).
    double eval_ref(int i, int j, double s, double t) const;
};

struct DiscreteTriple {
    DiscreteField u, p, q;
};

DiscreteField zero_field(const FemSpace& space);
DiscreteTriple zero_triple(const FemSpace& space);

// Split a monolithic solution vector into (U,P,Q) fields / merge back.
DiscreteTriple split_triple(const FemSpace& space, const Eigen::VectorXd& monolithic);
Eigen::VectorXd merge_triple(const DiscreteTriple& triple);

}  // namespace spldg
