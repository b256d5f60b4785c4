#include "spldg/projection.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "spldg/legendre.hpp"
#include "spldg/norms.hpp"
#include "spldg/quadrature.hpp"

namespace spldg {

namespace {

// The defining conditions of each projection, expressed in the local Legendre
// basis c_{mn}, are affine-invariant: interior rows scale with the element
// area on both sides, edge rows with the edge length, the corner row not at
// all. The condition matrix therefore lives on the reference square and is
// factorized once per (kind, degree).
//
// Row layouts (local basis index m + (k+1)*n for P_m(s) P_n(t)):
//   Minus: k*k interior rows (a,b <= k-1), then k right-edge rows (b <= k-1),
//          k top-edge rows (a <= k-1), one corner row.
//   XPlus: k*(k+1) interior rows (a <= k-1, all b), then k+1 left-edge rows.
//   YPlus: (k+1)*k interior rows (all a, b <= k-1), then k+1 bottom-edge rows.
struct ReferenceConditions {
    int k;
    ProjectionKind kind;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;

    explicit ReferenceConditions(ProjectionKind kind_, int k_) : k(k_), kind(kind_) {
        const int m = k + 1;
        const int nloc = m * m;
        Eigen::MatrixXd C = Eigen::MatrixXd::Zero(nloc, nloc);
        auto loc = [m](int mx, int my) { return mx + m * my; };
        auto mom = [](int a) { return 2.0 / (2 * a + 1); };  // int P_a^2
        int row = 0;
        if (kind == ProjectionKind::Minus) {
            for (int b = 0; b < k; ++b)
                for (int a = 0; a < k; ++a) C(row++, loc(a, b)) = mom(a) * mom(b);
            for (int b = 0; b < k; ++b, ++row)  // trace at s = +1: P_m(1) = 1
                for (int mx = 0; mx < m; ++mx) C(row, loc(mx, b)) = mom(b);
            for (int a = 0; a < k; ++a, ++row)  // trace at t = +1
                for (int ny = 0; ny < m; ++ny) C(row, loc(a, ny)) = mom(a);
            for (int mx = 0; mx < m; ++mx)      // corner (1,1)
                for (int ny = 0; ny < m; ++ny) C(row, loc(mx, ny)) = 1.0;
            ++row;
        } else if (kind == ProjectionKind::XPlus) {
            for (int b = 0; b < m; ++b)
                for (int a = 0; a < k; ++a) C(row++, loc(a, b)) = mom(a) * mom(b);
            for (int b = 0; b < m; ++b, ++row)  // trace at s = -1: P_m(-1) = (-1)^m
                for (int mx = 0; mx < m; ++mx)
                    C(row, loc(mx, b)) = (mx % 2 ? -1.0 : 1.0) * mom(b);
        } else {
            for (int b = 0; b < k; ++b)
                for (int a = 0; a < m; ++a) C(row++, loc(a, b)) = mom(a) * mom(b);
            for (int a = 0; a < m; ++a, ++row)  // trace at t = -1
                for (int ny = 0; ny < m; ++ny)
                    C(row, loc(a, ny)) = (ny % 2 ? -1.0 : 1.0) * mom(a);
        }
        lu.compute(C);
        // uniquely solvable by construction; a singular system is a bug
        if ((lu.matrixLU().diagonal().array().abs() < 1e-12).any()) {
            throw std::runtime_error("projection: singular reference condition matrix");
        }
    }
};

struct ElementGeometry {
    double x0, hx, y0, hy;
};

// Condition right-hand sides for target z on one element, same row layout.
void condition_rhs(const ReferenceConditions& rc, const ScalarFn& z, const ElementGeometry& g,
                   const QuadRule& quad, const BasisTable& bt, Eigen::VectorXd& rhs) {
    const int k = rc.k;
    const int m = k + 1;
    const int nq = quad.order;
    auto px = [&](int gq) { return g.x0 + 0.5 * (quad.nodes[gq] + 1.0) * g.hx; };
    auto py = [&](int gq) { return g.y0 + 0.5 * (quad.nodes[gq] + 1.0) * g.hy; };

    // interior reference moments int z(s,t) P_a P_b over needed (a,b)
    Eigen::MatrixXd zm = Eigen::MatrixXd::Zero(m, m);
    for (int gy = 0; gy < nq; ++gy) {
        const double y = py(gy);
        for (int gx = 0; gx < nq; ++gx) {
            const double w = quad.weights[gx] * quad.weights[gy] * z(px(gx), y);
            for (int b = 0; b < m; ++b) {
                const double wb = w * bt.val(gy, b);
                for (int a = 0; a < m; ++a) zm(a, b) += wb * bt.val(gx, a);
            }
        }
    }
    auto edge_moments = [&](bool vertical, double fixed, Eigen::VectorXd& out) {
        out.setZero(m);
        for (int gq = 0; gq < nq; ++gq) {
            const double v = vertical ? z(fixed, py(gq)) : z(px(gq), fixed);
            for (int a = 0; a < m; ++a) out(a) += quad.weights[gq] * v * bt.val(gq, a);
        }
    };

    int row = 0;
    if (rc.kind == ProjectionKind::Minus) {
        for (int b = 0; b < k; ++b)
            for (int a = 0; a < k; ++a) rhs(row++) = zm(a, b);
        Eigen::VectorXd e;
        edge_moments(true, g.x0 + g.hx, e);  // right edge x = x_i
        for (int b = 0; b < k; ++b) rhs(row++) = e(b);
        edge_moments(false, g.y0 + g.hy, e);  // top edge y = y_j
        for (int a = 0; a < k; ++a) rhs(row++) = e(a);
        rhs(row++) = z(g.x0 + g.hx, g.y0 + g.hy);
    } else if (rc.kind == ProjectionKind::XPlus) {
        for (int b = 0; b < m; ++b)
            for (int a = 0; a < k; ++a) rhs(row++) = zm(a, b);
        Eigen::VectorXd e;
        edge_moments(true, g.x0, e);  // left edge x = x_{i-1}
        for (int b = 0; b < m; ++b) rhs(row++) = e(b);
    } else {
        for (int b = 0; b < k; ++b)
            for (int a = 0; a < m; ++a) rhs(row++) = zm(a, b);
        Eigen::VectorXd e;
        edge_moments(false, g.y0, e);  // bottom edge y = y_{j-1}
        for (int a = 0; a < m; ++a) rhs(row++) = e(a);
    }
}

ElementGeometry geometry(const FemSpace& space, int i, int j) {
    return {space.mesh.x.points[i - 1], space.mesh.x.h(i), space.mesh.y.points[j - 1],
            space.mesh.y.h(j)};
}

}  // namespace

DiscreteField project(ProjectionKind kind, const ScalarFn& z, const FemSpace& space) {
    const ReferenceConditions rc(kind, space.degree);
    const QuadRule quad = gauss_legendre(error_quad_points(space.degree));
    const BasisTable bt(space.degree, quad.nodes);
    const int nloc = space.nloc();

    DiscreteField out = zero_field(space);
    Eigen::VectorXd rhs(nloc);
    for (int j = 1; j <= space.ny(); ++j) {
        for (int i = 1; i <= space.nx(); ++i) {
            condition_rhs(rc, z, geometry(space, i, j), quad, bt, rhs);
            out.coef.segment(space.elem(i, j) * nloc, nloc) = rc.lu.solve(rhs);
        }
    }
    return out;
}

DiscreteTriple project_triple(const Problem& problem, const FemSpace& space) {
    if (!problem.exact) {
        throw std::invalid_argument("project_triple: problem has no exact solution");
    }
    const ExactSolution& ex = *problem.exact;
    const double eps = problem.epsilon;
    ScalarFn p = [&ex, eps](double x, double y) { return eps * ex.u_x(x, y); };
    ScalarFn q = [&ex, eps](double x, double y) { return eps * ex.u_y(x, y); };
    return {project(ProjectionKind::Minus, ex.u, space),
            project(ProjectionKind::XPlus, p, space),
            project(ProjectionKind::YPlus, q, space)};
}

double condition_residual(ProjectionKind kind, const ScalarFn& z, const FemSpace& space,
                          const DiscreteField& projected, int i, int j) {
    const ReferenceConditions rc(kind, space.degree);
    const QuadRule quad = gauss_legendre(error_quad_points(space.degree));
    const BasisTable bt(space.degree, quad.nodes);
    const int nloc = space.nloc();
    const ElementGeometry g = geometry(space, i, j);

    Eigen::VectorXd rhs(nloc);
    condition_rhs(rc, z, g, quad, bt, rhs);

    // Rebuild the condition values of the projected polynomial by the same
    // quadrature route (the rule is exact for these polynomial integrands).
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(nloc, nloc);
    const int m = space.degree + 1;
    auto basis_fn = [&](int local) {
        return [local, m, &g](double x, double y) {
            const double s = 2.0 * (x - g.x0) / g.hx - 1.0;
            const double t = 2.0 * (y - g.y0) / g.hy - 1.0;
            double vs[16], ds[16], vt[16], dt[16];
            legendre_eval(m - 1, s, std::span<double>(vs, m), std::span<double>(ds, m));
            legendre_eval(m - 1, t, std::span<double>(vt, m), std::span<double>(dt, m));
            return vs[local % m] * vt[local / m];
        };
    };
    Eigen::VectorXd col(nloc);
    for (int local = 0; local < nloc; ++local) {
        condition_rhs(rc, basis_fn(local), g, quad, bt, col);
        C.col(local) = col;
    }
    const Eigen::VectorXd lhs = C * projected.coef.segment(space.elem(i, j) * nloc, nloc);

    // scale by ||z||_inf over the element's sample points
    double zmax = std::abs(z(g.x0 + g.hx, g.y0 + g.hy));
    for (int gx = 0; gx < quad.order; ++gx) {
        for (int gy = 0; gy < quad.order; ++gy) {
            const double x = g.x0 + 0.5 * (quad.nodes[gx] + 1.0) * g.hx;
            const double y = g.y0 + 0.5 * (quad.nodes[gy] + 1.0) * g.hy;
            zmax = std::max(zmax, std::abs(z(x, y)));
        }
    }
    return (lhs - rhs).cwiseAbs().maxCoeff() / std::max(zmax, 1e-30);
}

}  // namespace spldg
