#include "spldg/assembly.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "spldg/legendre.hpp"
#include "spldg/quadrature.hpp"

namespace spldg {

Eigen::VectorXd SparseSystem::apply(const Eigen::VectorXd& v) const {
    if (v.size() != n) throw std::invalid_argument("SparseSystem::apply: dimension mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < n; ++r) {
        double sum = 0.0;
        for (int idx = row_ptr[r]; idx < row_ptr[r + 1]; ++idx) {
            sum += values[idx] * v[col_idx[idx]];
        }
        out[r] = sum;
    }
    return out;
}

double SparseSystem::quadratic_form(const Eigen::VectorXd& v) const {
    return v.dot(apply(v));
}

void SparseSystem::dump_matrix_market(std::ostream& os) const {
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << n << ' ' << n << ' ' << nnz() << '\n';
    char buf[48];
    for (int r = 0; r < n; ++r) {
        for (int idx = row_ptr[r]; idx < row_ptr[r + 1]; ++idx) {
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r + 1, col_idx[idx] + 1,
                          values[idx]);
            os << buf;
        }
    }
}

namespace {

constexpr int kFieldU = 0, kFieldP = 1, kFieldQ = 2;

struct Workspace {
    int k, m, nloc, nq;
    QuadRule quad;
    BasisTable bt;
    Eigen::MatrixXd mref;  // int P_a P_b on [-1,1], by the declared rule
    Eigen::MatrixXd sref;  // int P'_a P_b

    Workspace(int degree, int quad_points)
        : k(degree),
          m(degree + 1),
          nloc(m * m),
          nq(quad_points),
          quad(gauss_legendre(quad_points)),
          bt(degree, quad.nodes) {
        mref = Eigen::MatrixXd::Zero(m, m);
        sref = Eigen::MatrixXd::Zero(m, m);
        for (int g = 0; g < nq; ++g) {
            for (int a = 0; a < m; ++a) {
                for (int b = 0; b < m; ++b) {
                    mref(a, b) += quad.weights[g] * bt.val(g, a) * bt.val(g, b);
                    sref(a, b) += quad.weights[g] * bt.der(g, a) * bt.val(g, b);
                }
            }
        }
    }
};

// Edge mass along one direction: E(a,b) = sum_g w_g c(g) P_a(g) P_b(g), with
// w_g already carrying the physical half-length.
template <typename CoefFn>
Eigen::MatrixXd edge_mass(const Workspace& ws, double half_len, CoefFn&& coef) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(ws.m, ws.m);
    for (int g = 0; g < ws.nq; ++g) {
        const double w = ws.quad.weights[g] * half_len * coef(g);
        for (int a = 0; a < ws.m; ++a) {
            const double wa = w * ws.bt.val(g, a);
            for (int b = 0; b < ws.m; ++b) e(a, b) += wa * ws.bt.val(g, b);
        }
    }
    return e;
}

// Expand a 1-D edge matrix over the y-index (or x-index) into the local
// tensor numbering, applying the x-trace (or y-trace) signs of rows/columns.
void add_expanded(Eigen::MatrixXd& block, const Eigen::MatrixXd& e1d, int m, bool x_edge,
                  double row_sign_odd, double col_sign_odd, double scale) {
    for (int ay = 0; ay < m; ++ay) {
        for (int ax = 0; ax < m; ++ax) {
            const int a = ax + m * ay;
            const double rs = ((x_edge ? ax : ay) % 2) ? row_sign_odd : 1.0;
            for (int by = 0; by < m; ++by) {
                for (int bx = 0; bx < m; ++bx) {
                    const int b = bx + m * by;
                    const double cs = ((x_edge ? bx : by) % 2) ? col_sign_odd : 1.0;
                    block(a, b) += scale * rs * cs *
                                   (x_edge ? e1d(ay, by) : e1d(ax, bx));
                }
            }
        }
    }
}

}  // namespace

AssembledSystem assemble(const FemSpace& space, const Problem& problem,
                         const AssemblyOptions& opts) {
    const int k = space.degree;
    if (opts.quad_points < k + 1 || opts.quad_points > 32) {
        throw std::invalid_argument(
            "assemble: quad_points must be >= degree+1 (mass exactness) and <= 32");
    }
    if (opts.lambda1 < 0 || opts.lambda2 < 0 || opts.lambda1 > 1e6 || opts.lambda2 > 1e6) {
        throw std::invalid_argument("assemble: lambda weights must be in [0, 1e6]");
    }

    Workspace ws(k, opts.quad_points);
    const int m = ws.m, nloc = ws.nloc, nq = ws.nq;
    const Mesh1D& mx = space.mesh.x;
    const Mesh1D& my = space.mesh.y;
    const int nx = space.nx(), ny = space.ny();
    const double inv_eps = 1.0 / problem.epsilon;

    AssembledSystem out;
    out.blocks.resize(space.n_elems());

    Eigen::VectorXd bvec(nloc), dxvec(nloc), dyvec(nloc);
    std::vector<double> xq(nq), yq(nq);

    for (int j = 1; j <= ny; ++j) {
        const double hy = my.h(j), y0 = my.points[j - 1];
        for (int g = 0; g < nq; ++g) yq[g] = y0 + 0.5 * (ws.quad.nodes[g] + 1.0) * hy;
        for (int i = 1; i <= nx; ++i) {
            const double hx = mx.h(i), x0 = mx.points[i - 1];
            for (int g = 0; g < nq; ++g) xq[g] = x0 + 0.5 * (ws.quad.nodes[g] + 1.0) * hx;
            ElementBlocks& eb = out.blocks[space.elem(i, j)];

            eb.sp = Eigen::MatrixXd::Zero(nloc, nloc);
            eb.rq = Eigen::MatrixXd::Zero(nloc, nloc);
            eb.su_self = Eigen::MatrixXd::Zero(nloc, nloc);
            eb.ru_self = Eigen::MatrixXd::Zero(nloc, nloc);
            eb.vu_self = Eigen::MatrixXd::Zero(nloc, nloc);
            eb.vp_self = Eigen::MatrixXd::Zero(nloc, nloc);
            eb.vq_self = Eigen::MatrixXd::Zero(nloc, nloc);
            eb.rhs_v = Eigen::VectorXd::Zero(nloc);
            if (i > 1) {
                eb.su_left = Eigen::MatrixXd::Zero(nloc, nloc);
                eb.vu_left = Eigen::MatrixXd::Zero(nloc, nloc);
            }
            if (j > 1) {
                eb.ru_down = Eigen::MatrixXd::Zero(nloc, nloc);
                eb.vu_down = Eigen::MatrixXd::Zero(nloc, nloc);
            }
            if (i < nx) eb.vp_right = Eigen::MatrixXd::Zero(nloc, nloc);
            if (j < ny) eb.vq_up = Eigen::MatrixXd::Zero(nloc, nloc);

            // ---- volume: separable constant-weight terms
            for (int ay = 0; ay < m; ++ay) {
                for (int ax = 0; ax < m; ++ax) {
                    const int a = ax + m * ay;
                    for (int by = 0; by < m; ++by) {
                        for (int bx = 0; bx < m; ++bx) {
                            const int b = bx + m * by;
                            const double mass =
                                0.25 * hx * hy * ws.mref(ax, bx) * ws.mref(ay, by);
                            const double gradx = 0.5 * hy * ws.sref(ax, bx) * ws.mref(ay, by);
                            const double grady = 0.5 * hx * ws.mref(ax, bx) * ws.sref(ay, by);
                            eb.sp(a, b) += inv_eps * mass;      // (P,s)/eps
                            eb.rq(a, b) += inv_eps * mass;      // (Q,r)/eps
                            eb.su_self(a, b) += gradx;          // (U, s_x)
                            eb.ru_self(a, b) += grady;          // (U, r_y)
                            eb.vp_self(a, b) += gradx;          // (P, v_x)
                            eb.vq_self(a, b) += grady;          // (Q, v_y)
                        }
                    }
                }
            }

            // ---- volume: variable-coefficient terms, rank-1 per quadrature point
            for (int gy = 0; gy < nq; ++gy) {
                for (int gx = 0; gx < nq; ++gx) {
                    const double x = xq[gx], y = yq[gy];
                    const double w =
                        0.25 * hx * hy * ws.quad.weights[gx] * ws.quad.weights[gy];
                    const double a1 = problem.a1(x, y);
                    const double a2 = problem.a2(x, y);
                    const double bnd = problem.b(x, y) - problem.div_a(x, y);
                    const double fv = problem.f(x, y);
                    if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(bnd) ||
                        !std::isfinite(fv)) {
                        throw std::runtime_error(
                            "assemble: non-finite coefficient/forcing value at quadrature "
                            "point");
                    }
                    for (int ay = 0; ay < m; ++ay) {
                        for (int ax = 0; ax < m; ++ax) {
                            const int a = ax + m * ay;
                            bvec(a) = ws.bt.val(gx, ax) * ws.bt.val(gy, ay);
                            dxvec(a) = 2.0 / hx * ws.bt.der(gx, ax) * ws.bt.val(gy, ay);
                            dyvec(a) = 2.0 / hy * ws.bt.val(gx, ax) * ws.bt.der(gy, ay);
                        }
                    }
                    // ((b - div a) U, v) - (a1 U, v_x) - (a2 U, v_y)
                    eb.vu_self.noalias() += (w * bnd) * (bvec * bvec.transpose());
                    eb.vu_self.noalias() -= (w * a1) * (dxvec * bvec.transpose());
                    eb.vu_self.noalias() -= (w * a2) * (dyvec * bvec.transpose());
                    eb.rhs_v.noalias() += (w * fv) * bvec;
                }
            }

            // ---- right edge x = x_i
            {
                const double xe = mx.points[i];
                auto one = [](int) { return 1.0; };
                auto a1e = [&](int g) { return problem.a1(xe, yq[g]); };
                const Eigen::MatrixXd ey = edge_mass(ws, 0.5 * hy, one);
                if (i < nx) {
                    const Eigen::MatrixXd ey_a1 = edge_mass(ws, 0.5 * hy, a1e);
                    // -(U^-, s^-) of T2; +(a1 U^-, v^-) of T4; -(P^+, v^-) of T3
                    add_expanded(eb.su_self, ey, m, true, 1.0, 1.0, -1.0);
                    add_expanded(eb.vu_self, ey_a1, m, true, 1.0, 1.0, +1.0);
                    add_expanded(eb.vp_right, ey, m, true, 1.0, -1.0, -1.0);
                } else {
                    // outflow: -(P^-_N, v^-_N) and +( (a1+lambda1) U^-, v^- )
                    auto a1l = [&](int g) { return problem.a1(xe, yq[g]) + opts.lambda1; };
                    const Eigen::MatrixXd ey_a1l = edge_mass(ws, 0.5 * hy, a1l);
                    add_expanded(eb.vp_self, ey, m, true, 1.0, 1.0, -1.0);
                    add_expanded(eb.vu_self, ey_a1l, m, true, 1.0, 1.0, +1.0);
                }
            }
            // ---- left edge x = x_{i-1}
            {
                const double xe = mx.points[i - 1];
                auto one = [](int) { return 1.0; };
                const Eigen::MatrixXd ey = edge_mass(ws, 0.5 * hy, one);
                // +(P^+, v^+) of T3, present for every i (hat{P} = P^+ at the inflow too)
                add_expanded(eb.vp_self, ey, m, true, -1.0, -1.0, +1.0);
                if (i > 1) {
                    auto a1e = [&](int g) { return problem.a1(xe, yq[g]); };
                    const Eigen::MatrixXd ey_a1 = edge_mass(ws, 0.5 * hy, a1e);
                    // +(U^-, s^+) of T2; -(a1 U^-, v^+) of T4
                    add_expanded(eb.su_left, ey, m, true, -1.0, 1.0, +1.0);
                    add_expanded(eb.vu_left, ey_a1, m, true, -1.0, 1.0, -1.0);
                }
            }
            // ---- top edge y = y_j
            {
                const double ye = my.points[j];
                auto one = [](int) { return 1.0; };
                auto a2e = [&](int g) { return problem.a2(xq[g], ye); };
                const Eigen::MatrixXd ex = edge_mass(ws, 0.5 * hx, one);
                if (j < ny) {
                    const Eigen::MatrixXd ex_a2 = edge_mass(ws, 0.5 * hx, a2e);
                    add_expanded(eb.ru_self, ex, m, false, 1.0, 1.0, -1.0);
                    add_expanded(eb.vu_self, ex_a2, m, false, 1.0, 1.0, +1.0);
                    add_expanded(eb.vq_up, ex, m, false, 1.0, -1.0, -1.0);
                } else {
                    auto a2l = [&](int g) { return problem.a2(xq[g], ye) + opts.lambda2; };
                    const Eigen::MatrixXd ex_a2l = edge_mass(ws, 0.5 * hx, a2l);
                    add_expanded(eb.vq_self, ex, m, false, 1.0, 1.0, -1.0);
                    add_expanded(eb.vu_self, ex_a2l, m, false, 1.0, 1.0, +1.0);
                }
            }
            // ---- bottom edge y = y_{j-1}
            {
                const double ye = my.points[j - 1];
                auto one = [](int) { return 1.0; };
                const Eigen::MatrixXd ex = edge_mass(ws, 0.5 * hx, one);
                add_expanded(eb.vq_self, ex, m, false, -1.0, -1.0, +1.0);
                if (j > 1) {
                    auto a2e = [&](int g) { return problem.a2(xq[g], ye); };
                    const Eigen::MatrixXd ex_a2 = edge_mass(ws, 0.5 * hx, a2e);
                    add_expanded(eb.ru_down, ex, m, false, -1.0, 1.0, +1.0);
                    add_expanded(eb.vu_down, ex_a2, m, false, -1.0, 1.0, -1.0);
                }
            }
        }
    }

    // ---- CSR assembly: per test row, column blocks in ascending global order
    SparseSystem& sys = out.system;
    sys.n = space.ndof_total();
    sys.rhs = Eigen::VectorXd::Zero(sys.n);
    sys.row_ptr.assign(sys.n + 1, 0);

    struct ColBlock {
        const Eigen::MatrixXd* mat;
        int col_base;
    };
    auto block_list = [&](int i, int j, int field, std::vector<ColBlock>& list) {
        list.clear();
        const ElementBlocks& eb = out.blocks[space.elem(i, j)];
        const int e = space.elem(i, j);
        if (field == kFieldU) {
            if (j > 1) list.push_back({&eb.vu_down, space.dof(e - nx, kFieldU, 0)});
            if (i > 1) list.push_back({&eb.vu_left, space.dof(e - 1, kFieldU, 0)});
            list.push_back({&eb.vu_self, space.dof(e, kFieldU, 0)});
            list.push_back({&eb.vp_self, space.dof(e, kFieldP, 0)});
            list.push_back({&eb.vq_self, space.dof(e, kFieldQ, 0)});
            if (i < nx) list.push_back({&eb.vp_right, space.dof(e + 1, kFieldP, 0)});
            if (j < ny) list.push_back({&eb.vq_up, space.dof(e + nx, kFieldQ, 0)});
        } else if (field == kFieldP) {
            if (i > 1) list.push_back({&eb.su_left, space.dof(e - 1, kFieldU, 0)});
            list.push_back({&eb.su_self, space.dof(e, kFieldU, 0)});
            list.push_back({&eb.sp, space.dof(e, kFieldP, 0)});
        } else {
            if (j > 1) list.push_back({&eb.ru_down, space.dof(e - nx, kFieldU, 0)});
            list.push_back({&eb.ru_self, space.dof(e, kFieldU, 0)});
            list.push_back({&eb.rq, space.dof(e, kFieldQ, 0)});
        }
    };

    std::vector<ColBlock> list;
    for (int j = 1; j <= ny; ++j) {
        for (int i = 1; i <= nx; ++i) {
            const int e = space.elem(i, j);
            for (int field = 0; field < 3; ++field) {
                block_list(i, j, field, list);
                const int row_base = space.dof(e, field, 0);
                for (int a = 0; a < nloc; ++a) {
                    sys.row_ptr[row_base + a + 1] =
                        static_cast<int>(list.size()) * nloc;
                }
            }
        }
    }
    for (int r = 0; r < sys.n; ++r) sys.row_ptr[r + 1] += sys.row_ptr[r];
    sys.col_idx.resize(sys.row_ptr[sys.n]);
    sys.values.resize(sys.row_ptr[sys.n]);

    for (int j = 1; j <= ny; ++j) {
        for (int i = 1; i <= nx; ++i) {
            const int e = space.elem(i, j);
            const ElementBlocks& eb = out.blocks[e];
            for (int field = 0; field < 3; ++field) {
                block_list(i, j, field, list);
                const int row_base = space.dof(e, field, 0);
                for (int a = 0; a < nloc; ++a) {
                    int idx = sys.row_ptr[row_base + a];
                    for (const ColBlock& cb : list) {
                        for (int b = 0; b < nloc; ++b, ++idx) {
                            sys.col_idx[idx] = cb.col_base + b;
                            sys.values[idx] = (*cb.mat)(a, b);
                        }
                    }
                }
                if (field == kFieldU) {
                    sys.rhs.segment(row_base, nloc) = eb.rhs_v;
                }
            }
        }
    }
    return out;
}

}  // namespace spldg
