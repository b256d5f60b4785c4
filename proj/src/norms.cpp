#include "spldg/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "spldg/legendre.hpp"
#include "spldg/quadrature.hpp"

namespace spldg {

namespace {

// Per-element tensor evaluation of a discrete field at quadrature points.
class ElementValues {
public:
    ElementValues(const FemSpace& space, const BasisTable& bt)
        : space_(space), bt_(bt), m_(space.order_1d()), nq_(bt.n_nodes()) {
        work_.resize(m_ * nq_);
        grid_.resize(nq_ * nq_);
    }

    // values[gx + nq*gy] over the tensor quadrature grid of element e
    const std::vector<double>& grid(const DiscreteField& f, int e) {
        const auto* c = f.coef.data() + static_cast<ptrdiff_t>(e) * space_.nloc();
        // contract the x-index first: work[ay + m*gx] = sum_ax c P_ax(gx)
        for (int gx = 0; gx < nq_; ++gx) {
            for (int ay = 0; ay < m_; ++ay) {
                double row = 0.0;
                for (int ax = 0; ax < m_; ++ax) row += c[ax + m_ * ay] * bt_.val(gx, ax);
                work_[ay + m_ * gx] = row;
            }
        }
        for (int gy = 0; gy < nq_; ++gy) {
            for (int gx = 0; gx < nq_; ++gx) {
                double sum = 0.0;
                for (int ay = 0; ay < m_; ++ay) sum += work_[ay + m_ * gx] * bt_.val(gy, ay);
                grid_[gx + nq_ * gy] = sum;
            }
        }
        return grid_;
    }

private:
    const FemSpace& space_;
    const BasisTable& bt_;
    int m_, nq_;
    std::vector<double> work_;
    std::vector<double> grid_;
};

struct LnormParts {
    double eps_p = 0, eps_q = 0, weighted_u = 0;
};

// Triple-norm squared pieces; `exact_minus` subtracts the exact (u,p,q) when true.
LnormParts lnorm_parts(const FemSpace& space, const Problem& problem,
                       const DiscreteTriple& V, int quad_points, bool exact_minus) {
    if (exact_minus && !problem.exact) {
        throw std::invalid_argument("lnorm: exact solution required for mixed input");
    }
    const QuadRule quad = gauss_legendre(quad_points);
    const BasisTable bt(space.degree, quad.nodes);
    ElementValues vals_u(space, bt), vals_p(space, bt), vals_q(space, bt);
    const Mesh1D& mx = space.mesh.x;
    const Mesh1D& my = space.mesh.y;
    const int nq = quad.order;
    const double inv_eps = 1.0 / problem.epsilon;

    LnormParts parts;
    for (int j = 1; j <= space.ny(); ++j) {
        const double hy = my.h(j), y0 = my.points[j - 1];
        for (int i = 1; i <= space.nx(); ++i) {
            const double hx = mx.h(i), x0 = mx.points[i - 1];
            const int e = space.elem(i, j);
            const auto& gu = vals_u.grid(V.u, e);
            const auto& gp = vals_p.grid(V.p, e);
            const auto& gq = vals_q.grid(V.q, e);
            for (int gy = 0; gy < nq; ++gy) {
                const double y = y0 + 0.5 * (quad.nodes[gy] + 1.0) * hy;
                for (int gx = 0; gx < nq; ++gx) {
                    const double x = x0 + 0.5 * (quad.nodes[gx] + 1.0) * hx;
                    const double w =
                        0.25 * hx * hy * quad.weights[gx] * quad.weights[gy];
                    double du = gu[gx + nq * gy];
                    double dp = gp[gx + nq * gy];
                    double dq = gq[gx + nq * gy];
                    if (exact_minus) {
                        const ExactSolution& ex = *problem.exact;
                        du = ex.u(x, y) - du;
                        dp = problem.epsilon * ex.u_x(x, y) - dp;
                        dq = problem.epsilon * ex.u_y(x, y) - dq;
                    }
                    const double wu = problem.b(x, y) - 0.5 * problem.div_a(x, y);
                    if (wu < 0.0) {
                        throw std::runtime_error(
                            "lnorm: negative reaction weight b - div(a)/2 at (" +
                            std::to_string(x) + "," + std::to_string(y) +
                            "): coercivity violated");
                    }
                    parts.eps_p += w * inv_eps * dp * dp;
                    parts.eps_q += w * inv_eps * dq * dq;
                    parts.weighted_u += w * wu * du * du;
                }
            }
        }
    }
    return parts;
}

struct JumpParts {
    double x_interior = 0, x_outflow = 0, y_interior = 0, y_outflow = 0;
};

// Weighted squared-jump sums of a discrete scalar field, with the boundary
// conventions [v]_0 = v^+ and [v]_N = -v^-.
JumpParts jump_parts(const FemSpace& space, const Problem& problem,
                     const AssemblyOptions& opts, const DiscreteField& vu) {
    const QuadRule quad = gauss_legendre(opts.quad_points);
    const BasisTable bt(space.degree, quad.nodes);
    const int m = space.order_1d();
    const int nq = quad.order;
    const int nx = space.nx(), ny = space.ny();
    const Mesh1D& mx = space.mesh.x;
    const Mesh1D& my = space.mesh.y;

    // contraction of the x-index (or y-index) against the +-1 traces
    auto contract_x = [&](int e, double sign_odd, std::vector<double>& out) {
        const auto* c = vu.coef.data() + static_cast<ptrdiff_t>(e) * space.nloc();
        out.assign(m, 0.0);
        for (int ay = 0; ay < m; ++ay) {
            double sum = 0.0;
            for (int ax = 0; ax < m; ++ax) sum += c[ax + m * ay] * (ax % 2 ? sign_odd : 1.0);
            out[ay] = sum;
        }
    };
    auto contract_y = [&](int e, double sign_odd, std::vector<double>& out) {
        const auto* c = vu.coef.data() + static_cast<ptrdiff_t>(e) * space.nloc();
        out.assign(m, 0.0);
        for (int ax = 0; ax < m; ++ax) {
            double sum = 0.0;
            for (int ay = 0; ay < m; ++ay) sum += c[ax + m * ay] * (ay % 2 ? sign_odd : 1.0);
            out[ax] = sum;
        }
    };

    JumpParts parts;
    std::vector<double> cm, cp;
    // vertical edges x = x_i along J_j
    for (int j = 1; j <= ny; ++j) {
        const double hy = my.h(j), y0 = my.points[j - 1];
        for (int i = 0; i <= nx; ++i) {
            const double xe = mx.points[i];
            double acc = 0.0;
            for (int g = 0; g < nq; ++g) {
                const double y = y0 + 0.5 * (quad.nodes[g] + 1.0) * hy;
                double jump;
                if (i == 0) {
                    contract_x(space.elem(1, j), -1.0, cp);
                    jump = 0.0;
                    for (int ay = 0; ay < m; ++ay) jump += cp[ay] * bt.val(g, ay);
                } else if (i == nx) {
                    contract_x(space.elem(nx, j), 1.0, cm);
                    jump = 0.0;
                    for (int ay = 0; ay < m; ++ay) jump += cm[ay] * bt.val(g, ay);
                } else {
                    contract_x(space.elem(i, j), 1.0, cm);
                    contract_x(space.elem(i + 1, j), -1.0, cp);
                    jump = 0.0;
                    for (int ay = 0; ay < m; ++ay) {
                        jump += (cp[ay] - cm[ay]) * bt.val(g, ay);
                    }
                }
                const double weight = i == nx ? 0.5 * problem.a1(xe, y) + opts.lambda1
                                              : 0.5 * problem.a1(xe, y);
                acc += quad.weights[g] * 0.5 * hy * weight * jump * jump;
            }
            (i == nx ? parts.x_outflow : parts.x_interior) += acc;
        }
    }
    // horizontal edges y = y_j along I_i
    for (int i = 1; i <= nx; ++i) {
        const double hx = mx.h(i), x0 = mx.points[i - 1];
        for (int j = 0; j <= ny; ++j) {
            const double ye = my.points[j];
            double acc = 0.0;
            for (int g = 0; g < nq; ++g) {
                const double x = x0 + 0.5 * (quad.nodes[g] + 1.0) * hx;
                double jump;
                if (j == 0) {
                    contract_y(space.elem(i, 1), -1.0, cp);
                    jump = 0.0;
                    for (int ax = 0; ax < m; ++ax) jump += cp[ax] * bt.val(g, ax);
                } else if (j == ny) {
                    contract_y(space.elem(i, ny), 1.0, cm);
                    jump = 0.0;
                    for (int ax = 0; ax < m; ++ax) jump += cm[ax] * bt.val(g, ax);
                } else {
                    contract_y(space.elem(i, j), 1.0, cm);
                    contract_y(space.elem(i, j + 1), -1.0, cp);
                    jump = 0.0;
                    for (int ax = 0; ax < m; ++ax) {
                        jump += (cp[ax] - cm[ax]) * bt.val(g, ax);
                    }
                }
                const double weight = j == ny ? 0.5 * problem.a2(x, ye) + opts.lambda2
                                              : 0.5 * problem.a2(x, ye);
                acc += quad.weights[g] * 0.5 * hx * weight * jump * jump;
            }
            (j == ny ? parts.y_outflow : parts.y_interior) += acc;
        }
    }
    return parts;
}

ErrorComponents combine(const LnormParts& l, const JumpParts& jp) {
    ErrorComponents c;
    c.eps_p = l.eps_p;
    c.eps_q = l.eps_q;
    c.weighted_u = l.weighted_u;
    c.jump_x_interior = jp.x_interior;
    c.jump_x_outflow = jp.x_outflow;
    c.jump_y_interior = jp.y_interior;
    c.jump_y_outflow = jp.y_outflow;
    return c;
}

}  // namespace

double lnorm_triple(const FemSpace& space, const Problem& problem, const DiscreteTriple& V,
                    int quad_points) {
    const LnormParts p = lnorm_parts(space, problem, V, quad_points, false);
    return std::sqrt(p.eps_p + p.eps_q + p.weighted_u);
}

double lnorm_error(const FemSpace& space, const Problem& problem, const DiscreteTriple& W,
                   int quad_points) {
    const LnormParts p = lnorm_parts(space, problem, W, quad_points, true);
    return std::sqrt(p.eps_p + p.eps_q + p.weighted_u);
}

double energy_norm(const FemSpace& space, const Problem& problem, const AssemblyOptions& opts,
                   const DiscreteTriple& V) {
    const LnormParts l =
        lnorm_parts(space, problem, V, error_quad_points(space.degree), false);
    const JumpParts jp = jump_parts(space, problem, opts, V.u);
    return std::sqrt(combine(l, jp).sum());
}

double energy_error(const FemSpace& space, const Problem& problem, const AssemblyOptions& opts,
                    const DiscreteTriple& W) {
    const LnormParts l =
        lnorm_parts(space, problem, W, error_quad_points(space.degree), true);
    const JumpParts jp = jump_parts(space, problem, opts, W.u);
    return std::sqrt(combine(l, jp).sum());
}

ErrorReport error_report(const DiscreteTriple& W, const DiscreteTriple& projected,
                         const Problem& problem, const FemSpace& space,
                         const AssemblyOptions& opts) {
    const int eq = error_quad_points(space.degree);

    ErrorReport rep;
    // ||w - W||, with the exact solution at quadrature points
    const LnormParts le = lnorm_parts(space, problem, W, eq, true);
    rep.l2_triple = std::sqrt(le.eps_p + le.eps_q + le.weighted_u);
    // |||w - W|||: jumps of w - W reduce to jumps of W (w continuous, u = 0 on
    // the boundary)
    const JumpParts je = jump_parts(space, problem, opts, W.u);
    rep.energy_components = combine(le, je);
    rep.energy = std::sqrt(rep.energy_components.sum());
    // |||Pi w - W|||, purely discrete
    DiscreteTriple xi = projected;
    xi.u.coef -= W.u.coef;
    xi.p.coef -= W.p.coef;
    xi.q.coef -= W.q.coef;
    const LnormParts ls = lnorm_parts(space, problem, xi, eq, false);
    const JumpParts js = jump_parts(space, problem, opts, xi.u);
    rep.superclose_components = combine(ls, js);
    rep.supercloseness = std::sqrt(rep.superclose_components.sum());
    return rep;
}

}  // namespace spldg
