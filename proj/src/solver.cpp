#include "spldg/solver.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace spldg {

namespace {

Eigen::SparseMatrix<double> to_eigen(const SparseSystem& sys) {
    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> trips;
    trips.reserve(sys.values.size());
    for (int r = 0; r < sys.n; ++r) {
        for (int idx = sys.row_ptr[r]; idx < sys.row_ptr[r + 1]; ++idx) {
            trips.emplace_back(r, sys.col_idx[idx], sys.values[idx]);
        }
    }
    Eigen::SparseMatrix<double> a(sys.n, sys.n);
    a.setFromTriplets(trips.begin(), trips.end());
    a.makeCompressed();
    return a;
}

}  // namespace

struct Factorization::Impl {
    Eigen::SparseMatrix<double> a;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    double norm_inf = 0.0;
};

Factorization::Factorization(const SparseSystem& system) : impl_(std::make_shared<Impl>()) {
    impl_->a = to_eigen(system);
    for (int r = 0; r < system.n; ++r) {
        double s = 0.0;
        for (int idx = system.row_ptr[r]; idx < system.row_ptr[r + 1]; ++idx) {
            s += std::abs(system.values[idx]);
        }
        impl_->norm_inf = std::max(impl_->norm_inf, s);
    }
    impl_->lu.analyzePattern(impl_->a);
    impl_->lu.factorize(impl_->a);
    if (impl_->lu.info() != Eigen::Success) {
        throw std::runtime_error(
            "factorize: numerically singular matrix (zero pivot); the bilinear form is "
            "coercive, so this signals an assembly or parameter bug");
    }
}

Eigen::VectorXd Factorization::solve(const Eigen::VectorXd& rhs) const {
    if (rhs.size() != impl_->a.rows()) {
        throw std::invalid_argument("Factorization::solve: dimension mismatch");
    }
    Eigen::VectorXd x = impl_->lu.solve(rhs);
    if (impl_->lu.info() != Eigen::Success) {
        throw std::runtime_error("Factorization::solve: backsubstitution failed");
    }
    return x;
}

double Factorization::condition_estimate() const {
    std::mt19937 gen(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double inv_norm = 0.0;
    for (int probe = 0; probe < 4; ++probe) {
        Eigen::VectorXd r(impl_->a.rows());
        for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = dist(gen);
        const Eigen::VectorXd x = impl_->lu.solve(r);
        inv_norm = std::max(inv_norm, x.lpNorm<Eigen::Infinity>() /
                                          r.lpNorm<Eigen::Infinity>());
    }
    return impl_->norm_inf * inv_norm;
}

int Factorization::size() const { return static_cast<int>(impl_->a.rows()); }

Factorization factorize(const SparseSystem& system) { return Factorization(system); }

Eigen::VectorXd solve(const Factorization& fact, const Eigen::VectorXd& rhs) {
    return fact.solve(rhs);
}

namespace {

// Eliminate P and Q elementwise: their equations couple each element only to
// itself and its left/bottom neighbour, so
//   P_e = -sp_e^{-1} (su_self_e U_e + su_left_e U_L),
// and substituting into the v-rows yields a U-only system with the five-point
// element stencil.
Eigen::VectorXd solve_condensed(const FemSpace& space, const AssembledSystem& assembled) {
    const int nloc = space.nloc();
    const int nx = space.nx(), ny = space.ny();
    const int nu = space.ndof_field();

    std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> sp_lu(space.n_elems()),
        rq_lu(space.n_elems());
    for (int e = 0; e < space.n_elems(); ++e) {
        sp_lu[e].compute(assembled.blocks[e].sp);
        rq_lu[e].compute(assembled.blocks[e].rq);
    }

    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> trips;
    Eigen::VectorXd rhs(nu);
    for (int j = 1; j <= ny; ++j) {
        for (int i = 1; i <= nx; ++i) {
            const int e = space.elem(i, j);
            const ElementBlocks& eb = assembled.blocks[e];
            Eigen::MatrixXd kk = eb.vu_self;
            kk.noalias() -= eb.vp_self * sp_lu[e].solve(eb.su_self);
            kk.noalias() -= eb.vq_self * rq_lu[e].solve(eb.ru_self);

            auto emit = [&](const Eigen::MatrixXd& blk, int e_col) {
                for (int a = 0; a < nloc; ++a) {
                    for (int b = 0; b < nloc; ++b) {
                        trips.emplace_back(e * nloc + a, e_col * nloc + b, blk(a, b));
                    }
                }
            };
            if (i < nx) {
                const int er = e + 1;
                const ElementBlocks& ebr = assembled.blocks[er];
                kk.noalias() -= eb.vp_right * sp_lu[er].solve(ebr.su_left);
                emit(Eigen::MatrixXd(-eb.vp_right * sp_lu[er].solve(ebr.su_self)), er);
            }
            if (j < ny) {
                const int et = e + nx;
                const ElementBlocks& ebt = assembled.blocks[et];
                kk.noalias() -= eb.vq_up * rq_lu[et].solve(ebt.ru_down);
                emit(Eigen::MatrixXd(-eb.vq_up * rq_lu[et].solve(ebt.ru_self)), et);
            }
            if (i > 1) {
                Eigen::MatrixXd kl = eb.vu_left;
                kl.noalias() -= eb.vp_self * sp_lu[e].solve(eb.su_left);
                emit(kl, e - 1);
            }
            if (j > 1) {
                Eigen::MatrixXd kb = eb.vu_down;
                kb.noalias() -= eb.vq_self * rq_lu[e].solve(eb.ru_down);
                emit(kb, e - nx);
            }
            emit(kk, e);
            rhs.segment(e * nloc, nloc) = eb.rhs_v;
        }
    }

    Eigen::SparseMatrix<double> a(nu, nu);
    a.setFromTriplets(trips.begin(), trips.end());
    a.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    if (lu.info() != Eigen::Success) {
        throw std::runtime_error("solve_condensed: singular reduced system");
    }
    const Eigen::VectorXd u = lu.solve(rhs);

    // back-substitute P and Q element by element
    Eigen::VectorXd mono(space.ndof_total());
    for (int j = 1; j <= ny; ++j) {
        for (int i = 1; i <= nx; ++i) {
            const int e = space.elem(i, j);
            const ElementBlocks& eb = assembled.blocks[e];
            Eigen::VectorXd pr = eb.su_self * u.segment(e * nloc, nloc);
            Eigen::VectorXd qr = eb.ru_self * u.segment(e * nloc, nloc);
            if (i > 1) pr.noalias() += eb.su_left * u.segment((e - 1) * nloc, nloc);
            if (j > 1) qr.noalias() += eb.ru_down * u.segment((e - nx) * nloc, nloc);
            mono.segment(space.dof(e, 0, 0), nloc) = u.segment(e * nloc, nloc);
            mono.segment(space.dof(e, 1, 0), nloc) = -sp_lu[e].solve(pr);
            mono.segment(space.dof(e, 2, 0), nloc) = -rq_lu[e].solve(qr);
        }
    }
    return mono;
}

}  // namespace

LdgSolution solve_assembled(const FemSpace& space, const AssembledSystem& assembled,
                            bool condense) {
    Eigen::VectorXd x;
    if (condense) {
        x = solve_condensed(space, assembled);
    } else {
        Factorization fact(assembled.system);
        x = fact.solve(assembled.system.rhs);
    }
    const Eigen::VectorXd resid = assembled.system.apply(x) - assembled.system.rhs;
    const double bn = assembled.system.rhs.norm();
    LdgSolution sol;
    sol.W = split_triple(space, x);
    sol.rel_residual = bn > 0.0 ? resid.norm() / bn : resid.norm();
    return sol;
}

LdgSolution solve_ldg(const FemSpace& space, const Problem& problem,
                      const AssemblyOptions& opts) {
    if (!opts.condense && space.degree >= 2 && space.nx() > 512) {
        throw std::invalid_argument(
            "solve_ldg: monolithic direct solve refused for N > 512 at degree >= 2; "
            "enable the condense option (element-sweep elimination of P and Q)");
    }
    const AssembledSystem assembled = assemble(space, problem, opts);
    return solve_assembled(space, assembled, opts.condense);
}

}  // namespace spldg
