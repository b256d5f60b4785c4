#include "spldg/fem_space.hpp"

#include <stdexcept>

#include "spldg/legendre.hpp"

namespace spldg {

FemSpace make_space(TensorMesh mesh, int degree) {
    if (degree < 1 || degree > 12) {
        throw std::invalid_argument("make_space: degree must be in [1,12]");
    }
    if (mesh.x.n_cells != mesh.y.n_cells) {
        throw std::invalid_argument("make_space: x/y cell counts differ");
    }
    FemSpace space;
    space.mesh = std::move(mesh);
    space.degree = degree;
    return space;
}

double DiscreteField::eval(double x, double y) const {
    if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) {
        throw std::domain_error("DiscreteField::eval: point outside [0,1]^2");
    }
    const Mesh1D& mx = space->mesh.x;
    const Mesh1D& my = space->mesh.y;
    const int i = mx.locate(x);
    const int j = my.locate(y);
    const double s = 2.0 * (x - mx.points[i - 1]) / mx.h(i) - 1.0;
    const double t = 2.0 * (y - my.points[j - 1]) / my.h(j) - 1.0;
    return eval_ref(i, j, s, t);
}

double DiscreteField::eval_ref(int i, int j, double s, double t) const {
    const int m = space->order_1d();
    double vs[16], ds[16], vt[16], dt[16];
    legendre_eval(space->degree, s, std::span<double>(vs, m), std::span<double>(ds, m));
    legendre_eval(space->degree, t, std::span<double>(vt, m), std::span<double>(dt, m));
    const int base = space->elem(i, j) * space->nloc();
    double sum = 0.0;
    for (int iy = 0; iy < m; ++iy) {
        double row = 0.0;
        for (int ix = 0; ix < m; ++ix) row += coef[base + ix + m * iy] * vs[ix];
        sum += row * vt[iy];
    }
    return sum;
}

DiscreteField zero_field(const FemSpace& space) {
    return {&space, Eigen::VectorXd::Zero(space.ndof_field())};
}

DiscreteTriple zero_triple(const FemSpace& space) {
    return {zero_field(space), zero_field(space), zero_field(space)};
}

DiscreteTriple split_triple(const FemSpace& space, const Eigen::VectorXd& monolithic) {
    if (monolithic.size() != space.ndof_total()) {
        throw std::invalid_argument("split_triple: dimension mismatch");
    }
    DiscreteTriple triple = zero_triple(space);
    const int n = space.nloc();
    for (int e = 0; e < space.n_elems(); ++e) {
        for (int f = 0; f < 3; ++f) {
            DiscreteField& fld = f == 0 ? triple.u : (f == 1 ? triple.p : triple.q);
            fld.coef.segment(e * n, n) = monolithic.segment((e * 3 + f) * n, n);
        }
    }
    return triple;
}

Eigen::VectorXd merge_triple(const DiscreteTriple& triple) {
    const FemSpace& space = *triple.u.space;
    Eigen::VectorXd mono(space.ndof_total());
    const int n = space.nloc();
    for (int e = 0; e < space.n_elems(); ++e) {
        mono.segment((e * 3 + 0) * n, n) = triple.u.coef.segment(e * n, n);
        mono.segment((e * 3 + 1) * n, n) = triple.p.coef.segment(e * n, n);
        mono.segment((e * 3 + 2) * n, n) = triple.q.coef.segment(e * n, n);
    }
    return mono;
}

}  // namespace spldg
