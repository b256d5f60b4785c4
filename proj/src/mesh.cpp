#include "spldg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace spldg {

const char* to_string(MeshKind kind) {
    switch (kind) {
        case MeshKind::Shishkin: return "shishkin";
        case MeshKind::BakhvalovShishkin: return "bs";
        case MeshKind::BakhvalovType: return "bakhvalov";
    }
    return "?";
}

MeshKind parse_mesh_kind(const std::string& name) {
    if (name == "shishkin") return MeshKind::Shishkin;
    if (name == "bs") return MeshKind::BakhvalovShishkin;
    if (name == "bakhvalov") return MeshKind::BakhvalovType;
    throw std::invalid_argument("unknown mesh kind '" + name +
                                "' (expected shishkin|bs|bakhvalov)");
}

double mesh_phi(MeshKind kind, double t, int n_cells, double epsilon) {
    switch (kind) {
        case MeshKind::Shishkin:
            return 2.0 * t * std::log(static_cast<double>(n_cells));
        case MeshKind::BakhvalovShishkin:
            return -std::log1p(-2.0 * (1.0 - 1.0 / n_cells) * t);
        case MeshKind::BakhvalovType:
            return -std::log1p(-2.0 * (1.0 - epsilon) * t);
    }
    return 0.0;
}

double mesh_phi_half(MeshKind kind, int n_cells, double epsilon) {
    switch (kind) {
        case MeshKind::Shishkin:
        case MeshKind::BakhvalovShishkin:
            return std::log(static_cast<double>(n_cells));
        case MeshKind::BakhvalovType:
            return std::log(1.0 / epsilon);
    }
    return 0.0;
}

double mesh_psi(MeshKind kind, double t, int n_cells, double epsilon) {
    return std::exp(-mesh_phi(kind, t, n_cells, epsilon));
}

double mesh_max_abs_dpsi(MeshKind kind, int n_cells) {
    return kind == MeshKind::Shishkin ? 2.0 * std::log(static_cast<double>(n_cells)) : 2.0;
}

double transition_parameter(MeshKind kind, double epsilon, double sigma, double alpha,
                            int n_cells) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("transition_parameter: epsilon <= 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("transition_parameter: sigma <= 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("transition_parameter: alpha <= 0");
    if (kind == MeshKind::BakhvalovType && epsilon >= 1.0) {
        throw std::domain_error(
            "transition_parameter: Bakhvalov-type mesh needs epsilon < 1 (phi(1/2) = ln(1/eps))");
    }
    return std::min(0.5, sigma * epsilon / alpha * mesh_phi_half(kind, n_cells, epsilon));
}

int Mesh1D::locate(double x) const {
    // first point >= x gives the element whose right end it is
    auto it = std::lower_bound(points.begin(), points.end(), x);
    int i = static_cast<int>(it - points.begin());
    return std::clamp(i, 1, n_cells);
}

Mesh1D build_mesh_1d(MeshKind kind, int n_cells, double epsilon, double sigma, double alpha) {
    if (n_cells < 4 || n_cells % 2 != 0) {
        throw std::invalid_argument("build_mesh_1d: N must be even and >= 4, got " +
                                    std::to_string(n_cells));
    }
    Mesh1D mesh;
    mesh.kind = kind;
    mesh.n_cells = n_cells;
    mesh.epsilon = epsilon;
    mesh.sigma = sigma;
    mesh.alpha = alpha;
    mesh.tau = transition_parameter(kind, epsilon, sigma, alpha, n_cells);
    mesh.points.resize(n_cells + 1);

    if (mesh.tau >= 0.5) {
        // The min clamped: not singularly perturbed, fall back to a uniform mesh.
        mesh.uniform_fallback = true;
        for (int i = 0; i <= n_cells; ++i) {
            mesh.points[i] = static_cast<double>(i) / n_cells;
        }
    } else {
        const double scale = sigma * epsilon / alpha;
        for (int i = 0; i <= n_cells; ++i) {
            if (i <= n_cells / 2) {
                mesh.points[i] = 2.0 * (1.0 - mesh.tau) * i / n_cells;
            } else {
                mesh.points[i] =
                    1.0 - scale * mesh_phi(kind, static_cast<double>(n_cells - i) / n_cells,
                                           n_cells, epsilon);
            }
        }
        mesh.points[n_cells] = 1.0;  // phi(0) = 0 forces the endpoint exactly
    }

    for (int i = 1; i <= n_cells; ++i) {
        if (!(mesh.points[i] > mesh.points[i - 1])) {
            throw std::runtime_error(
                "build_mesh_1d: non-monotone mesh points (inconsistent parameters, e.g. "
                "epsilon too small for double precision)");
        }
    }
    return mesh;
}

TensorMesh build_tensor_mesh(MeshKind kind, int n_cells, double epsilon, double sigma,
                             double alpha1, double alpha2) {
    return {build_mesh_1d(kind, n_cells, epsilon, sigma, alpha1),
            build_mesh_1d(kind, n_cells, epsilon, sigma, alpha2)};
}

namespace {
void span_minmax(const Mesh1D& m, int lo, int hi, double& hmin, double& hmax) {
    hmin = m.h(lo);
    hmax = m.h(lo);
    for (int i = lo; i <= hi; ++i) {
        hmin = std::min(hmin, m.h(i));
        hmax = std::max(hmax, m.h(i));
    }
}
}  // namespace

MeshReport mesh_report(const TensorMesh& mesh, int degree) {
    MeshReport r;
    const int n = mesh.x.n_cells;
    r.tau_x = mesh.x.tau;
    r.tau_y = mesh.y.tau;
    span_minmax(mesh.x, 1, n / 2, r.coarse_h_min_x, r.coarse_h_max_x);
    span_minmax(mesh.x, n / 2 + 1, n, r.fine_h_min_x, r.fine_h_max_x);
    span_minmax(mesh.y, 1, n / 2, r.coarse_h_min_y, r.coarse_h_max_y);
    span_minmax(mesh.y, n / 2 + 1, n, r.fine_h_min_y, r.fine_h_max_y);
    r.max_abs_dpsi = mesh_max_abs_dpsi(mesh.x.kind, n);
    r.rate_factor = std::pow(r.max_abs_dpsi / n, degree + 1);
    r.uniform_fallback = mesh.x.uniform_fallback || mesh.y.uniform_fallback;
    r.epsilon_exceeds_1_over_n = mesh.x.epsilon > 1.0 / n;
    return r;
}

void dump_mesh(const TensorMesh& mesh, std::ostream& os) {
    char buf[40];
    for (double p : mesh.x.points) {
        std::snprintf(buf, sizeof buf, "%.17g", p);
        os << buf << '\n';
    }
    os << '\n';
    for (double p : mesh.y.points) {
        std::snprintf(buf, sizeof buf, "%.17g", p);
        os << buf << '\n';
    }
}

}  // namespace spldg
