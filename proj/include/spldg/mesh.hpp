#pragma once

#include <iosfwd>
#include <vector>

namespace spldg {

// The three layer-adapted mesh families: Shishkin, Bakhvalov-Shishkin and
// Bakhvalov-type. They differ only in the mesh-generating function phi.
enum class MeshKind { Shishkin, BakhvalovShishkin, BakhvalovType };

const char* to_string(MeshKind kind);
MeshKind parse_mesh_kind(const std::string& name);  // "shishkin" | "bs" | "bakhvalov"

// Mesh-generating function phi on [0,1/2]: phi(0)=0, phi' > 0, phi'' >= 0.
double mesh_phi(MeshKind kind, double t, int n_cells, double epsilon);
double mesh_phi_half(MeshKind kind, int n_cells, double epsilon);
// Mesh-characterizing function psi = exp(-phi).
double mesh_psi(MeshKind kind, double t, int n_cells, double epsilon);
// max |psi'| over [0,1/2]: 2 ln N for Shishkin, 2 otherwise.
double mesh_max_abs_dpsi(MeshKind kind, int n_cells);

// tau = min(1/2, sigma*epsilon/alpha * phi(1/2)).
// Throws std::domain_error for epsilon >= 1 on the Bakhvalov-type mesh
// (phi(1/2) = ln(1/epsilon) would not be positive).
double transition_parameter(MeshKind kind, double epsilon, double sigma, double alpha,
                            int n_cells);

struct Mesh1D {
    MeshKind kind = MeshKind::Shishkin;
    int n_cells = 0;  // N, even, >= 4
    double epsilon = 0.0;
    double sigma = 0.0;
    double alpha = 0.0;
    double tau = 0.0;
    // tau hit the 1/2 clamp; the mesh degenerates to a uniform one and the
    // problem is not singularly perturbed in the usual sense.
    bool uniform_fallback = false;
    std::vector<double> points;  // x_0 = 0 < x_1 < ... < x_N = 1

    double h(int i) const { return points[i] - points[i - 1]; }  // i in 1..N
    // 1-based index of the element containing x; a mesh point belongs to the
    // element on its left, matching the one-sided trace convention v^-.
    int locate(double x) const;
};

// Mesh points per the closed-form rule: uniform spacing 2(1-tau)/N up to
// x_{N/2} = 1-tau, then x_i = 1 - (sigma*eps/alpha) phi((N-i)/N).
Mesh1D build_mesh_1d(MeshKind kind, int n_cells, double epsilon, double sigma, double alpha);

struct TensorMesh {
    Mesh1D x, y;
};

// Per-direction transition parameters: tau_x from alpha1, tau_y from alpha2.
TensorMesh build_tensor_mesh(MeshKind kind, int n_cells, double epsilon, double sigma,
                             double alpha1, double alpha2);

struct MeshReport {
    double tau_x = 0, tau_y = 0;
    double coarse_h_min_x = 0, coarse_h_max_x = 0, fine_h_min_x = 0, fine_h_max_x = 0;
    double coarse_h_min_y = 0, coarse_h_max_y = 0, fine_h_min_y = 0, fine_h_max_y = 0;
    double max_abs_dpsi = 0;      // Table-1 value, shared by both directions
    double rate_factor = 0;       // (N^{-1} max|psi'|)^{k+1} for the supplied degree
    bool uniform_fallback = false;
    bool epsilon_exceeds_1_over_n = false;  // Assumption eps <= 1/N violated
};
MeshReport mesh_report(const TensorMesh& mesh, int degree);

// One abscissa per line, 17 significant digits, x-direction then y-direction
// separated by a blank line.
void dump_mesh(const TensorMesh& mesh, std::ostream& os);

}  // namespace spldg
