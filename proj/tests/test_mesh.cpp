#include <cmath>
#include <sstream>

#include <doctest.h>

#include "spldg/mesh.hpp"

using namespace spldg;

TEST_CASE("transition parameter") {
    // sigma*eps/alpha * ln N for the S-mesh
    CHECK(transition_parameter(MeshKind::Shishkin, 0.01, 4.0, 1.0, 8) ==
          doctest::Approx(0.04 * std::log(8.0)).epsilon(1e-14));
    // clamp at 1/2 once sigma*eps*phi(1/2)/alpha >= 1/2
    CHECK(transition_parameter(MeshKind::Shishkin, 0.5, 4.0, 1.0, 8) == 0.5);
    CHECK(transition_parameter(MeshKind::BakhvalovShishkin, 1e-8, 4.0, 1.0, 16) ==
          doctest::Approx(4e-8 * std::log(16.0)).epsilon(1e-14));
    CHECK_THROWS_AS(transition_parameter(MeshKind::BakhvalovType, 1.0, 4.0, 1.0, 8),
                    std::domain_error);
    CHECK_THROWS_AS(transition_parameter(MeshKind::Shishkin, -1.0, 4.0, 1.0, 8),
                    std::invalid_argument);
}

TEST_CASE("mesh point formulas") {
    const Mesh1D s = build_mesh_1d(MeshKind::Shishkin, 8, 0.01, 4.0, 1.0);
    CHECK(s.points[8] == 1.0);  // phi(0) = 0 forces the endpoint
    CHECK(s.points[0] == 0.0);
    CHECK(s.points[6] == doctest::Approx(1.0 - 0.04 * std::log(8.0) / 2.0).epsilon(1e-14));
    CHECK(s.points[6] == doctest::Approx(0.9584111691664032).epsilon(1e-12));

    const Mesh1D b = build_mesh_1d(MeshKind::BakhvalovType, 8, 0.01, 4.0, 1.0);
    CHECK(b.points[7] ==
          doctest::Approx(1.0 + 0.04 * std::log(1.0 - 2.0 * (1.0 - 0.01) / 8.0))
              .epsilon(1e-14));
    CHECK(b.points[7] == doctest::Approx(0.9886258287056358).epsilon(1e-12));

    CHECK_THROWS_AS(build_mesh_1d(MeshKind::Shishkin, 7, 0.01, 4.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_mesh_1d(MeshKind::Shishkin, 2, 0.01, 4.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("mesh invariants across kinds, N and epsilon") {
    const double sigma = 4.0, alpha = 1.0;
    for (MeshKind kind :
         {MeshKind::Shishkin, MeshKind::BakhvalovShishkin, MeshKind::BakhvalovType}) {
        for (int n : {4, 8, 16, 32, 64, 128, 256}) {
            for (double eps : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
                const Mesh1D m = build_mesh_1d(kind, n, eps, sigma, alpha);
                REQUIRE(!m.uniform_fallback);
                for (int i = 1; i <= n; ++i) CHECK(m.points[i] > m.points[i - 1]);
                CHECK(std::abs(m.points[n / 2] - (1.0 - m.tau)) < 1e-14);
                for (int i = 1; i <= n / 2; ++i) {
                    CHECK(m.h(i) >= 1.0 / n - 1e-15);
                    CHECK(m.h(i) <= 2.0 / n + 1e-15);
                }
                for (int i = n / 2 + 1; i <= n; ++i) {
                    if (kind == MeshKind::Shishkin) {
                        CHECK(m.h(i) <=
                              2.0 * sigma / alpha * eps / n * std::log(n) * (1 + 1e-12));
                    } else if (kind == MeshKind::BakhvalovType) {
                        CHECK(m.h(i) <= 2.0 * sigma / alpha / n * (1 + 1e-12));
                    }
                }
                // psi(1/2) per the closed forms
                const double psi_half = mesh_psi(kind, 0.5, n, eps);
                const double expected =
                    kind == MeshKind::BakhvalovType ? eps : 1.0 / n;
                CHECK(std::abs(psi_half - expected) < 1e-14 * expected);
            }
        }
    }
}

TEST_CASE("mesh generating and characterizing functions") {
    for (MeshKind kind :
         {MeshKind::Shishkin, MeshKind::BakhvalovShishkin, MeshKind::BakhvalovType}) {
        const int n = 16;
        const double eps = 1e-3;
        CHECK(mesh_phi(kind, 0.0, n, eps) == 0.0);
        double prev_phi = 0.0, prev_slope = 0.0;
        const int samples = 50;
        for (int s = 1; s <= samples; ++s) {
            const double t = 0.5 * s / samples;
            const double phi = mesh_phi(kind, t, n, eps);
            CHECK(phi > prev_phi);  // strictly increasing
            const double slope = (phi - prev_phi) * samples / 0.5;
            if (s > 1) CHECK(slope >= prev_slope * (1 - 1e-10));  // convex
            prev_phi = phi;
            prev_slope = slope;
            // psi = exp(-phi) matches the closed forms of the three families
            double psi_closed = 0.0;
            if (kind == MeshKind::Shishkin) psi_closed = std::pow(n, -2.0 * t);
            if (kind == MeshKind::BakhvalovShishkin) psi_closed = 1.0 - 2.0 * (1.0 - 1.0 / n) * t;
            if (kind == MeshKind::BakhvalovType) psi_closed = 1.0 - 2.0 * (1.0 - eps) * t;
            CHECK(std::abs(mesh_psi(kind, t, n, eps) - psi_closed) < 1e-14);
        }
    }
}

TEST_CASE("uniform fallback when tau clamps") {
    const Mesh1D m = build_mesh_1d(MeshKind::Shishkin, 8, 0.5, 4.0, 1.0);
    CHECK(m.uniform_fallback);
    CHECK(m.tau == 0.5);
    for (int i = 0; i <= 8; ++i) CHECK(m.points[i] == doctest::Approx(i / 8.0));
}

TEST_CASE("mesh report and Table-1 values") {
    const TensorMesh mesh = build_tensor_mesh(MeshKind::Shishkin, 16, 1e-4, 4.0, 1.0, 2.0);
    const MeshReport rep = mesh_report(mesh, 2);
    CHECK(rep.max_abs_dpsi == doctest::Approx(2.0 * std::log(16.0)).epsilon(1e-14));
    CHECK(rep.rate_factor ==
          doctest::Approx(std::pow(2.0 * std::log(16.0) / 16.0, 3)).epsilon(1e-12));
    CHECK(rep.tau_y == doctest::Approx(rep.tau_x / 2.0).epsilon(1e-12));  // alpha2 = 2
    CHECK(mesh_max_abs_dpsi(MeshKind::BakhvalovShishkin, 99) == 2.0);
    CHECK(mesh_max_abs_dpsi(MeshKind::BakhvalovType, 4) == 2.0);

    // element areas tile the unit square
    double area = 0.0;
    for (int i = 1; i <= 16; ++i) {
        for (int j = 1; j <= 16; ++j) area += mesh.x.h(i) * mesh.y.h(j);
    }
    CHECK(std::abs(area - 1.0) < 1e-12);
}

TEST_CASE("locate resolves boundaries to the element on the left") {
    const Mesh1D m = build_mesh_1d(MeshKind::Shishkin, 8, 0.01, 4.0, 1.0);
    CHECK(m.locate(0.0) == 1);
    CHECK(m.locate(1.0) == 8);
    CHECK(m.locate(m.points[3]) == 3);
    CHECK(m.locate(0.5 * (m.points[3] + m.points[4])) == 4);
}

TEST_CASE("mesh dump format") {
    const TensorMesh mesh = build_tensor_mesh(MeshKind::BakhvalovShishkin, 4, 1e-3, 3.0, 1.0, 2.0);
    std::ostringstream os;
    dump_mesh(mesh, os);
    std::istringstream is(os.str());
    std::string line;
    int x_lines = 0;
    while (std::getline(is, line) && !line.empty()) {
        CHECK(std::abs(std::stod(line) - mesh.x.points[x_lines]) == 0.0);  // 17 digits round-trip
        ++x_lines;
    }
    CHECK(x_lines == 5);
    int y_lines = 0;
    while (std::getline(is, line) && !line.empty()) ++y_lines;
    CHECK(y_lines == 5);
}
