// Command-line driver: solve one case, run a convergence study across N, or
// sweep epsilon at fixed N (robustness), for the built-in test problem.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spldg/projection.hpp"
#include "spldg/study.hpp"

namespace {

using nlohmann::json;
using namespace spldg;

struct CommonOpts {
    std::string mesh = "shishkin";
    int degree = 1;
    double sigma = -1.0;  // <0: default k+2
    AssemblyOptions assembly;
    bool allow_tiny_epsilon = false;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--mesh", c.mesh, "Mesh family")
        ->check(CLI::IsMember({"shishkin", "bs", "bakhvalov"}))
        ->required();
    cmd->add_option("--degree", c.degree, "Polynomial degree k >= 1")->required();
    cmd->add_option("--sigma", c.sigma, "Mesh parameter sigma (default k+2)");
    cmd->add_option("--lambda1", c.assembly.lambda1, "Penalty weight on x=1 edges");
    cmd->add_option("--lambda2", c.assembly.lambda2, "Penalty weight on y=1 edges");
    cmd->add_option("--quad", c.assembly.quad_points,
                    "Gauss-Legendre points per direction for assembly");
    cmd->add_flag("--condense", c.assembly.condense,
                  "Eliminate P,Q elementwise before the sparse solve");
    cmd->add_flag("--allow-tiny-epsilon", c.allow_tiny_epsilon,
                  "Accept epsilon < 1e-10 despite roundoff in mesh coordinates");
    cmd->add_option("--out", c.out, "Output path")->required();
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

StudyConfig make_config(const CommonOpts& c) {
    StudyConfig config;
    config.mesh = parse_mesh_kind(c.mesh);
    config.degree = c.degree;
    if (c.sigma >= 0) config.sigma = c.sigma;
    config.assembly = c.assembly;
    config.allow_tiny_epsilon = c.allow_tiny_epsilon;
    return config;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::invalid_argument("cannot open output file '" + path + "'");
    return os;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_solve(const CommonOpts& c, double epsilon, int n, const std::string& dump_mesh_path,
              const std::string& dump_matrix_path, bool want_condition) {
    const double sigma = c.sigma >= 0 ? c.sigma : static_cast<double>(c.degree + 2);
    if (epsilon < 1e-10 && !c.allow_tiny_epsilon) {
        throw std::invalid_argument(
            "epsilon < 1e-10 rejected; pass --allow-tiny-epsilon to proceed");
    }
    const TensorMesh mesh =
        build_tensor_mesh(parse_mesh_kind(c.mesh), n, epsilon, sigma, 1.0, 2.0);
    const FemSpace space = make_space(mesh, c.degree);
    const MeshReport mrep = mesh_report(space.mesh, c.degree);
    std::vector<std::string> warnings;
    if (mrep.uniform_fallback) {
        warnings.push_back("transition parameter clamped at 1/2: uniform mesh in use");
    }
    if (mrep.epsilon_exceeds_1_over_n) warnings.push_back("epsilon > 1/N");
    if (c.sigma >= 0 && c.sigma != c.degree + 2) {
        warnings.push_back("sigma overridden from the default k+2: no rate promise");
    }
    print_warnings(warnings);

    if (!dump_mesh_path.empty()) {
        auto os = open_out(dump_mesh_path);
        dump_mesh(space.mesh, os);
    }

    const Problem problem = example1(epsilon);
    const AssembledSystem assembled = assemble(space, problem, c.assembly);
    if (!dump_matrix_path.empty()) {
        auto os = open_out(dump_matrix_path);
        assembled.system.dump_matrix_market(os);
    }
    const LdgSolution sol = solve_assembled(space, assembled, c.assembly.condense);
    const DiscreteTriple projected = project_triple(problem, space);
    const ErrorReport rep = error_report(sol.W, projected, problem, space, c.assembly);

    json j;
    j["mesh"] = c.mesh;
    j["N"] = n;
    j["degree"] = c.degree;
    j["epsilon"] = epsilon;
    j["sigma"] = sigma;
    j["lambda1"] = c.assembly.lambda1;
    j["lambda2"] = c.assembly.lambda2;
    j["quad_points"] = c.assembly.quad_points;
    j["dofs"] = space.ndof_total();
    j["tau_x"] = mrep.tau_x;
    j["tau_y"] = mrep.tau_y;
    j["max_abs_dpsi"] = mrep.max_abs_dpsi;
    j["rate_factor"] = mrep.rate_factor;
    j["errors"] = {{"l2", rep.l2_triple},
                   {"superclose", rep.supercloseness},
                   {"energy", rep.energy}};
    j["residual"] = sol.rel_residual;
    j["warnings"] = warnings;
    if (want_condition) {
        j["condition_estimate"] = factorize(assembled.system).condition_estimate();
    }
    auto os = open_out(c.out);
    os << j.dump(2) << '\n';
    return sol.rel_residual <= 1e-9 ? 0 : 3;
}

int write_table(const ConvergenceTable& table, const std::string& path,
                const std::string& format) {
    auto os = open_out(path);
    if (format == "md") {
        write_markdown(table, os);
    } else {
        write_csv(table, os);
    }
    print_warnings(table.warnings);
    for (const StudyRow& row : table.rows) {
        if (row.failed) {
            std::cerr << "row N=" << row.N << " eps=" << row.epsilon
                      << " failed: " << row.message << '\n';
        }
    }
    return table.any_failed() ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LDG solver for singularly perturbed convection-diffusion on "
                 "layer-adapted meshes"};
    app.require_subcommand(1);

    CommonOpts cs, ct, cr;
    double eps_solve = 1e-8, eps_study = 1e-8;
    int n_solve = 16, n_robust = 128;
    std::string n_list = "16,32,64,128";
    std::string eps_list;
    std::string rates = "auto";
    std::string format = "csv";
    std::string dump_mesh_path, dump_matrix_path;
    bool want_condition = false;
    int jobs = 1;

    CLI::App* solve = app.add_subcommand("solve", "Solve one case and report errors");
    add_common(solve, cs);
    solve->add_option("--N", n_solve, "Mesh intervals per direction")->required();
    solve->add_option("--epsilon", eps_solve, "Perturbation parameter")->required();
    solve->add_option("--dump-mesh", dump_mesh_path, "Write mesh abscissae to file");
    solve->add_option("--dump-matrix", dump_matrix_path,
                      "Write the assembled matrix in Matrix Market format");
    solve->add_flag("--condition", want_condition,
                    "Also report a condition estimate of the monolithic matrix");

    CLI::App* study = app.add_subcommand("study", "Convergence study across N");
    add_common(study, ct);
    study->add_option("--N", n_list, "Comma list of doubling N values")->required();
    study->add_option("--epsilon", eps_study, "Perturbation parameter")->required();
    study->add_option("--rates", rates, "Rate formula")
        ->check(CLI::IsMember({"auto", "r2", "rS"}));
    study->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "md"}));
    study->add_option("--jobs", jobs, "Max rows solved concurrently");

    CLI::App* robust = app.add_subcommand("robust", "Error sweep across epsilon at fixed N");
    add_common(robust, cr);
    robust->add_option("--N", n_robust, "Mesh intervals per direction")->required();
    robust->add_option("--epsilon", eps_list, "Comma list of epsilon values")->required();
    robust->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "md"}));
    robust->add_option("--jobs", jobs, "Max rows solved concurrently");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(cs, eps_solve, n_solve, dump_mesh_path, dump_matrix_path,
                             want_condition);
        }
        if (study->parsed()) {
            StudyConfig config = make_config(ct);
            config.epsilon = eps_study;
            config.n_values = parse_int_list(n_list);
            config.jobs = jobs;
            config.rates = rates == "r2" ? RateKind::R2
                           : rates == "rS" ? RateKind::RS
                                           : RateKind::Auto;
            return write_table(run_study(config), ct.out, format);
        }
        StudyConfig config = make_config(cr);
        config.n_values = {n_robust};
        config.eps_values = parse_real_list(eps_list);
        config.jobs = jobs;
        return write_table(run_robustness(config), cr.out, format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}
