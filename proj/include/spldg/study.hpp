#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spldg/norms.hpp"
#include "spldg/solver.hpp"

namespace spldg {

// Observed-order formulas of the experiments: r2 measures against N^{-r},
// rS against (N^{-1} ln N)^{r}.
double rate_r2(double e_N, double e_2N);
double rate_rS(double e_N, double e_2N, int N);

enum class RateKind { Auto, R2, RS };  // Auto: rS for Shishkin, r2 otherwise

struct StudyConfig {
    MeshKind mesh = MeshKind::Shishkin;
    int degree = 1;
    double epsilon = 1e-8;
    std::vector<int> n_values;          // doubling sequence for studies
    std::vector<double> eps_values;     // robustness sweep (run_robustness)
    std::optional<double> sigma;        // default k+2
    RateKind rates = RateKind::Auto;
    AssemblyOptions assembly;
    int jobs = 1;
    bool allow_tiny_epsilon = false;    // accept epsilon < 1e-10
};

struct StudyRow {
    int N = 0;
    double epsilon = 0;
    bool failed = false;
    std::string message;
    double l2 = 0, superclose = 0, energy = 0;
    // NaN = not present (first row, failed neighbour, robustness table)
    double l2_rate, superclose_rate, energy_rate;
    double residual = 0;
};

struct ConvergenceTable {
    MeshKind mesh = MeshKind::Shishkin;
    int degree = 1;
    double sigma = 0;
    double lambda1 = 0, lambda2 = 0;
    int quad_points = 5;
    RateKind rates_used = RateKind::R2;
    bool is_robustness = false;
    std::vector<StudyRow> rows;
    std::vector<std::string> warnings;
    bool any_failed() const;
};

// One full pipeline: mesh -> space -> assemble -> solve -> project -> errors.
struct RunResult {
    ErrorReport report;
    double residual = 0;
    MeshReport mesh_info;
    int dofs = 0;
    std::vector<std::string> warnings;
};
RunResult run_single(MeshKind kind, int N, int degree, double epsilon, double sigma,
                     const AssemblyOptions& opts);

ConvergenceTable run_study(const StudyConfig& config);
ConvergenceTable run_robustness(const StudyConfig& config);

// CSV schema: mesh,k,epsilon,sigma,N,l2_err,l2_rate,superclose_err,
// superclose_rate,energy_err,energy_rate. 6 significant digits, empty rate
// cells where no rate exists, locale-independent.
void write_csv(const ConvergenceTable& table, std::ostream& os);
// Error|rate interleaved layout for visual diffing against the reference.
void write_markdown(const ConvergenceTable& table, std::ostream& os);

// Least-squares slope of log(err) against the rate model over several N.
double fitted_rate(std::span<const int> Ns, std::span<const double> errs, RateKind kind);

}  // namespace spldg
