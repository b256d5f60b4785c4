#include "spldg/study.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "spldg/projection.hpp"

namespace spldg {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt6(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

std::string fmt_rate(double v) { return std::isnan(v) ? std::string() : fmt6(v); }
}  // namespace

double rate_r2(double e_N, double e_2N) {
    if (!(e_N > 0.0) || !(e_2N > 0.0)) {
        throw std::invalid_argument("rate_r2: errors must be positive");
    }
    return std::log(e_N / e_2N) / std::log(2.0);
}

double rate_rS(double e_N, double e_2N, int N) {
    if (!(e_N > 0.0) || !(e_2N > 0.0)) {
        throw std::invalid_argument("rate_rS: errors must be positive");
    }
    if (N < 4) throw std::invalid_argument("rate_rS: N must be >= 4");
    return std::log(e_N / e_2N) / std::log(2.0 * std::log(N) / std::log(2.0 * N));
}

double fitted_rate(std::span<const int> Ns, std::span<const double> errs, RateKind kind) {
    if (Ns.size() != errs.size() || Ns.size() < 2) {
        throw std::invalid_argument("fitted_rate: need >= 2 samples");
    }
    // least squares of log(err) = c - r*log(1/model), model = 1/N or ln(N)/N
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(Ns.size());
    for (size_t idx = 0; idx < Ns.size(); ++idx) {
        const double model = kind == RateKind::RS
                                 ? std::log(static_cast<double>(Ns[idx])) / Ns[idx]
                                 : 1.0 / Ns[idx];
        const double x = std::log(model);
        const double y = std::log(errs[idx]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RunResult run_single(MeshKind kind, int N, int degree, double epsilon, double sigma,
                     const AssemblyOptions& opts) {
    RunResult res;
    const TensorMesh mesh = build_tensor_mesh(kind, N, epsilon, sigma, 1.0, 2.0);
    const FemSpace space = make_space(mesh, degree);
    res.mesh_info = mesh_report(space.mesh, degree);
    if (res.mesh_info.uniform_fallback) {
        res.warnings.push_back(
            "transition parameter clamped at 1/2: problem not singularly perturbed, "
            "using a uniform mesh");
    }
    if (res.mesh_info.epsilon_exceeds_1_over_n) {
        res.warnings.push_back("epsilon > 1/N: layer-adapted theory assumes eps <= 1/N");
    }
    res.dofs = space.ndof_total();

    const Problem problem = example1(epsilon);
    const LdgSolution sol = solve_ldg(space, problem, opts);
    res.residual = sol.rel_residual;
    const DiscreteTriple projected = project_triple(problem, space);
    res.report = error_report(sol.W, projected, problem, space, opts);
    return res;
}

namespace {

void validate_common(const StudyConfig& config, double& sigma) {
    if (config.degree < 1) throw std::invalid_argument("study: degree must be >= 1");
    sigma = config.sigma.value_or(static_cast<double>(config.degree + 2));
    if (!(sigma > 0)) throw std::invalid_argument("study: sigma must be positive");
    if (config.jobs < 1) throw std::invalid_argument("study: jobs must be >= 1");
}

void check_epsilon(double eps, bool allow_tiny) {
    if (!(eps > 0)) throw std::invalid_argument("study: epsilon must be positive");
    if (eps < 1e-10 && !allow_tiny) {
        throw std::invalid_argument(
            "study: epsilon < 1e-10 rejected (mesh coordinates would approach unit "
            "roundoff); pass the override to proceed");
    }
}

ConvergenceTable make_table(const StudyConfig& config, double sigma, bool robustness) {
    ConvergenceTable table;
    table.mesh = config.mesh;
    table.degree = config.degree;
    table.sigma = sigma;
    table.lambda1 = config.assembly.lambda1;
    table.lambda2 = config.assembly.lambda2;
    table.quad_points = config.assembly.quad_points;
    table.rates_used = config.rates != RateKind::Auto ? config.rates
                       : config.mesh == MeshKind::Shishkin ? RateKind::RS
                                                           : RateKind::R2;
    table.is_robustness = robustness;
    if (config.sigma.has_value() &&
        *config.sigma != static_cast<double>(config.degree + 2)) {
        table.warnings.push_back("sigma overridden from the default k+2: no rate promise");
    }
    return table;
}

template <typename RowFn>
void run_rows(int n_rows, int jobs, RowFn&& fn) {
    if (jobs <= 1) {
        for (int r = 0; r < n_rows; ++r) fn(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int n_threads = std::min(jobs, n_rows);
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&]() {
            for (int r = next.fetch_add(1); r < n_rows; r = next.fetch_add(1)) fn(r);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

bool ConvergenceTable::any_failed() const {
    return std::any_of(rows.begin(), rows.end(), [](const StudyRow& r) { return r.failed; });
}

ConvergenceTable run_study(const StudyConfig& config) {
    double sigma = 0;
    validate_common(config, sigma);
    check_epsilon(config.epsilon, config.allow_tiny_epsilon);
    if (config.n_values.empty()) throw std::invalid_argument("study: empty N list");
    for (size_t r = 0; r + 1 < config.n_values.size(); ++r) {
        if (config.n_values[r + 1] != 2 * config.n_values[r]) {
            throw std::invalid_argument("study: N list must double between entries");
        }
    }

    ConvergenceTable table = make_table(config, sigma, false);
    table.rows.resize(config.n_values.size());
    run_rows(static_cast<int>(config.n_values.size()), config.jobs, [&](int r) {
        StudyRow& row = table.rows[r];
        row.N = config.n_values[r];
        row.epsilon = config.epsilon;
        row.l2_rate = row.superclose_rate = row.energy_rate = kNaN;
        try {
            const RunResult res = run_single(config.mesh, row.N, config.degree,
                                             config.epsilon, sigma, config.assembly);
            row.l2 = res.report.l2_triple;
            row.superclose = res.report.supercloseness;
            row.energy = res.report.energy;
            row.residual = res.residual;
            for (const auto& w : res.warnings) table.warnings.push_back(w);
        } catch (const std::exception& ex) {
            row.failed = true;
            row.message = ex.what();
        }
    });

    for (size_t r = 1; r < table.rows.size(); ++r) {
        const StudyRow& prev = table.rows[r - 1];
        StudyRow& row = table.rows[r];
        if (prev.failed || row.failed) continue;
        auto rate = [&](double e_prev, double e_cur) {
            return table.rates_used == RateKind::RS ? rate_rS(e_prev, e_cur, prev.N)
                                                    : rate_r2(e_prev, e_cur);
        };
        row.l2_rate = rate(prev.l2, row.l2);
        row.superclose_rate = rate(prev.superclose, row.superclose);
        row.energy_rate = rate(prev.energy, row.energy);
    }
    return table;
}

ConvergenceTable run_robustness(const StudyConfig& config) {
    double sigma = 0;
    validate_common(config, sigma);
    if (config.n_values.size() != 1) {
        throw std::invalid_argument("robustness: exactly one N required");
    }
    if (config.eps_values.empty()) {
        throw std::invalid_argument("robustness: empty epsilon list");
    }
    for (double eps : config.eps_values) {
        check_epsilon(eps, config.allow_tiny_epsilon);
    }

    ConvergenceTable table = make_table(config, sigma, true);
    table.rows.resize(config.eps_values.size());
    run_rows(static_cast<int>(config.eps_values.size()), config.jobs, [&](int r) {
        StudyRow& row = table.rows[r];
        row.N = config.n_values[0];
        row.epsilon = config.eps_values[r];
        row.l2_rate = row.superclose_rate = row.energy_rate = kNaN;
        try {
            const RunResult res = run_single(config.mesh, row.N, config.degree,
                                             row.epsilon, sigma, config.assembly);
            row.l2 = res.report.l2_triple;
            row.superclose = res.report.supercloseness;
            row.energy = res.report.energy;
            row.residual = res.residual;
            for (const auto& w : res.warnings) table.warnings.push_back(w);
        } catch (const std::exception& ex) {
            row.failed = true;
            row.message = ex.what();
        }
    });
    return table;
}

void write_csv(const ConvergenceTable& table, std::ostream& os) {
    os << "mesh,k,epsilon,sigma,N,l2_err,l2_rate,superclose_err,superclose_rate,"
          "energy_err,energy_rate\n";
    for (const StudyRow& row : table.rows) {
        os << to_string(table.mesh) << ',' << table.degree << ',' << fmt6(row.epsilon)
           << ',' << fmt6(table.sigma) << ',' << row.N << ',';
        if (row.failed) {
            os << ",,,,,\n";
            continue;
        }
        os << fmt6(row.l2) << ',' << fmt_rate(row.l2_rate) << ',' << fmt6(row.superclose)
           << ',' << fmt_rate(row.superclose_rate) << ',' << fmt6(row.energy) << ','
           << fmt_rate(row.energy_rate) << '\n';
    }
}

void write_markdown(const ConvergenceTable& table, std::ostream& os) {
    const char* rname = table.rates_used == RateKind::RS ? "rS" : "r2";
    os << "## " << to_string(table.mesh) << " mesh, k = " << table.degree
       << ", sigma = " << fmt6(table.sigma);
    if (!table.is_robustness) os << ", epsilon = " << fmt6(table.rows.front().epsilon);
    os << "\n\n";
    if (table.is_robustness) {
        os << "| epsilon | l2_err | superclose_err | energy_err |\n";
        os << "|---|---|---|---|\n";
        for (const StudyRow& row : table.rows) {
            if (row.failed) {
                os << "| " << fmt6(row.epsilon) << " | failed: " << row.message
                   << " | | |\n";
                continue;
            }
            os << "| " << fmt6(row.epsilon) << " | " << fmt6(row.l2) << " | "
               << fmt6(row.superclose) << " | " << fmt6(row.energy) << " |\n";
        }
        return;
    }
    os << "| N | l2_err | " << rname << " | superclose_err | " << rname
       << " | energy_err | " << rname << " |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const StudyRow& row : table.rows) {
        if (row.failed) {
            os << "| " << row.N << " | failed: " << row.message << " | | | | | |\n";
            continue;
        }
        auto cell = [](double v) { return std::isnan(v) ? std::string("-") : fmt6(v); };
        os << "| " << row.N << " | " << fmt6(row.l2) << " | " << cell(row.l2_rate)
           << " | " << fmt6(row.superclose) << " | " << cell(row.superclose_rate)
           << " | " << fmt6(row.energy) << " | " << cell(row.energy_rate) << " |\n";
    }
}

}  // namespace spldg
