#ifndef TORP_HARNESS_HPP
#define TORP_HARNESS_HPP

//
// Experiment driver: generates or loads instances, dispatches solvers,
// computes recovery metrics against the ground truth and emits
// schema-stable CSV rows. Trials may run in parallel (capped by the
// TORP_THREADS environment variable); row order is deterministic either
// way.
//

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "torp/solvers.hpp"
#include "torp/synth.hpp"
#include "torp/types.hpp"

namespace torp {

enum class SolverKind { vanilla_svd, torp, torp_n, torp_bin, torp_g };

const char* to_string(SolverKind kind);
std::optional<SolverKind> parse_solver(const std::string& name);

struct ExperimentConfig {
    // Instance source: a parameter set (seed advances per trial) or a
    // directory written by save_instance (fixed across trials).
    InstanceParams instance;
    std::optional<std::filesystem::path> instance_path;

    SolverKind solver = SolverKind::torp;
    TorpConfig torp;
    TorpNConfig torp_n;
    TorpGConfig torp_g;

    int trials = 1;
    std::string output_path;  // empty = caller handles the rows
};

struct MetricsRow {
    std::string solver;
    Index d = 0, n = 0, r = 0;
    double alpha = 0.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    double mu = 0.0;
    double residual_fro = 0.0;
    double residual_op = 0.0;
    double subspace_dist = 0.0;
    double support_precision = 0.0;
    double support_recall = 0.0;
    Index iterations = 0;
    double wall_ms = 0.0;
    std::string termination;
};

inline constexpr const char* kCsvHeader =
    "solver,d,n,r,alpha,sigma,seed,mu,residual_fro,residual_op,subspace_dist,"
    "support_precision,support_recall,iterations,wall_ms,termination";

// One row per trial; deterministic apart from wall_ms.
std::vector<MetricsRow> run_experiment(const ExperimentConfig& cfg);

// Solve + metrics for an already-materialized instance.
MetricsRow evaluate_instance(const ProblemInstance& inst, const ExperimentConfig& cfg);

std::string format_csv_row(const MetricsRow& row);
void write_csv(const std::filesystem::path& path, const std::vector<MetricsRow>& rows);

// Parallelism cap from TORP_THREADS; 0 or unset means sequential.
int trial_parallelism();

}  // namespace torp

#endif  // TORP_HARNESS_HPP
