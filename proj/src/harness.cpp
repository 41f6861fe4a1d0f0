#include "torp/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "torp/io.hpp"
#include "torp/linalg.hpp"

namespace torp {

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Precision/recall of the estimated support. An empty estimate has no
// false positives, so its precision is 1; recall of an empty truth is 1.
void support_scores(const ColumnIndexSet& est, const ColumnIndexSet& truth,
                    double& precision, double& recall) {
    const Index hits = est.intersected_with(truth).size();
    precision = est.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(est.size());
    recall = truth.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace

const char* to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::vanilla_svd: return "vanilla_svd";
        case SolverKind::torp: return "torp";
        case SolverKind::torp_n: return "torp_n";
        case SolverKind::torp_bin: return "torp_bin";
        case SolverKind::torp_g: return "torp_g";
    }
    return "unknown";
}

std::optional<SolverKind> parse_solver(const std::string& name) {
    if (name == "vanilla_svd") return SolverKind::vanilla_svd;
    if (name == "torp") return SolverKind::torp;
    if (name == "torp_n") return SolverKind::torp_n;
    if (name == "torp_bin") return SolverKind::torp_bin;
    if (name == "torp_g") return SolverKind::torp_g;
    return std::nullopt;
}

int trial_parallelism() {
    const char* env = std::getenv("TORP_THREADS");
    if (!env) return 0;
    const long v = std::strtol(env, nullptr, 10);
    return v > 0 ? static_cast<int>(v) : 0;
}

MetricsRow evaluate_instance(const ProblemInstance& inst, const ExperimentConfig& cfg) {
    const InstanceParams& p = inst.params;

    const auto start = std::chrono::steady_clock::now();
    RecoveryResult rec;
    switch (cfg.solver) {
        case SolverKind::vanilla_svd: {
            rec.subspace = truncated_svd(inst.m_star, p.r).u;
            rec.termination = Termination::completed;
            break;
        }
        case SolverKind::torp: rec = torp(inst.m_star, cfg.torp); break;
        case SolverKind::torp_n: rec = torp_n(inst.m_star, cfg.torp_n); break;
        case SolverKind::torp_bin: rec = torp_bin(inst.m_star, cfg.torp_n); break;
        case SolverKind::torp_g: rec = torp_g(inst.m_star, cfg.torp_g); break;
    }
    const auto stop = std::chrono::steady_clock::now();

    MetricsRow row;
    row.solver = to_string(cfg.solver);
    row.d = p.d;
    row.n = p.n;
    row.r = p.r;
    row.alpha = p.alpha;
    row.sigma = p.noise_sigma;
    row.seed = p.seed;
    row.mu = inst.measured_mu;
    row.residual_fro = subspace_residual(rec.subspace, inst.l_star);
    row.residual_op = operator_norm(residual_projection(rec.subspace, inst.l_star));
    row.subspace_dist = subspace_residual(rec.subspace, truncated_svd(inst.l_star, p.r).u);
    support_scores(rec.estimated_support, inst.true_support, row.support_precision,
                   row.support_recall);
    row.iterations = static_cast<Index>(rec.trace.size());
    row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    row.termination = to_string(rec.termination);
    if (rec.rank_degenerate) row.termination += "+degenerate";
    return row;
}

std::vector<MetricsRow> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");

    std::optional<ProblemInstance> fixed;
    if (cfg.instance_path) fixed = load_instance(*cfg.instance_path);

    std::vector<MetricsRow> rows(static_cast<std::size_t>(cfg.trials));
    const auto run_trial = [&](int t) {
        if (fixed) {
            rows[static_cast<std::size_t>(t)] = evaluate_instance(*fixed, cfg);
        } else {
            InstanceParams p = cfg.instance;
            p.seed = cfg.instance.seed + static_cast<std::uint64_t>(t);
            rows[static_cast<std::size_t>(t)] = evaluate_instance(generate(p), cfg);
        }
    };

    const int workers = std::min(trial_parallelism(), cfg.trials);
    if (workers > 1) {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1))
                    run_trial(t);
            });
        for (auto& th : pool) th.join();
    } else {
        for (int t = 0; t < cfg.trials; ++t) run_trial(t);
    }

    if (!cfg.output_path.empty()) write_csv(cfg.output_path, rows);
    return rows;
}

std::string format_csv_row(const MetricsRow& r) {
    std::string out;
    out += r.solver;
    out += ',' + std::to_string(r.d);
    out += ',' + std::to_string(r.n);
    out += ',' + std::to_string(r.r);
    out += ',' + fmt_double(r.alpha);
    out += ',' + fmt_double(r.sigma);
    out += ',' + std::to_string(r.seed);
    out += ',' + fmt_double(r.mu);
    out += ',' + fmt_double(r.residual_fro);
    out += ',' + fmt_double(r.residual_op);
    out += ',' + fmt_double(r.subspace_dist);
    out += ',' + fmt_double(r.support_precision);
    out += ',' + fmt_double(r.support_recall);
    out += ',' + std::to_string(r.iterations);
    out += ',' + fmt_double(r.wall_ms);
    out += ',' + r.termination;
    return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<MetricsRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << kCsvHeader << "\n";
    for (const MetricsRow& r : rows) out << format_csv_row(r) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace torp
