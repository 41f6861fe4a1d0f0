//
// torp - outlier-robust PCA benchmark tool.
//
// Subcommands:
//   gen      generate a synthetic instance directory
//   run      run one solver on an instance, append metrics CSV
//   sweep    grid over alpha / sigma / solver, metrics CSV
//   project  ellipsoid projection of a single vector (debugging aid)
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.
//

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "torp/ellipsoid.hpp"
#include "torp/harness.hpp"
#include "torp/io.hpp"
#include "torp/linalg.hpp"
#include "torp/synth.hpp"

namespace {

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
};

// "start:stop:count" inclusive linspace; a bare number is a single point.
GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        g.start = g.stop = std::stod(text);
        g.count = 1;
        return g;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw CLI::ValidationError("grid", "expected start:stop:count, got " + text);
    g.start = std::stod(text.substr(0, c1));
    g.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    g.count = std::stoi(text.substr(c2 + 1));
    if (g.count < 1) throw CLI::ValidationError("grid", "count must be >= 1");
    return g;
}

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> pts;
    if (g.count == 1) {
        pts.push_back(g.start);
        return pts;
    }
    for (int i = 0; i < g.count; ++i)
        pts.push_back(g.start + (g.stop - g.start) * static_cast<double>(i) /
                                    static_cast<double>(g.count - 1));
    return pts;
}

struct InstanceFlags {
    torp::InstanceParams params;
    std::string noise_model = "none";
    std::string inlier_model = "gaussian";

    void attach(CLI::App* cmd, bool with_grid_dims = true) {
        cmd->add_option("--d", params.d, "ambient dimension");
        cmd->add_option("--n", params.n, "number of columns");
        cmd->add_option("--r", params.r, "inlier rank");
        if (with_grid_dims) {
            cmd->add_option("--alpha", params.alpha, "outlier column fraction");
            cmd->add_option("--sigma", params.noise_sigma, "noise standard deviation");
        }
        cmd->add_option("--outlier-scale", params.outlier_scale,
                        "outlier norm as multiple of sigma_1(L)");
        cmd->add_option("--noise-model", noise_model, "none | gaussian_iid");
        cmd->add_option("--inlier-model", inlier_model, "gaussian | unit_sphere");
        cmd->add_option("--seed", params.seed, "base seed");
    }

    torp::InstanceParams resolve() const {
        torp::InstanceParams p = params;
        if (noise_model == "gaussian_iid")
            p.noise_model = torp::NoiseModel::gaussian_iid;
        else if (noise_model == "none")
            p.noise_model = torp::NoiseModel::none;
        else
            throw CLI::ValidationError("--noise-model", "unknown model " + noise_model);
        if (inlier_model == "unit_sphere")
            p.inlier_model = torp::InlierModel::unit_sphere;
        else if (inlier_model == "gaussian")
            p.inlier_model = torp::InlierModel::gaussian;
        else
            throw CLI::ValidationError("--inlier-model", "unknown model " + inlier_model);
        return p;
    }
};

struct SolverFlags {
    std::string solver = "torp";
    double rho = 0.1;
    double epsilon = 1e-6;
    double eta = 0.0;  // 0 = derive from mu
    double mu = 0.0;   // 0 = use measured
    double c1 = 1.0 / 12288.0;
    double c2 = 1.0 / 1536.0;
    torp::Index iterations = 0;
    torp::Index max_iterations = 0;
    double projection_tolerance = 1e-10;

    void attach(CLI::App* cmd, bool with_solver_choice) {
        if (with_solver_choice)
            cmd->add_option("--solver", solver,
                            "vanilla_svd | torp | torp_n | torp_bin | torp_g");
        cmd->add_option("--rho", rho, "threshold fraction");
        cmd->add_option("--epsilon", epsilon, "convergence target");
        cmd->add_option("--eta", eta, "expressivity cutoff (0 = 2 mu sqrt(r/n))");
        cmd->add_option("--mu", mu, "incoherence bound (0 = measured)");
        cmd->add_option("--c1", c1, "torp_g constant c1");
        cmd->add_option("--c2", c2, "torp_g constant c2");
        cmd->add_option("--iterations", iterations, "iteration count (0 = derive)");
        cmd->add_option("--max-iterations", max_iterations,
                        "torp_g support-update cap (0 = derive)");
        cmd->add_option("--projection-tolerance", projection_tolerance,
                        "torp_g ellipsoid projection accuracy");
    }

    // Fills the solver-parameter union for one instance's geometry.
    void configure(torp::ExperimentConfig& cfg, const torp::InstanceParams& p,
                   double measured_mu) const {
        const auto kind = torp::parse_solver(solver);
        if (!kind) throw CLI::ValidationError("--solver", "unknown solver " + solver);
        cfg.solver = *kind;
        const double mu_eff = mu > 0.0 ? mu : std::max(1.0, measured_mu);

        cfg.torp.target_rank = p.r;
        cfg.torp.threshold_fraction = rho;
        cfg.torp.iterations = iterations;
        cfg.torp.epsilon = epsilon;

        cfg.torp_n.target_rank = p.r;
        cfg.torp_n.threshold_fraction = rho;
        cfg.torp_n.inner_iterations = iterations;
        cfg.torp_n.epsilon = epsilon;
        cfg.torp_n.expressivity =
            eta > 0.0 ? eta : torp::TorpNConfig::theorem_expressivity(mu_eff, p.r, p.n);

        cfg.torp_g.target_rank = p.r;
        cfg.torp_g.incoherence = mu_eff;
        cfg.torp_g.noise_sigma = p.noise_sigma;
        cfg.torp_g.c1 = c1;
        cfg.torp_g.c2 = c2;
        cfg.torp_g.max_iterations = max_iterations;
        cfg.torp_g.projection_tolerance = projection_tolerance;
    }
};

int run_command(const InstanceFlags& inst_flags, const SolverFlags& solver_flags,
                const std::string& instance_dir, const std::string& out_path, int trials) {
    torp::ExperimentConfig cfg;
    cfg.trials = trials;
    cfg.output_path = out_path;

    double measured_mu;
    if (!instance_dir.empty()) {
        cfg.instance_path = instance_dir;
        const torp::ProblemInstance inst = torp::load_instance(instance_dir);
        cfg.instance = inst.params;
        measured_mu = inst.measured_mu;
    } else {
        cfg.instance = inst_flags.resolve();
        measured_mu = torp::generate(cfg.instance).measured_mu;
    }
    solver_flags.configure(cfg, cfg.instance, measured_mu);
    const auto rows = torp::run_experiment(cfg);
    std::cerr << "wrote " << rows.size() << " row(s) to " << out_path << "\n";
    return 0;
}

int sweep_command(const InstanceFlags& inst_flags, const SolverFlags& solver_flags,
                  const std::string& alpha_grid, const std::string& sigma_grid,
                  const std::string& solvers_csv, const std::string& out_path, int trials) {
    std::vector<std::string> solvers;
    std::stringstream ss(solvers_csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) solvers.push_back(tok);
    if (solvers.empty()) throw CLI::ValidationError("--solver", "no solvers given");

    const auto alphas = grid_points(parse_grid(alpha_grid));
    const auto sigmas = grid_points(parse_grid(sigma_grid));

    std::vector<torp::MetricsRow> rows;
    for (double alpha : alphas) {
        for (double sigma : sigmas) {
            torp::InstanceParams p = inst_flags.resolve();
            p.alpha = alpha;
            p.noise_sigma = sigma;
            if (sigma > 0.0) p.noise_model = torp::NoiseModel::gaussian_iid;
            const double measured_mu = torp::generate(p).measured_mu;
            for (const std::string& solver : solvers) {
                torp::ExperimentConfig cfg;
                cfg.instance = p;
                cfg.trials = trials;
                SolverFlags sf = solver_flags;
                sf.solver = solver;
                sf.configure(cfg, p, measured_mu);
                const auto batch = torp::run_experiment(cfg);
                rows.insert(rows.end(), batch.begin(), batch.end());
            }
        }
    }
    torp::write_csv(out_path, rows);
    std::cerr << "wrote " << rows.size() << " row(s) to " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thresholding-based outlier robust PCA"};
    app.require_subcommand(1);
    app.set_config("--config");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic instance directory");
    InstanceFlags gen_inst;
    gen_inst.attach(gen);
    std::string gen_out;
    gen->add_option("--out", gen_out, "output directory")->required();

    // run
    auto* run = app.add_subcommand("run", "run one solver, emit metrics CSV");
    InstanceFlags run_inst;
    run_inst.attach(run);
    SolverFlags run_solver;
    run_solver.attach(run, true);
    std::string run_instance_dir, run_out;
    int run_trials = 1;
    run->add_option("--instance", run_instance_dir, "instance directory (from gen)");
    run->add_option("--out", run_out, "output CSV path")->required();
    run->add_option("--trials", run_trials, "trial count (seed advances per trial)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "grid over alpha/sigma/solver");
    InstanceFlags sweep_inst;
    sweep_inst.attach(sweep, /*with_grid_dims=*/false);
    SolverFlags sweep_solver;
    sweep_solver.attach(sweep, false);
    std::string sweep_alpha = "0.0", sweep_sigma = "0.0", sweep_solvers = "torp";
    std::string sweep_out;
    int sweep_trials = 1;
    sweep->add_option("--alpha", sweep_alpha, "alpha grid start:stop:count");
    sweep->add_option("--sigma", sweep_sigma, "sigma grid start:stop:count");
    sweep->add_option("--solver", sweep_solvers, "comma-separated solver list");
    sweep->add_option("--out", sweep_out, "output CSV path")->required();
    sweep->add_option("--trials", sweep_trials, "trials per grid point");

    // project
    auto* project = app.add_subcommand("project", "ellipsoid projection of a vector");
    std::string pr_basis, pr_sigma, pr_input, pr_out;
    double pr_bound = 1.0, pr_eps = 1e-8;
    project->add_option("--basis", pr_basis, "orthonormal basis matrix file")->required();
    project->add_option("--sigma", pr_sigma, "singular-value column file")->required();
    project->add_option("--bound", pr_bound, "coefficient bound b")->required();
    project->add_option("--input", pr_input, "vector file to project")->required();
    project->add_option("--eps", pr_eps, "projection accuracy");
    project->add_option("--out", pr_out, "output vector file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::endl;
        return 1;
    }

    try {
        if (gen->parsed()) {
            const torp::ProblemInstance inst = torp::generate(gen_inst.resolve());
            torp::save_instance(gen_out, inst);
            std::cerr << "instance written to " << gen_out
                      << " (measured mu = " << inst.measured_mu << ")\n";
            return 0;
        }
        if (run->parsed())
            return run_command(run_inst, run_solver, run_instance_dir, run_out, run_trials);
        if (sweep->parsed())
            return sweep_command(sweep_inst, sweep_solver, sweep_alpha, sweep_sigma,
                                 sweep_solvers, sweep_out, sweep_trials);
        if (project->parsed()) {
            const torp::DenseMatrix basis = torp::load_matrix(pr_basis);
            const torp::DenseMatrix sigma = torp::load_matrix(pr_sigma);
            const torp::DenseMatrix x = torp::load_matrix(pr_input);
            if (sigma.cols() != 1 || x.cols() != 1)
                throw std::runtime_error("--sigma and --input must be single-column files");
            const torp::EllipsoidSpec spec{basis, sigma.col(0), pr_bound};
            const torp::Vector w = torp::fast_pr(spec, x.col(0), pr_eps);
            if (pr_out.empty()) {
                for (torp::Index i = 0; i < w.size(); ++i) std::printf("%.17g\n", w(i));
            } else {
                torp::save_matrix(pr_out, w);
            }
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
    return 1;
}
