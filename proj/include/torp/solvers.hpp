#ifndef TORP_SOLVERS_HPP
#define TORP_SOLVERS_HPP

//
// The four thresholding-based outlier-robust PCA solvers:
//
//   torp      - noiseless data, fixed rank, fraction thresholding
//   torp_n    - arbitrary noise, outer scan over rank k = 1..r with an
//               expressivity-count termination signal
//   torp_bin  - torp_n with the rank scan replaced by binary search
//   torp_g    - Gaussian noise, dual value thresholds plus per-column
//               ellipsoid projection
//
// All solvers are deterministic: identical inputs and configuration
// produce bit-identical results and traces.
//

#include <cstdint>
#include <vector>

#include "torp/types.hpp"

namespace torp {

// Noiseless solver parameters. iterations == 0 derives
// T = ceil(log2(10 n ||m||_2 / epsilon)).
struct TorpConfig {
    Index target_rank = 1;
    double threshold_fraction = 0.1;  // rho in (0, 1)
    Index iterations = 0;
    double epsilon = 1e-6;

    // The analysis-backed fraction 1 / (128 mu^2 r).
    static double theorem_fraction(double mu, Index r);
};

// Noisy solver parameters. inner_iterations == 0 derives
// T = ceil(log2(20 n ||m||_2 / epsilon)).
struct TorpNConfig {
    Index target_rank = 1;
    double expressivity = 0.1;        // eta > 0
    double threshold_fraction = 0.1;  // rho in (0, 1)
    Index inner_iterations = 0;
    double epsilon = 1e-6;

    static double theorem_fraction(double mu, Index r);
    // The analysis-backed expressivity cutoff 2 mu sqrt(r / n).
    static double theorem_expressivity(double mu, Index r, Index n);
};

// Gaussian-noise solver parameters. max_iterations == 0 derives
// ceil(n / (1024 mu^2 r)). The thresholds zeta_1 and zeta_2 are computed
// from mu, sigma, c1 and c2 inside the solver.
struct TorpGConfig {
    Index target_rank = 1;
    double incoherence = 1.0;  // mu >= 1
    double noise_sigma = 0.0;  // sigma >= 0
    double c1 = 1.0 / 12288.0;
    double c2 = 1.0 / 1536.0;
    Index max_iterations = 0;
    double projection_tolerance = 1e-10;
};

enum class Termination {
    completed,
    early_stop_n_thres,
    support_converged,
    iteration_cap,
    degenerate,
};

const char* to_string(Termination t);

// One row per solver iteration. reference_residual is
// ||(I - u_ref u_ref^T)(m - C^(t))||_F for the iterate entering the
// iteration, or NaN when no reference subspace was supplied; the final
// row records the state after the last thresholding update. n_thres is
// the expressivity census of torp_n / torp_bin and 0 elsewhere.
struct TraceRow {
    Index iteration = 0;
    Index rank = 0;
    Index support_size = 0;
    Index n_thres = 0;
    double reference_residual = 0.0;
};

// Per-iteration detail recorded by torp_g only: which columns each of the
// two value thresholds contributed beyond the running support.
struct GaussianStep {
    Index iteration = 0;
    ColumnIndexSet added_by_length;      // zeta_1 threshold
    ColumnIndexSet added_by_projection;  // zeta_2 threshold
    bool projection_branch_fired = false;
};

struct RecoveryResult {
    DenseMatrix subspace;  // d-by-k, orthonormal columns
    ColumnIndexSet estimated_support;
    std::vector<TraceRow> trace;
    Termination termination = Termination::completed;
    // Set when a rank-degenerate iterate was encountered (reported, never
    // fatal) or when the torp_n early-stop fired before any subspace was
    // recorded and the vanilla SVD fallback was returned.
    bool rank_degenerate = false;
    std::vector<GaussianStep> gaussian_steps;  // torp_g only
};

// reference_subspace, when non-null, must be a d-by-k orthonormal factor;
// it only feeds the per-iteration trace residuals and never influences
// the solve.
RecoveryResult torp(const DenseMatrix& m, const TorpConfig& cfg,
                    const DenseMatrix* reference_subspace = nullptr);

RecoveryResult torp_n(const DenseMatrix& m, const TorpNConfig& cfg,
                      const DenseMatrix* reference_subspace = nullptr);

RecoveryResult torp_bin(const DenseMatrix& m, const TorpNConfig& cfg,
                        const DenseMatrix* reference_subspace = nullptr);

RecoveryResult torp_g(const DenseMatrix& m, const TorpGConfig& cfg,
                      const DenseMatrix* reference_subspace = nullptr);

}  // namespace torp

#endif  // TORP_SOLVERS_HPP
