#include "torp/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "torp/ellipsoid.hpp"
#include "torp/linalg.hpp"
#include "torp/threshold.hpp"

namespace torp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double reference_residual(const DenseMatrix* u_ref, const DenseMatrix& iterate) {
    return u_ref ? subspace_residual(*u_ref, iterate) : kNaN;
}

Index derived_iterations(const DenseMatrix& m, double scale, double epsilon) {
    const double norm = operator_norm(m);
    if (norm == 0.0 || !(epsilon > 0.0)) return 1;
    const double arg = scale * static_cast<double>(m.cols()) * norm / epsilon;
    if (arg <= 2.0) return 1;
    return static_cast<Index>(std::ceil(std::log2(arg)));
}

// SVD of the current iterate; flags (without failing) iterates whose
// k-th singular value has collapsed.
TruncatedSvd iterate_svd(const DenseMatrix& iterate, Index k, bool& degenerate) {
    TruncatedSvd svd = truncated_svd(iterate, k);
    if (svd.sigma(k - 1) <= kSigmaFloor * svd.sigma(0)) degenerate = true;
    return svd;
}

// Coherence scores with the rank-degenerate case mapped to an all-zero
// score matrix (an exactly-zero iterate has nothing coherent to flag).
DenseMatrix safe_coherence(const TruncatedSvd& svd, const DenseMatrix& m) {
    if (svd.sigma(0) <= 0.0) return DenseMatrix::Zero(svd.rank, m.cols());
    return coherence_scores(svd, m);
}

void check_common(const DenseMatrix& m, Index r) {
    if (!m.allFinite()) throw std::invalid_argument("solver: non-finite entries in input");
    if (r < 1 || r > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("solver: target rank out of range");
}

// Shared inner loop of torp_n / torp_bin at a fixed rank k: T + 1
// thresholding iterations, the sticky expressivity-count signal tau, and
// the final support. Returns true when tau fired.
struct InnerLoopOutcome {
    ColumnIndexSet support;
    bool tau = false;
};

InnerLoopOutcome noisy_inner_loop(const DenseMatrix& m, Index k, double rho, double eta,
                                  Index iterations, const DenseMatrix* u_ref,
                                  std::vector<TraceRow>& trace, bool& degenerate) {
    const Index n = m.cols();
    const double e_fraction = std::min(1.0, 2.0 * rho);
    InnerLoopOutcome out;
    for (Index t = 0; t <= iterations; ++t) {
        const DenseMatrix iterate = zero_columns(m, out.support);
        const TruncatedSvd svd = iterate_svd(iterate, k, degenerate);
        const DenseMatrix expressivity = safe_coherence(svd, m);
        const DenseMatrix residual = residual_projection(svd.u, m);
        const ColumnIndexSet next =
            ht_fraction(expressivity, e_fraction).united_with(ht_fraction(residual, rho));

        Index n_thres = 0;
        const Vector e_norms = column_norms(expressivity);
        for (Index i = 0; i < n; ++i)
            if (e_norms(i) >= eta) ++n_thres;
        out.tau = out.tau || (static_cast<double>(n_thres) >= 2.0 * rho * static_cast<double>(n));

        trace.push_back({t, k, next.size(), n_thres, reference_residual(u_ref, iterate)});
        out.support = next;
    }
    return out;
}

}  // namespace

double TorpConfig::theorem_fraction(double mu, Index r) {
    return 1.0 / (128.0 * mu * mu * static_cast<double>(r));
}

double TorpNConfig::theorem_fraction(double mu, Index r) {
    return 1.0 / (128.0 * mu * mu * static_cast<double>(r));
}

double TorpNConfig::theorem_expressivity(double mu, Index r, Index n) {
    return 2.0 * mu * std::sqrt(static_cast<double>(r) / static_cast<double>(n));
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::early_stop_n_thres: return "early_stop_n_thres";
        case Termination::support_converged: return "support_converged";
        case Termination::iteration_cap: return "iteration_cap";
        case Termination::degenerate: return "degenerate";
    }
    return "unknown";
}

RecoveryResult torp(const DenseMatrix& m, const TorpConfig& cfg,
                    const DenseMatrix* u_ref) {
    check_common(m, cfg.target_rank);
    if (!(cfg.threshold_fraction > 0.0 && cfg.threshold_fraction < 1.0))
        throw std::invalid_argument("torp: threshold_fraction must be in (0, 1)");
    const Index r = cfg.target_rank;
    const double rho = cfg.threshold_fraction;
    const Index iterations =
        cfg.iterations > 0 ? cfg.iterations : derived_iterations(m, 10.0, cfg.epsilon);

    RecoveryResult result;
    ColumnIndexSet support;
    for (Index t = 0; t <= iterations; ++t) {
        const DenseMatrix iterate = zero_columns(m, support);
        const TruncatedSvd svd = iterate_svd(iterate, r, result.rank_degenerate);
        const DenseMatrix expressivity = safe_coherence(svd, m);
        const DenseMatrix residual = residual_projection(svd.u, m);
        // Recomputed from scratch each iteration; no union with the
        // previous support.
        const ColumnIndexSet next =
            ht_fraction(residual, rho).united_with(ht_fraction(expressivity, rho));
        result.trace.push_back({t, r, next.size(), 0, reference_residual(u_ref, iterate)});
        support = next;
    }

    const DenseMatrix final_iterate = zero_columns(m, support);
    result.subspace = truncated_svd(final_iterate, r).u;
    result.trace.push_back({iterations + 1, r, support.size(), 0,
                            reference_residual(u_ref, final_iterate)});
    result.estimated_support = support;
    result.termination = Termination::completed;
    return result;
}

RecoveryResult torp_n(const DenseMatrix& m, const TorpNConfig& cfg,
                      const DenseMatrix* u_ref) {
    check_common(m, cfg.target_rank);
    if (!(cfg.threshold_fraction > 0.0 && cfg.threshold_fraction < 1.0))
        throw std::invalid_argument("torp_n: threshold_fraction must be in (0, 1)");
    if (!(cfg.expressivity > 0.0))
        throw std::invalid_argument("torp_n: expressivity must be positive");
    const Index r = cfg.target_rank;
    const Index iterations = cfg.inner_iterations > 0
                                 ? cfg.inner_iterations
                                 : derived_iterations(m, 20.0, cfg.epsilon);

    RecoveryResult result;
    bool have_subspace = false;
    bool stopped_early = false;
    for (Index k = 1; k <= r; ++k) {
        const InnerLoopOutcome inner =
            noisy_inner_loop(m, k, cfg.threshold_fraction, cfg.expressivity, iterations,
                             u_ref, result.trace, result.rank_degenerate);
        if (inner.tau) {
            stopped_early = true;
            break;
        }
        result.subspace = truncated_svd(zero_columns(m, inner.support), k).u;
        result.estimated_support = inner.support;
        have_subspace = true;
    }

    if (!have_subspace) {
        // tau fired at k = 1 before any subspace was recorded; fall back
        // to the vanilla SVD and flag the result.
        result.subspace = truncated_svd(m, r).u;
        result.estimated_support = {};
        result.rank_degenerate = true;
        result.termination = Termination::early_stop_n_thres;
        return result;
    }
    result.termination =
        stopped_early ? Termination::early_stop_n_thres : Termination::completed;
    return result;
}

RecoveryResult torp_bin(const DenseMatrix& m, const TorpNConfig& cfg,
                        const DenseMatrix* u_ref) {
    check_common(m, cfg.target_rank);
    if (!(cfg.threshold_fraction > 0.0 && cfg.threshold_fraction < 1.0))
        throw std::invalid_argument("torp_bin: threshold_fraction must be in (0, 1)");
    if (!(cfg.expressivity > 0.0))
        throw std::invalid_argument("torp_bin: expressivity must be positive");
    const Index r = cfg.target_rank;
    const Index iterations = cfg.inner_iterations > 0
                                 ? cfg.inner_iterations
                                 : derived_iterations(m, 20.0, cfg.epsilon);

    RecoveryResult result;
    bool have_subspace = false;
    bool tau_seen = false;
    Index lo = 1;
    Index hi = r;
    while (lo <= hi) {
        const Index k = (lo + hi) / 2;
        const InnerLoopOutcome inner =
            noisy_inner_loop(m, k, cfg.threshold_fraction, cfg.expressivity, iterations,
                             u_ref, result.trace, result.rank_degenerate);
        if (inner.tau) {
            tau_seen = true;
            hi = k - 1;
        } else {
            lo = k + 1;
            result.subspace = truncated_svd(zero_columns(m, inner.support), k).u;
            result.estimated_support = inner.support;
            have_subspace = true;
        }
    }

    if (!have_subspace) {
        result.subspace = truncated_svd(m, r).u;
        result.estimated_support = {};
        result.rank_degenerate = true;
        result.termination = Termination::early_stop_n_thres;
        return result;
    }
    result.termination =
        tau_seen ? Termination::early_stop_n_thres : Termination::completed;
    return result;
}

RecoveryResult torp_g(const DenseMatrix& m, const TorpGConfig& cfg,
                      const DenseMatrix* u_ref) {
    check_common(m, cfg.target_rank);
    if (!(cfg.incoherence >= 1.0))
        throw std::invalid_argument("torp_g: incoherence must be >= 1");
    if (!(cfg.noise_sigma >= 0.0))
        throw std::invalid_argument("torp_g: noise_sigma must be nonnegative");
    if (!(cfg.c1 > 0.0 && cfg.c1 <= 1.0 && cfg.c2 > 0.0 && cfg.c2 <= 1.0))
        throw std::invalid_argument("torp_g: c1, c2 must be in (0, 1]");

    const Index d = m.rows();
    const Index n = m.cols();
    const Index r = cfg.target_rank;
    const double mu = cfg.incoherence;
    const double sigma = cfg.noise_sigma;
    const double mu2r = mu * mu * static_cast<double>(r);

    const double zeta1 =
        sigma * (1.25 * mu * std::sqrt(static_cast<double>(r)) +
                 std::sqrt(static_cast<double>(d)) +
                 2.0 * std::pow(static_cast<double>(d), 0.25) *
                     std::sqrt(std::log(mu2r / cfg.c2)));
    const double zeta2 =
        sigma * std::sqrt(2.0 * static_cast<double>(r)) *
        (1.25 * mu + 2.0 * std::sqrt(std::log(mu2r * static_cast<double>(r) *
                                              static_cast<double>(d) / cfg.c1)));
    const double projection_count_cutoff =
        24.0 * static_cast<double>(n) * cfg.c1 / (mu * mu * static_cast<double>(d) * static_cast<double>(r));
    const double ellipsoid_bound =
        2.0 * mu * std::sqrt(static_cast<double>(r) / static_cast<double>(n));
    const Index cap = cfg.max_iterations > 0
                          ? cfg.max_iterations
                          : static_cast<Index>(std::ceil(static_cast<double>(n) / (1024.0 * mu2r)));
    const Index svd_rank = std::min<Index>(r + 1, std::min(d, n));

    RecoveryResult result;
    ColumnIndexSet support;
    result.termination = Termination::iteration_cap;
    for (Index t = 0;; ++t) {
        const DenseMatrix iterate = zero_columns(m, support);
        const TruncatedSvd svd = iterate_svd(iterate, svd_rank, result.rank_degenerate);
        const DenseMatrix low_rank = svd.u * svd.sigma.asDiagonal() * svd.v.transpose();

        // Ellipsoid over the non-floored singular directions only; the
        // floored ones contribute nothing to { u Sigma y }.
        Index live = 0;
        while (live < svd_rank && svd.sigma(live) > kSigmaFloor * svd.sigma(0)) ++live;
        DenseMatrix deviation;
        if (live == 0) {
            deviation = low_rank;  // iterate is exactly zero
        } else {
            EllipsoidSpec ellipsoid{svd.u.leftCols(live), svd.sigma.head(live),
                                    ellipsoid_bound};
            DenseMatrix projected(d, n);
            for (Index i = 0; i < n; ++i)
                projected.col(i) =
                    fast_pr(ellipsoid, low_rank.col(i), cfg.projection_tolerance);
            deviation = low_rank - projected;
        }

        // With sigma = 0 both thresholds vanish and the >= comparison
        // would sweep up every column on floating-point dust; floor them
        // at a relative epsilon so the noiseless limit stays exact.
        const double tiny = 1e-10 * svd.sigma(0);
        const double zeta1_eff = std::max(zeta1, tiny);
        const double zeta2_eff = std::max(zeta2, tiny);

        const Vector dev_norms = column_norms(deviation);
        Index influence_count = 0;
        for (Index i = 0; i < n; ++i)
            if (dev_norms(i) > zeta2_eff) ++influence_count;

        GaussianStep step;
        step.iteration = t;
        const ColumnIndexSet by_length = ht_value(deviation, zeta1_eff);
        ColumnIndexSet next = support.united_with(by_length);
        step.added_by_length = by_length.minus(support);
        if (static_cast<double>(influence_count) >= projection_count_cutoff) {
            step.projection_branch_fired = true;
            const ColumnIndexSet by_projection = ht_value(deviation, zeta2_eff);
            step.added_by_projection = by_projection.minus(next);
            next = next.united_with(by_projection);
        }

        result.trace.push_back({t, svd_rank, next.size(), 0,
                                reference_residual(u_ref, iterate)});
        result.gaussian_steps.push_back(std::move(step));
        result.subspace = svd.u;

        if (next == support) {
            result.termination = Termination::support_converged;
            break;
        }
        support = next;
        // At most `cap` support-changing passes (plus one confirming pass).
        if (t + 1 > cap) break;
    }
    result.estimated_support = support;
    return result;
}

}  // namespace torp
