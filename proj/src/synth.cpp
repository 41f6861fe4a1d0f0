#include "torp/synth.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "torp/linalg.hpp"
#include "torp/rng.hpp"

namespace torp {

namespace {

// Thin orthonormal factor from a Gaussian draw, signs fixed by the QR
// diagonal for seed reproducibility.
DenseMatrix random_orthonormal(Index d, Index r, SplitMix64& rng) {
    const DenseMatrix g = rng.gaussian_matrix(d, r);
    Eigen::HouseholderQR<DenseMatrix> qr(g);
    DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(d, r);
    const DenseMatrix rfac = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    for (Index j = 0; j < r; ++j)
        if (rfac(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

}  // namespace

Index InstanceParams::outlier_count() const {
    return static_cast<Index>(std::floor(alpha * static_cast<double>(n) + 1e-9));
}

void InstanceParams::validate() const {
    if (d < 1 || n < 1) throw std::invalid_argument("InstanceParams: d, n must be >= 1");
    if (r < 1 || r > std::min(d, n))
        throw std::invalid_argument("InstanceParams: r must be in [1, min(d, n)]");
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("InstanceParams: alpha must be in [0, 1)");
    if (!(outlier_scale > 0.0))
        throw std::invalid_argument("InstanceParams: outlier_scale must be positive");
    if (!(noise_sigma >= 0.0))
        throw std::invalid_argument("InstanceParams: noise_sigma must be nonnegative");
    if (outlier_count() + r > n)
        throw std::invalid_argument(
            "InstanceParams: too few clean columns to preserve rank");
}

ProblemInstance generate(const InstanceParams& params) {
    params.validate();
    const Index d = params.d;
    const Index n = params.n;
    const Index r = params.r;
    const Index outliers = params.outlier_count();

    // Independent streams per ingredient so a change in one draw never
    // shifts the others.
    SplitMix64 root(params.seed);
    SplitMix64 basis_rng = root.split(1);
    SplitMix64 support_rng = root.split(2);
    SplitMix64 coeff_rng = root.split(3);
    SplitMix64 outlier_rng = root.split(4);
    SplitMix64 noise_rng = root.split(5);

    ProblemInstance inst;
    inst.params = params;
    inst.true_support = ColumnIndexSet(support_rng.sample_without_replacement(n, outliers));

    const DenseMatrix basis = random_orthonormal(d, r, basis_rng);
    DenseMatrix coeffs = coeff_rng.gaussian_matrix(r, n);
    if (params.inlier_model == InlierModel::unit_sphere) {
        for (Index j = 0; j < n; ++j) {
            double norm = coeffs.col(j).norm();
            while (norm == 0.0) {  // astronomically unlikely, but total
                coeffs.col(j) = coeff_rng.gaussian_vector(r);
                norm = coeffs.col(j).norm();
            }
            coeffs.col(j) /= norm;
        }
    }
    for (Index j : inst.true_support) coeffs.col(j).setZero();
    inst.l_star = basis * coeffs;

    const double top_singular = operator_norm(inst.l_star);
    inst.c_star = DenseMatrix::Zero(d, n);
    for (Index j : inst.true_support) {
        Vector dir = outlier_rng.gaussian_vector(d);
        double norm = dir.norm();
        while (norm == 0.0) {
            dir = outlier_rng.gaussian_vector(d);
            norm = dir.norm();
        }
        inst.c_star.col(j) = dir * (params.outlier_scale * top_singular / norm);
    }

    inst.n_star = DenseMatrix::Zero(d, n);
    if (params.noise_model == NoiseModel::gaussian_iid && params.noise_sigma > 0.0) {
        inst.n_star = noise_rng.gaussian_matrix(d, n) * params.noise_sigma;
        for (Index j : inst.true_support) inst.n_star.col(j).setZero();
    }

    inst.m_star = inst.l_star + inst.c_star + inst.n_star;
    inst.measured_mu = measure_incoherence(inst.l_star, r);
    return inst;
}

double measure_incoherence(const DenseMatrix& l, Index r) {
    const TruncatedSvd svd = truncated_svd(l, r);
    if (svd.sigma(r - 1) <= 1e-12 * svd.sigma(0) || svd.sigma(0) == 0.0)
        throw std::runtime_error("measure_incoherence: input is rank-degenerate");
    const Index n = l.cols();
    const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(r));
    double mu = 0.0;
    for (Index i = 0; i < n; ++i) {
        if (l.col(i).norm() == 0.0) continue;
        mu = std::max(mu, svd.v.row(i).norm() * scale);
    }
    return mu;
}

Index gaussian_tail_census(Index d, Index n, double threshold, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gaussian_tail_census: n must be >= 1");
    SplitMix64 rng(seed);
    Index count = 0;
    for (Index i = 0; i < n; ++i) {
        double sq = 0.0;
        for (Index j = 0; j < d; ++j) {
            const double g = rng.next_gaussian();
            sq += g * g;
        }
        if (std::sqrt(sq) >= threshold) ++count;
    }
    return count;
}

}  // namespace torp
