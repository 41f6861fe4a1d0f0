#ifndef TORP_SYNTH_HPP
#define TORP_SYNTH_HPP

//
// Ground-truth instance generation: incoherent low-rank inliers, column
// sparse outliers with disjoint support, optional Gaussian noise. Fully
// deterministic given the seed (see rng.hpp).
//

#include <cstdint>

#include "torp/types.hpp"

namespace torp {

enum class NoiseModel { none, gaussian_iid };

// Distribution of the inlier coefficient columns.
//   gaussian    - standard normal r-by-n coefficients
//   unit_sphere - coefficients drawn uniformly from the unit sphere in
//                 R^r, which keeps the measured incoherence near 1
enum class InlierModel { gaussian, unit_sphere };

struct InstanceParams {
    Index d = 10;
    Index n = 100;
    Index r = 1;
    double alpha = 0.0;          // outlier fraction in [0, 1)
    double outlier_scale = 1.0;  // outlier norm as multiple of sigma_1(L*)
    double noise_sigma = 0.0;
    NoiseModel noise_model = NoiseModel::none;
    InlierModel inlier_model = InlierModel::gaussian;
    std::uint64_t seed = 0;

    Index outlier_count() const;
    void validate() const;
};

struct ProblemInstance {
    DenseMatrix m_star;
    DenseMatrix l_star;
    DenseMatrix c_star;
    DenseMatrix n_star;
    ColumnIndexSet true_support;
    double measured_mu = 0.0;
    InstanceParams params;
};

// L* = U* W on the clean columns, outliers are random unit directions
// scaled by outlier_scale * sigma_1(L*), noise is iid N(0, sigma^2) on
// the clean columns. Outlier columns of L* and N* are zeroed, so the
// three supports are disjoint and m = l + c + n exactly.
ProblemInstance generate(const InstanceParams& params);

// Smallest mu satisfying the row-norm incoherence bound on the top-r
// right factor, measured over the nonzero columns of l.
double measure_incoherence(const DenseMatrix& l, Index r);

// Draws n iid standard Gaussian d-vectors and counts how many have norm
// >= threshold.
Index gaussian_tail_census(Index d, Index n, double threshold, std::uint64_t seed);

}  // namespace torp

#endif  // TORP_SYNTH_HPP
