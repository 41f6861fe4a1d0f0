#ifndef TORP_LINALG_HPP
#define TORP_LINALG_HPP

//
// Dense linear-algebra kernels shared by all solvers: truncated SVD,
// orthogonal-complement projection, coherence scores, column restriction,
// norms and subspace residuals.
//

#include "torp/types.hpp"

namespace torp {

// Top-k singular triple of a matrix. u is d-by-k and v is n-by-k with
// orthonormal columns; sigma is nonincreasing and nonnegative.
struct TruncatedSvd {
    DenseMatrix u;
    Vector sigma;
    DenseMatrix v;
    Index rank = 0;
};

// Relative floor below which a singular value is treated as zero when
// inverting Sigma (see coherence_scores).
inline constexpr double kSigmaFloor = 1e-12;

// Rank-k SVD with a fixed sign convention: the first entry of each left
// singular vector whose magnitude exceeds 1e-12 is nonnegative. Within a
// tied singular-value block any orthonormal basis may be returned, so
// tests must compare subspaces rather than individual vectors.
//
// Wide or tall inputs are reduced by a Householder QR before the SVD of
// the small square factor, which keeps the cost at O(min(d,n)^2 * max(d,n)).
TruncatedSvd truncated_svd(const DenseMatrix& m, Index k);

// (I - u u^T) m. Columns of the result are orthogonal to span(u).
DenseMatrix residual_projection(const DenseMatrix& u, const DenseMatrix& m);

// E = diag(sigma)^-1 u^T m. Components whose singular value is at most
// sigma_floor * sigma[0] are zeroed instead of inverted; if every
// component is floored the input is rank-degenerate and an exception is
// thrown. Column norms of E are the expressivity scores the solvers
// threshold.
DenseMatrix coherence_scores(const TruncatedSvd& svd, const DenseMatrix& m,
                             double sigma_floor = kSigmaFloor);

// Copy of m with the selected columns set to zero; shape is preserved.
DenseMatrix zero_columns(const DenseMatrix& m, const ColumnIndexSet& s);

// Entry i = l2 norm of column i.
Vector column_norms(const DenseMatrix& m);

// || (I - u u^T) l ||_F; zero iff the columns of l lie in span(u).
double subspace_residual(const DenseMatrix& u, const DenseMatrix& l);

// Largest singular value, relative accuracy 1e-8 or better.
double operator_norm(const DenseMatrix& m);

}  // namespace torp

#endif  // TORP_LINALG_HPP
