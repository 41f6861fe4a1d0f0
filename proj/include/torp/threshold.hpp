#ifndef TORP_THRESHOLD_HPP
#define TORP_THRESHOLD_HPP

//
// Column hard-thresholding operators. All three rank columns by l2 norm
// and break ties in favor of the smaller index, so results are fully
// deterministic.
//

#include "torp/linalg.hpp"
#include "torp/types.hpp"

namespace torp {

// Indices of the ceil(rho * n) largest-norm columns, 0 < rho <= 1.
ColumnIndexSet ht_fraction(const DenseMatrix& scores, double rho);

// All indices whose column norm is >= zeta (inclusive).
ColumnIndexSet ht_value(const DenseMatrix& scores, double zeta);

// Indices of the floor(alpha_prime * n) largest-norm columns,
// 0 <= alpha_prime <= 1. Unlike ht_fraction this rounds down: it caps a
// thresholding budget instead of guaranteeing a removal fraction.
ColumnIndexSet ht_longest_count(const DenseMatrix& scores, double alpha_prime);

}  // namespace torp

#endif  // TORP_THRESHOLD_HPP
