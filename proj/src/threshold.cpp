#include "torp/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace torp {

namespace {

// Indices of the k largest-norm columns, smaller index first on ties.
ColumnIndexSet top_k_by_norm(const DenseMatrix& scores, Index k) {
    const Index n = scores.cols();
    const Vector norms = column_norms(scores);
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (norms(a) != norms(b)) return norms(a) > norms(b);
        return a < b;
    });
    order.resize(static_cast<std::size_t>(k));
    return ColumnIndexSet(std::move(order));
}

// ceil/floor of rho * n with a guard against representation wobble
// (0.1 * 10 is not exactly 1 in binary).
Index robust_ceil(double rho, Index n) {
    return static_cast<Index>(std::ceil(rho * static_cast<double>(n) - 1e-9));
}
Index robust_floor(double alpha, Index n) {
    return static_cast<Index>(std::floor(alpha * static_cast<double>(n) + 1e-9));
}

}  // namespace

ColumnIndexSet ht_fraction(const DenseMatrix& scores, double rho) {
    if (!(rho > 0.0 && rho <= 1.0))
        throw std::invalid_argument("ht_fraction: rho must be in (0, 1]");
    const Index n = scores.cols();
    const Index k = std::min(n, std::max<Index>(1, robust_ceil(rho, n)));
    return top_k_by_norm(scores, k);
}

ColumnIndexSet ht_value(const DenseMatrix& scores, double zeta) {
    const Vector norms = column_norms(scores);
    std::vector<Index> selected;
    for (Index i = 0; i < scores.cols(); ++i)
        if (norms(i) >= zeta) selected.push_back(i);
    return ColumnIndexSet(std::move(selected));
}

ColumnIndexSet ht_longest_count(const DenseMatrix& scores, double alpha_prime) {
    if (!(alpha_prime >= 0.0 && alpha_prime <= 1.0))
        throw std::invalid_argument("ht_longest_count: alpha_prime must be in [0, 1]");
    const Index n = scores.cols();
    const Index k = std::min(n, robust_floor(alpha_prime, n));
    if (k == 0) return {};
    return top_k_by_norm(scores, k);
}

}  // namespace torp
