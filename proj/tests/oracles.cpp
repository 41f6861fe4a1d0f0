#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace torp::testing {

FullSvd jacobi_svd(const DenseMatrix& m) {
    // Work on a tall copy so the sweep runs over at most min(d, n)^2 pairs.
    const bool transposed = m.rows() < m.cols();
    DenseMatrix a = transposed ? DenseMatrix(m.transpose()) : m;
    const Index n = a.cols();
    DenseMatrix v = DenseMatrix::Identity(n, n);

    const double eps = 1e-15;
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double app = a.col(p).squaredNorm();
                const double aqq = a.col(q).squaredNorm();
                const double apq = a.col(p).dot(a.col(q));
                if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0) continue;
                rotated = true;
                // Classic Jacobi rotation zeroing the (p, q) inner product.
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const Vector ap = a.col(p);
                a.col(p) = c * ap - s * a.col(q);
                a.col(q) = s * ap + c * a.col(q);
                const Vector vp = v.col(p);
                v.col(p) = c * vp - s * v.col(q);
                v.col(q) = s * vp + c * v.col(q);
            }
        }
        if (!rotated) break;
    }

    Vector norms(n);
    for (Index j = 0; j < n; ++j) norms(j) = a.col(j).norm();
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(),
              [&](Index x, Index y) { return norms(x) > norms(y); });

    FullSvd out;
    out.sigma.resize(n);
    out.u.resize(a.rows(), n);
    out.v.resize(n, n);
    for (Index j = 0; j < n; ++j) {
        const Index src = order[static_cast<std::size_t>(j)];
        out.sigma(j) = norms(src);
        out.v.col(j) = v.col(src);
        out.u.col(j) = norms(src) > 0.0 ? Vector(a.col(src) / norms(src))
                                        : Vector(Vector::Zero(a.rows()));
    }
    if (transposed) std::swap(out.u, out.v);
    return out;
}

double best_rank_error(const DenseMatrix& m, Index k) {
    const FullSvd svd = jacobi_svd(m);
    double sq = 0.0;
    for (Index i = k; i < svd.sigma.size(); ++i) sq += svd.sigma(i) * svd.sigma(i);
    return std::sqrt(sq);
}

Vector projected_gradient_ellipsoid(const DenseMatrix& u, const Vector& sigma,
                                    double bound, const Vector& x, double tol) {
    const Index r = sigma.size();
    if (bound <= 0.0) return Vector::Zero(x.size());
    // In coefficient space: f(z) = ||x||^2 - 2 (sigma u^T x)^T z + z^T Sigma^2 z.
    const Vector g0 = sigma.asDiagonal() * (u.transpose() * x);
    const Eigen::ArrayXd sig2 = sigma.array().square();
    const double lipschitz = 2.0 * sig2.maxCoeff();
    const double step = 1.0 / lipschitz;

    Vector z = Vector::Zero(r);
    for (int it = 0; it < 2000000; ++it) {
        const Vector grad = 2.0 * ((sig2 * z.array()).matrix() - g0);
        Vector next = z - step * grad;
        const double norm = next.norm();
        if (norm > bound) next *= bound / norm;
        const double move = (next - z).norm();
        z = next;
        if (move <= tol * std::max(1.0, bound)) break;
    }
    return u * (sigma.asDiagonal() * z);
}

}  // namespace torp::testing
