#include "torp/ellipsoid.hpp"

#include <cmath>
#include <stdexcept>

namespace torp {

void EllipsoidSpec::validate() const {
    if (u.cols() < 1 || u.rows() < u.cols())
        throw std::invalid_argument("EllipsoidSpec: basis must be d-by-r with r <= d");
    if (sigma.size() != u.cols())
        throw std::invalid_argument("EllipsoidSpec: sigma length must match basis width");
    if ((sigma.array() <= 0.0).any())
        throw std::invalid_argument("EllipsoidSpec: sigma must be strictly positive");
    if (!(bound >= 0.0))
        throw std::invalid_argument("EllipsoidSpec: bound must be nonnegative");
    const DenseMatrix gram = u.transpose() * u;
    const double defect = (gram - DenseMatrix::Identity(u.cols(), u.cols()))
                              .cwiseAbs()
                              .maxCoeff();
    if (defect > 1e-10)
        throw std::invalid_argument("EllipsoidSpec: basis is not orthonormal");
}

Vector fast_pr(const EllipsoidSpec& spec, const Vector& x, double eps) {
    spec.validate();
    if (!(eps > 0.0)) throw std::invalid_argument("fast_pr: eps must be positive");
    if (x.size() != spec.u.rows())
        throw std::invalid_argument("fast_pr: vector length mismatch");

    const Index r = spec.u.cols();
    const double b = spec.bound;
    if (b == 0.0) return Vector::Zero(x.size());

    const Vector proj = spec.u.transpose() * x;  // u^T x
    if (proj.norm() == 0.0) return Vector::Zero(x.size());

    // lambda = 0 branch: unconstrained coefficient already inside the ball.
    const Vector z_free = (proj.array() / spec.sigma.array()).matrix();
    if (z_free.norm() <= b) return spec.u * proj;

    const Vector y = spec.sigma.asDiagonal() * proj;  // Sigma u^T x
    const Eigen::ArrayXd sigma_sq = spec.sigma.array().square();
    const double sigma_min = spec.sigma.minCoeff();

    double lambda_lo = 0.0;
    double lambda_hi = y.norm() / b;

    const double steps_arg =
        lambda_hi * std::sqrt(static_cast<double>(r)) * x.norm() / (sigma_min * sigma_min * eps);
    const int steps = std::max(1, static_cast<int>(std::ceil(std::log2(std::max(2.0, steps_arg)))));

    Vector z(r);
    for (int t = 0; t <= steps; ++t) {
        const double lambda = 0.5 * (lambda_lo + lambda_hi);
        z = (y.array() / (sigma_sq + lambda)).matrix();
        if (z.norm() <= b)
            lambda_hi = lambda;
        else
            lambda_lo = lambda;
    }
    return spec.u * (spec.sigma.asDiagonal() * z);
}

}  // namespace torp
