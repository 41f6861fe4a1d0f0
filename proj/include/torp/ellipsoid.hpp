#ifndef TORP_ELLIPSOID_HPP
#define TORP_ELLIPSOID_HPP

//
// Euclidean projection onto the ellipsoid E = { u * diag(sigma) * z :
// ||z|| <= b } via bisection on the KKT multiplier of the projection
// program. Used per column by the Gaussian-noise solver.
//

#include "torp/types.hpp"

namespace torp {

struct EllipsoidSpec {
    DenseMatrix u;  // d-by-r, orthonormal columns
    Vector sigma;   // length r, strictly positive
    double bound;   // b >= 0

    // Throws std::invalid_argument on a malformed spec.
    void validate() const;
};

// Returns w with ||w - P_E(x)|| <= eps, P_E the exact projection onto E.
//
// The stationarity condition gives z(lambda) = (Sigma^2 + lambda I)^-1 *
// Sigma u^T x with ||z(lambda)|| decreasing in lambda, so the multiplier
// is found by bisection on [0, ||Sigma u^T x|| / b]. Degenerate cases
// (b = 0, or x orthogonal to span(u)) return the zero vector; if the
// unconstrained coefficient is already feasible the projection is just
// u u^T x and no bisection runs.
Vector fast_pr(const EllipsoidSpec& spec, const Vector& x, double eps);

}  // namespace torp

#endif  // TORP_ELLIPSOID_HPP
