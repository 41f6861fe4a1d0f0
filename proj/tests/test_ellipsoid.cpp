#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "test_support.hpp"
#include "torp/ellipsoid.hpp"
#include "torp/linalg.hpp"

using namespace torp;

namespace {

EllipsoidSpec random_spec(SplitMix64& rng, Index d, Index r, double bound) {
    const TruncatedSvd svd = truncated_svd(rng.gaussian_matrix(d, d), r);
    Vector sigma(r);
    for (Index i = 0; i < r; ++i) sigma(i) = 0.3 + 2.7 * rng.next_double();
    return EllipsoidSpec{svd.u, sigma, bound};
}

}  // namespace

TEST_CASE("fast_pr fixed points and degenerate cases") {
    SplitMix64 rng(901);
    const EllipsoidSpec spec = random_spec(rng, 6, 3, 0.5);

    // A point already in the ellipsoid projects to itself.
    Vector z0 = rng.gaussian_vector(3);
    z0 *= 0.4 / z0.norm();
    const Vector inside = spec.u * (spec.sigma.asDiagonal() * z0);
    CHECK((fast_pr(spec, inside, 1e-10) - inside).norm() <= 1e-9);

    // Orthogonal to span(u): the projection is the origin.
    const Vector ortho = residual_projection(spec.u, rng.gaussian_matrix(6, 1)).col(0);
    CHECK(fast_pr(spec, ortho, 1e-10).norm() <= 1e-12);

    // b = 0 collapses the set to the origin.
    EllipsoidSpec flat = spec;
    flat.bound = 0.0;
    CHECK(fast_pr(flat, rng.gaussian_vector(6), 1e-10).norm() == 0.0);

    CHECK_THROWS(fast_pr(spec, rng.gaussian_vector(5), 1e-10));
    CHECK_THROWS(fast_pr(spec, rng.gaussian_vector(6), 0.0));
    EllipsoidSpec bad = spec;
    bad.sigma(0) = 0.0;
    CHECK_THROWS(fast_pr(bad, rng.gaussian_vector(6), 1e-10));
}

TEST_CASE("fast_pr agrees with the projected-gradient oracle") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        SplitMix64 rng(1000 + seed);
        const Index d = 4 + static_cast<Index>(rng.next_below(8));
        const Index r = 1 + static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(d)));
        const double b = 0.1 + rng.next_double();
        const EllipsoidSpec spec = random_spec(rng, d, r, b);
        const Vector x = rng.gaussian_vector(d) * 2.0;
        const Vector fast = fast_pr(spec, x, 1e-8);
        const Vector slow =
            torp::testing::projected_gradient_ellipsoid(spec.u, spec.sigma, b, x, 1e-13);
        CHECK((fast - slow).norm() <= 1e-8);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("fast_pr feasibility of the recovered coefficient") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(1100 + seed);
        const double eps = 1e-9;
        const EllipsoidSpec spec = random_spec(rng, 8, 3, 0.4);
        const Vector x = rng.gaussian_vector(8) * 3.0;
        const Vector w = fast_pr(spec, x, eps);
        const Vector z = (spec.sigma.cwiseInverse().asDiagonal() * (spec.u.transpose() * w));
        CHECK(z.norm() <= spec.bound + eps / spec.sigma.minCoeff());
    }
}

TEST_CASE("fast_pr optimality against sampled feasible points") {
    SplitMix64 rng(1200);
    const double eps = 1e-9;
    const EllipsoidSpec spec = random_spec(rng, 7, 3, 0.6);
    const Vector x = rng.gaussian_vector(7) * 2.5;
    const Vector w = fast_pr(spec, x, eps);
    const double dist = (x - w).norm();
    for (int i = 0; i < 10000; ++i) {
        Vector z = rng.gaussian_vector(3);
        z *= spec.bound * rng.next_double() / z.norm();
        const Vector feasible = spec.u * (spec.sigma.asDiagonal() * z);
        CHECK(dist <= (x - feasible).norm() + 2.0 * eps);
    }
}

TEST_CASE("multiplier response curve is strictly decreasing") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SplitMix64 rng(1300 + seed);
        const EllipsoidSpec spec = random_spec(rng, 6, 3, 0.5);
        const Vector x = rng.gaussian_vector(6) * 2.0;
        const Vector y = spec.sigma.asDiagonal() * (spec.u.transpose() * x);
        const Eigen::ArrayXd sig2 = spec.sigma.array().square();
        double prev = std::numeric_limits<double>::infinity();
        for (double lambda = 0.0; lambda <= 5.0; lambda += 0.25) {
            const double f = (y.array() / (sig2 + lambda)).matrix().norm();
            CHECK(f < prev);
            prev = f;
        }
    }
}

TEST_CASE("fast_pr is idempotent up to tolerance") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SplitMix64 rng(1400 + seed);
        const double eps = 1e-9;
        const EllipsoidSpec spec = random_spec(rng, 9, 4, 0.3);
        const Vector x = rng.gaussian_vector(9) * 4.0;
        const Vector w = fast_pr(spec, x, eps);
        const Vector w2 = fast_pr(spec, w, eps);
        CHECK((w2 - w).norm() <= 2.0 * eps);
    }
}
