#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

#include "oracles.hpp"
#include "test_support.hpp"
#include "torp/linalg.hpp"
#include "torp/synth.hpp"

using namespace torp;
using torp::testing::jacobi_svd;
using torp::testing::random_matrix;

TEST_CASE("truncated_svd identity and diagonal") {
    const DenseMatrix eye = DenseMatrix::Identity(3, 3);
    const TruncatedSvd s1 = truncated_svd(eye, 1);
    CHECK(s1.sigma(0) == doctest::Approx(1.0).epsilon(1e-12));
    // u must be a standard basis vector up to sign convention.
    CHECK(s1.u.col(0).cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));

    DenseMatrix diag = DenseMatrix::Zero(3, 3);
    diag(0, 0) = 3.0;
    diag(1, 1) = 2.0;
    diag(2, 2) = 1.0;
    const TruncatedSvd s2 = truncated_svd(diag, 2);
    CHECK(s2.sigma(0) == doctest::Approx(3.0));
    CHECK(s2.sigma(1) == doctest::Approx(2.0));
    // span(u) = span(e1, e2): residual of e3 onto it is full.
    const DenseMatrix proj = s2.u * s2.u.transpose();
    CHECK(proj(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(proj(1, 1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(proj(2, 2) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("truncated_svd matches the Jacobi oracle on a random 8x10") {
    const DenseMatrix m = random_matrix(8, 10, 42);
    const TruncatedSvd svd = truncated_svd(m, 3);
    const double err = (m - svd.u * svd.sigma.asDiagonal() * svd.v.transpose()).norm();
    const double oracle = torp::testing::best_rank_error(m, 3);
    CHECK(std::abs(err - oracle) <= 1e-9);
}

TEST_CASE("truncated_svd factor contracts") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const DenseMatrix m = random_matrix(12, 30, seed);
        const TruncatedSvd svd = truncated_svd(m, 4);
        const DenseMatrix iu = svd.u.transpose() * svd.u;
        const DenseMatrix iv = svd.v.transpose() * svd.v;
        CHECK((iu - DenseMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((iv - DenseMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-10);
        for (Index i = 0; i + 1 < 4; ++i) CHECK(svd.sigma(i) >= svd.sigma(i + 1));
        CHECK(svd.sigma(3) >= 0.0);
    }
}

TEST_CASE("truncated_svd near-best rank-k error on sizes up to 30x30") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        SplitMix64 rng(900 + seed);
        const Index d = 5 + static_cast<Index>(rng.next_below(26));
        const Index n = 5 + static_cast<Index>(rng.next_below(26));
        const Index k = 1 + static_cast<Index>(rng.next_below(
                                static_cast<std::uint64_t>(std::min(d, n))));
        const DenseMatrix m = rng.gaussian_matrix(d, n);
        const TruncatedSvd svd = truncated_svd(m, k);
        const double err = (m - svd.u * svd.sigma.asDiagonal() * svd.v.transpose()).norm();
        CHECK(err <= torp::testing::best_rank_error(m, k) + 1e-8 * m.norm());
    }
}

TEST_CASE("truncated_svd input validation") {
    const DenseMatrix m = random_matrix(4, 5, 7);
    CHECK_THROWS(truncated_svd(m, 0));
    CHECK_THROWS(truncated_svd(m, 5));
    DenseMatrix bad = m;
    bad(1, 1) = std::nan("");
    CHECK_THROWS(truncated_svd(bad, 2));
}

TEST_CASE("residual_projection basics") {
    // u spanning all of R^2: residual vanishes.
    const DenseMatrix full = DenseMatrix::Identity(2, 2);
    const DenseMatrix m = random_matrix(2, 4, 11);
    CHECK(residual_projection(full, m).cwiseAbs().maxCoeff() <= 1e-12);

    DenseMatrix e1 = DenseMatrix::Zero(2, 1);
    e1(0, 0) = 1.0;
    DenseMatrix eye = DenseMatrix::Identity(2, 2);
    const DenseMatrix res = residual_projection(e1, eye);
    CHECK(res(0, 0) == doctest::Approx(0.0));
    CHECK(res(0, 1) == doctest::Approx(0.0));
    CHECK(res(1, 1) == doctest::Approx(1.0));

    CHECK_THROWS(residual_projection(e1, random_matrix(3, 2, 1)));
}

TEST_CASE("residual_projection Pythagoras and idempotence") {
    for (std::uint64_t seed : {5, 6, 7}) {
        const DenseMatrix m = random_matrix(10, 14, seed);
        const TruncatedSvd svd = truncated_svd(m + random_matrix(10, 14, seed + 50), 3);
        const DenseMatrix res = residual_projection(svd.u, m);
        const double parallel = (svd.u.transpose() * m).norm();
        CHECK(std::abs(res.squaredNorm() + parallel * parallel - m.squaredNorm()) <=
              1e-8 * m.squaredNorm());
        // Orthogonality of every residual column to span(u).
        CHECK((svd.u.transpose() * res).cwiseAbs().maxCoeff() <= 1e-10 * m.norm());
        // Applying the projection twice changes nothing.
        CHECK((residual_projection(svd.u, res) - res).cwiseAbs().maxCoeff() <= 1e-12 * m.norm());
    }
}

TEST_CASE("coherence_scores") {
    const DenseMatrix m = random_matrix(9, 12, 3);
    const TruncatedSvd svd = truncated_svd(m, 3);

    // Scores of the factorization itself reduce to the rows of v.
    const DenseMatrix self = coherence_scores(svd, svd.u * svd.sigma.asDiagonal() * svd.v.transpose());
    const Vector norms = column_norms(self);
    for (Index i = 0; i < 12; ++i)
        CHECK(norms(i) == doctest::Approx(svd.v.row(i).norm()).epsilon(1e-9));

    // Orthogonal input: zero scores.
    const DenseMatrix ortho = residual_projection(svd.u, random_matrix(9, 5, 77));
    CHECK(column_norms(coherence_scores(svd, ortho)).maxCoeff() <= 1e-9);

    // Direct dense evaluation.
    const DenseMatrix direct = svd.sigma.cwiseInverse().asDiagonal() * svd.u.transpose() * m;
    CHECK((coherence_scores(svd, m) - direct).cwiseAbs().maxCoeff() <= 1e-10);

    // All-floored input is an error.
    TruncatedSvd degenerate = svd;
    degenerate.sigma.setZero();
    CHECK_THROWS(coherence_scores(degenerate, m));
}

TEST_CASE("coherence_scores floors tiny singular values") {
    DenseMatrix diag = DenseMatrix::Zero(4, 4);
    diag(0, 0) = 1.0;
    diag(1, 1) = 1e-30;  // far below the relative floor
    TruncatedSvd svd = truncated_svd(diag, 2);
    const DenseMatrix e = coherence_scores(svd, DenseMatrix::Identity(4, 4));
    // The floored component contributes nothing instead of exploding.
    CHECK(e.row(1).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("zero_columns") {
    DenseMatrix m(2, 2);
    m << 1, 2, 3, 4;
    CHECK((zero_columns(m, {}) - m).cwiseAbs().maxCoeff() == 0.0);
    CHECK(zero_columns(m, {0, 1}).cwiseAbs().maxCoeff() == 0.0);
    const DenseMatrix z = zero_columns(m, {0});
    CHECK(z(0, 0) == 0.0);
    CHECK(z(1, 0) == 0.0);
    CHECK(z(0, 1) == 2.0);
    CHECK(z(1, 1) == 4.0);
    CHECK_THROWS(zero_columns(m, {2}));
}

TEST_CASE("column_norms") {
    CHECK(column_norms(DenseMatrix::Zero(3, 4)).maxCoeff() == 0.0);
    CHECK(column_norms(DenseMatrix::Identity(5, 5)).minCoeff() == doctest::Approx(1.0));
    DenseMatrix m(2, 1);
    m << 3, 4;
    CHECK(column_norms(m)(0) == doctest::Approx(5.0));
}

TEST_CASE("subspace_residual") {
    const DenseMatrix m = random_matrix(8, 10, 21);
    const TruncatedSvd svd = truncated_svd(m, 2);
    // Columns inside the span: zero residual.
    const DenseMatrix inside = svd.u * random_matrix(2, 6, 22);
    CHECK(subspace_residual(svd.u, inside) <= 1e-10 * inside.norm());
    // Orthogonal block: residual equals its norm.
    const DenseMatrix ortho = residual_projection(svd.u, random_matrix(8, 6, 23));
    CHECK(subspace_residual(svd.u, ortho) == doctest::Approx(ortho.norm()).epsilon(1e-10));
    // Composition with residual_projection.
    CHECK(std::abs(subspace_residual(svd.u, m) - residual_projection(svd.u, m).norm()) <= 1e-12);
    CHECK_THROWS(subspace_residual(svd.u, random_matrix(9, 2, 1)));
}

TEST_CASE("operator_norm") {
    DenseMatrix diag = DenseMatrix::Zero(3, 3);
    diag(0, 0) = 3.0;
    diag(1, 1) = 2.0;
    diag(2, 2) = 1.0;
    CHECK(operator_norm(diag) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(operator_norm(DenseMatrix::Zero(4, 6)) == 0.0);
    const DenseMatrix m = random_matrix(6, 7, 31);
    CHECK(operator_norm(m) == doctest::Approx(jacobi_svd(m).sigma(0)).epsilon(1e-7));
}

TEST_CASE("Weyl perturbation bound") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(7000 + seed);
        const DenseMatrix a = rng.gaussian_matrix(9, 13);
        const DenseMatrix e = rng.gaussian_matrix(9, 13) * 0.3;
        const Vector sa = jacobi_svd(a).sigma;
        const Vector sb = jacobi_svd(a + e).sigma;
        const double bound = operator_norm(e) + 1e-8;
        for (Index i = 0; i < sa.size(); ++i) CHECK(std::abs(sa(i) - sb(i)) <= bound);
    }
}

TEST_CASE("disjoint-support singular value monotonicity") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(8000 + seed);
        const Index d = 8;
        const Index n = 14;
        DenseMatrix a = rng.gaussian_matrix(d, n);
        DenseMatrix b = rng.gaussian_matrix(d, n);
        for (Index j = 0; j < n; ++j) {
            if (j % 2 == 0)
                a.col(j).setZero();
            else
                b.col(j).setZero();
        }
        const Vector sa = jacobi_svd(a).sigma;
        const Vector sb = jacobi_svd(b).sigma;
        const Vector sum = jacobi_svd(a + b).sigma;
        for (Index i = 0; i < std::min(d, n); ++i)
            CHECK(std::max(sa(i), sb(i)) <= sum(i) + 1e-8);
    }
}

TEST_CASE("incoherence preservation under column deletion") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        InstanceParams p;
        p.d = 20;
        p.n = 256;
        p.r = 2;
        p.inlier_model = InlierModel::unit_sphere;
        p.seed = 4000 + seed;
        const ProblemInstance inst = generate(p);
        const DenseMatrix& l = inst.l_star;
        const double mu = inst.measured_mu;

        const Index budget = static_cast<Index>(
            std::floor(static_cast<double>(p.n) / (32.0 * mu * mu * static_cast<double>(p.r))));
        REQUIRE(budget >= 1);
        SplitMix64 rng(p.seed + 99);
        const ColumnIndexSet s(rng.sample_without_replacement(p.n, budget));
        const DenseMatrix ls = zero_columns(l, s);

        const Vector sig_full = jacobi_svd(l).sigma;
        const Vector sig_cut = jacobi_svd(ls).sigma;
        for (Index i = 0; i < p.r; ++i) {
            CHECK(sig_cut(i) >= (31.0 / 32.0) * sig_full(i) - 1e-8);
            CHECK(sig_cut(i) <= sig_full(i) + 1e-8);
        }

        const TruncatedSvd cut = truncated_svd(ls, p.r);
        const double row_bound = (33.0 / 32.0) * mu *
                                     std::sqrt(static_cast<double>(p.r) / static_cast<double>(p.n)) +
                                 1e-8;
        for (Index i = 0; i < p.n; ++i) CHECK(cut.v.row(i).norm() <= row_bound);

        // Every original column stays expressible with a small coefficient.
        const DenseMatrix w = cut.sigma.cwiseInverse().asDiagonal() * cut.u.transpose() * l;
        for (Index i = 0; i < p.n; ++i) {
            CHECK(w.col(i).norm() <= row_bound);
            CHECK((cut.u * cut.sigma.asDiagonal() * w.col(i) - l.col(i)).norm() <=
                  1e-8 * l.norm());
        }
    }
}
