#include "torp/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace torp {

namespace {

void require_finite(const DenseMatrix& m, const char* who) {
    if (!m.allFinite())
        throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

// SVD of a square factor; Jacobi gives the best accuracy on small blocks,
// divide-and-conquer takes over when the block gets large.
void square_svd(const DenseMatrix& a, DenseMatrix& u, Vector& s, DenseMatrix& v) {
    if (a.rows() <= 128) {
        Eigen::JacobiSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        u = svd.matrixU();
        s = svd.singularValues();
        v = svd.matrixV();
    } else {
        Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        u = svd.matrixU();
        s = svd.singularValues();
        v = svd.matrixV();
    }
}

void apply_sign_convention(DenseMatrix& u, DenseMatrix& v) {
    for (Index j = 0; j < u.cols(); ++j) {
        for (Index i = 0; i < u.rows(); ++i) {
            if (std::abs(u(i, j)) > 1e-12) {
                if (u(i, j) < 0.0) {
                    u.col(j) = -u.col(j);
                    v.col(j) = -v.col(j);
                }
                break;
            }
        }
    }
}

}  // namespace

TruncatedSvd truncated_svd(const DenseMatrix& m, Index k) {
    const Index d = m.rows();
    const Index n = m.cols();
    if (k < 1 || k > std::min(d, n))
        throw std::invalid_argument("truncated_svd: k out of range");
    require_finite(m, "truncated_svd");

    DenseMatrix u_full, v_full;
    Vector s_full;

    const Index mindim = std::min(d, n);
    if (mindim == std::max(d, n) || std::max(d, n) <= 64) {
        square_svd(m, u_full, s_full, v_full);
    } else if (d < n) {
        // Wide: QR-reduce the transpose, then SVD the d-by-d factor.
        // m = R^T Q^T, so SVD(R^T) = Ur S Vr^T gives m = Ur S (Q Vr)^T.
        Eigen::HouseholderQR<DenseMatrix> qr(m.transpose());
        DenseMatrix r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
        DenseMatrix ur, vr;
        Vector s;
        square_svd(r.transpose(), ur, s, vr);
        DenseMatrix vr_ext = DenseMatrix::Zero(n, d);
        vr_ext.topRows(d) = vr;
        u_full = ur;
        s_full = s;
        v_full = qr.householderQ() * vr_ext;
    } else {
        // Tall: m = Q R, SVD(R) = Ur S Vr^T gives m = (Q Ur) S Vr^T.
        Eigen::HouseholderQR<DenseMatrix> qr(m);
        DenseMatrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
        DenseMatrix ur, vr;
        Vector s;
        square_svd(r, ur, s, vr);
        DenseMatrix ur_ext = DenseMatrix::Zero(d, n);
        ur_ext.topRows(n) = ur;
        u_full = qr.householderQ() * ur_ext;
        s_full = s;
        v_full = vr;
    }

    TruncatedSvd out;
    out.u     = u_full.leftCols(k);
    out.sigma = s_full.head(k);
    out.v     = v_full.leftCols(k);
    out.rank  = k;
    apply_sign_convention(out.u, out.v);
    return out;
}

DenseMatrix residual_projection(const DenseMatrix& u, const DenseMatrix& m) {
    if (u.rows() != m.rows())
        throw std::invalid_argument("residual_projection: dimension mismatch");
    return m - u * (u.transpose() * m);
}

DenseMatrix coherence_scores(const TruncatedSvd& svd, const DenseMatrix& m,
                             double sigma_floor) {
    if (svd.u.rows() != m.rows())
        throw std::invalid_argument("coherence_scores: dimension mismatch");
    const Index k = svd.rank;
    const double floor = sigma_floor * (k > 0 ? svd.sigma(0) : 0.0);

    Index live = 0;
    for (Index i = 0; i < k; ++i)
        if (svd.sigma(i) > floor) ++live;
    if (live == 0)
        throw std::runtime_error("coherence_scores: rank-degenerate input (all singular values floored)");

    DenseMatrix e = svd.u.transpose() * m;
    for (Index i = 0; i < k; ++i) {
        if (svd.sigma(i) > floor)
            e.row(i) /= svd.sigma(i);
        else
            e.row(i).setZero();
    }
    return e;
}

DenseMatrix zero_columns(const DenseMatrix& m, const ColumnIndexSet& s) {
    if (s.min_width() > m.cols())
        throw std::out_of_range("zero_columns: index out of range");
    DenseMatrix out = m;
    for (Index j : s) out.col(j).setZero();
    return out;
}

Vector column_norms(const DenseMatrix& m) {
    return m.colwise().norm().transpose();
}

double subspace_residual(const DenseMatrix& u, const DenseMatrix& l) {
    if (u.rows() != l.rows())
        throw std::invalid_argument("subspace_residual: dimension mismatch");
    return (l - u * (u.transpose() * l)).norm();
}

double operator_norm(const DenseMatrix& m) {
    require_finite(m, "operator_norm");
    const Index d = m.rows();
    const Index n = m.cols();
    const Index mindim = std::min(d, n);

    if (mindim <= 512) {
        // Values-only SVD via the same QR reduction as truncated_svd.
        DenseMatrix square;
        if (d == n || std::max(d, n) <= 64) {
            square = m;
        } else if (d < n) {
            Eigen::HouseholderQR<DenseMatrix> qr(m.transpose());
            square = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
        } else {
            Eigen::HouseholderQR<DenseMatrix> qr(m);
            square = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
        }
        if (square.rows() <= 128) {
            Eigen::JacobiSVD<DenseMatrix> svd(square);
            return svd.singularValues()(0);
        }
        Eigen::BDCSVD<DenseMatrix> svd(square);
        return svd.singularValues()(0);
    }

    // Large on both sides: power iteration on the Gram operator.
    Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
    double sigma = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Vector w = m.transpose() * (m * v);
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        v = w / norm;
        const double next = std::sqrt(norm);
        if (it > 0 && std::abs(next - sigma) <= 1e-10 * next) return next;
        sigma = next;
    }
    return sigma;
}

}  // namespace torp
