// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include "fdsim/least_squares.hpp"

#include <cmath>
#include <limits>

#include "fdsim/error.hpp"

namespace fdsim {

template <class Scalar>
QrLeastSquares<Scalar>::QrLeastSquares(Matrix a, double rank_tol) : rows_(a.rows()), cols_(a.cols()) {
    require(cols_ >= 1, "least squares needs at least one column");
    require(rows_ >= cols_, "least squares needs at least as many rows as columns");

    col_scale_.resize(cols_);
    for (Eigen::Index j = 0; j < cols_; ++j) {
        const double n = a.col(j).norm();
        col_scale_[j] = n > 0.0 ? n : 1.0;
        a.col(j) /= col_scale_[j];
    }
    qr_.compute(a);
    a.resize(0, 0);

    const Matrix r = qr_.matrixQR().topRows(cols_).template triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    r_ = r.template cast<std::complex<double>>();
    svd_u_ = svd.matrixU().template cast<std::complex<double>>();
    svd_v_ = svd.matrixV().template cast<std::complex<double>>();
    svd_s_ = svd.singularValues();
    const auto &s = svd_s_;
    const double smax = s(0);
    const double smin = s(cols_ - 1);
    cond_.columns = cols_;
    cond_.rank = 0;
    for (Eigen::Index i = 0; i < cols_; ++i)
        if (s(i) > rank_tol * smax)
            ++cond_.rank;
    cond_.rank_deficient = cond_.rank < cols_;
    cond_.condition_number = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

template <class Scalar>
LsSolution QrLeastSquares<Scalar>::solve(const Eigen::VectorXcd &b) const {
    require(b.size() == rows_, "right-hand side length does not match the regressor rows");
    const Eigen::Index n = cols_;

    // c = Q^H b, keeping b complex even when Q is real.
    Eigen::VectorXcd c(rows_);
    if constexpr (std::is_same_v<Scalar, double>) {
        Eigen::MatrixXd parts(rows_, 2);
        parts.col(0) = b.real();
        parts.col(1) = b.imag();
        parts.applyOnTheLeft(qr_.householderQ().adjoint());
        c.real() = parts.col(0);
        c.imag() = parts.col(1);
    } else {
        c = b;
        c.applyOnTheLeft(qr_.householderQ().adjoint());
    }

    Eigen::VectorXcd z(n);
    const Eigen::VectorXcd top = c.head(n);
    if (!cond_.rank_deficient) {
        z = r_.template triangularView<Eigen::Upper>().solve(top);
    } else {
        const auto &s = svd_s_;
        const Eigen::VectorXcd ut = svd_u_.adjoint() * top;
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n);
        for (Eigen::Index i = 0; i < cond_.rank; ++i)
            w(i) = ut(i) / s(i);
        z = svd_v_ * w;
    }

    LsSolution out;
    const Eigen::VectorXcd fit_err = top - r_ * z;
    out.residual_power = (c.tail(rows_ - n).squaredNorm() + fit_err.squaredNorm()) / static_cast<double>(rows_);
    out.coeffs = z.cwiseQuotient(col_scale_.cast<std::complex<double>>());
    return out;
}

template class QrLeastSquares<double>;
template class QrLeastSquares<std::complex<double>>;

} // namespace fdsim
