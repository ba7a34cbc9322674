// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_LEAST_SQUARES_HPP
#define FDSIM_LEAST_SQUARES_HPP

#include <Eigen/Dense>

namespace fdsim {

struct ConditionReport {
    double condition_number = 1.0;  // of the column-scaled regressor, inf if singular
    Eigen::Index rank = 0;
    Eigen::Index columns = 0;
    bool rank_deficient = false;
};

struct LsSolution {
    Eigen::VectorXcd coeffs;
    double residual_power = 0.0;  // ||A c - b||^2 / rows
};

// Dense least squares min ||A c - b||, A factored once by Householder QR after
// scaling every column to unit norm. The SVD of the small triangular factor
// gives the condition number and, when the matrix is rank deficient, the
// minimum-norm solution in the scaled coordinates.
// Scalar may be double (real regressors, complex right-hand sides) or complex<double>.
template <class Scalar> class QrLeastSquares {
public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    explicit QrLeastSquares(Matrix a, double rank_tol = 1e-10);

    LsSolution solve(const Eigen::VectorXcd &b) const;

    const ConditionReport &condition() const { return cond_; }
    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }

private:
    Eigen::Index rows_, cols_;
    Eigen::VectorXd col_scale_;
    Eigen::HouseholderQR<Matrix> qr_;
    Eigen::MatrixXcd r_;        // triangular factor
    Eigen::MatrixXcd svd_u_, svd_v_;
    Eigen::VectorXd svd_s_;
    ConditionReport cond_;
};

extern template class QrLeastSquares<double>;
extern template class QrLeastSquares<std::complex<double>>;

} // namespace fdsim

#endif
