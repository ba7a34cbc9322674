// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_CANCELLERS_HPP
#define FDSIM_CANCELLERS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdsim/least_squares.hpp"
#include "fdsim/signal.hpp"

namespace fdsim {

enum class CancellerMethod { Linear, Nonlinear, WidelyLinear, JointDacIq };
enum class NonlinearBasis { Power, Envelope };  // x^n or x|x|^{n-1}

struct CancellerSpec {
    CancellerMethod method = CancellerMethod::Linear;
    std::optional<int> n_max;  // Nonlinear only, odd
    std::optional<int> m_max;  // JointDacIq only
    std::size_t channel_len = 32;
    NonlinearBasis nonlinear_basis = NonlinearBasis::Power;

    void validate() const;
    // Short name used in reports: linear, nonlinear, nonlinear_env, widely_linear, joint.
    std::string label() const;
};

CancellerSpec linear_spec(std::size_t L = 32);
CancellerSpec nonlinear_spec(int n_max, NonlinearBasis basis = NonlinearBasis::Power, std::size_t L = 32);
CancellerSpec widely_linear_spec(std::size_t L = 32);
CancellerSpec joint_spec(int m_max, std::size_t L = 32);

struct BasisSignal {
    std::string label;
    CVector samples;
    bool real_valued = false;
};
using BasisSet = std::vector<BasisSignal>;

BasisSet build_basis(const ComplexBasebandSignal &x, const CancellerSpec &spec);

// Columns b*L + k hold basis_b[n - k] (zero before the first sample), rows [0, rows).
Eigen::MatrixXcd regressor_matrix(const BasisSet &bases, std::size_t L, std::size_t rows);

struct LsFit {
    std::vector<std::pair<std::string, CVector>> channels;  // in basis order, each of length channel_len
    std::size_t channel_len = 0;
    std::size_t training_len = 0;
    ConditionReport condition_diag;
    double residual_power_dbfs = 0.0;  // training residual
};

// Factors the regressor of a basis set once; fit() then costs one Q^H b per target.
class BasisFitter {
public:
    BasisFitter(const BasisSet &bases, std::size_t L, std::size_t training_len);
    ~BasisFitter();
    BasisFitter(BasisFitter &&) noexcept;
    BasisFitter &operator=(BasisFitter &&) noexcept;

    LsFit fit(const ComplexBasebandSignal &r) const;
    const ConditionReport &condition() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::vector<std::string> labels_;
    std::size_t L_, training_len_;
};

// Trains on the first training_len samples (0 = all).
LsFit ls_estimate(const ComplexBasebandSignal &r, const BasisSet &bases, std::size_t L, std::size_t training_len = 0);

// Reconstructed SI from the fitted channels, full length.
CVector reconstruct(const BasisSet &bases, const LsFit &fit);
ComplexBasebandSignal cancel(const ComplexBasebandSignal &r, const BasisSet &bases, const LsFit &fit);

// (2 m_max)^{n_max}, number of terms in the full high-power joint model.
std::uint64_t high_power_term_count(int m_max, int n_max);

} // namespace fdsim

#endif
