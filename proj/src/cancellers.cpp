// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include "fdsim/cancellers.hpp"

#include <cmath>
#include <limits>
#include <variant>

#include "fdsim/error.hpp"

namespace fdsim {

void CancellerSpec::validate() const {
    require(channel_len >= 1, "canceller: channel_len must be >= 1");
    switch (method) {
    case CancellerMethod::Linear:
    case CancellerMethod::WidelyLinear:
        require(!n_max && !m_max, "canceller: n_max/m_max are not valid for " + label());
        require(nonlinear_basis == NonlinearBasis::Power, "canceller: basis variant only applies to nonlinear");
        break;
    case CancellerMethod::Nonlinear:
        require(n_max.has_value(), "canceller: nonlinear needs n_max");
        require(!m_max, "canceller: m_max is not valid for nonlinear");
        require(*n_max >= 1 && *n_max % 2 == 1, "canceller: n_max must be odd and >= 1");
        break;
    case CancellerMethod::JointDacIq:
        require(m_max.has_value(), "canceller: joint needs m_max");
        require(!n_max, "canceller: n_max is not valid for joint");
        require(*m_max >= 1, "canceller: m_max must be >= 1");
        require(nonlinear_basis == NonlinearBasis::Power, "canceller: basis variant only applies to nonlinear");
        break;
    }
}

std::string CancellerSpec::label() const {
    switch (method) {
    case CancellerMethod::Linear:
        return "linear";
    case CancellerMethod::Nonlinear:
        return nonlinear_basis == NonlinearBasis::Envelope ? "nonlinear_env" : "nonlinear";
    case CancellerMethod::WidelyLinear:
        return "widely_linear";
    case CancellerMethod::JointDacIq:
        return "joint";
    }
    return "?";
}

CancellerSpec linear_spec(std::size_t L) { return {CancellerMethod::Linear, {}, {}, L, NonlinearBasis::Power}; }
CancellerSpec nonlinear_spec(int n_max, NonlinearBasis basis, std::size_t L) {
    return {CancellerMethod::Nonlinear, n_max, {}, L, basis};
}
CancellerSpec widely_linear_spec(std::size_t L) { return {CancellerMethod::WidelyLinear, {}, {}, L, NonlinearBasis::Power}; }
CancellerSpec joint_spec(int m_max, std::size_t L) { return {CancellerMethod::JointDacIq, {}, m_max, L, NonlinearBasis::Power}; }

BasisSet build_basis(const ComplexBasebandSignal &x, const CancellerSpec &spec) {
    spec.validate();
    const CVector &s = x.samples();
    BasisSet out;
    auto add = [&](std::string label, bool real, auto fn) {
        BasisSignal b{std::move(label), CVector(s.size()), real};
        for (std::size_t i = 0; i < s.size(); ++i)
            b.samples[i] = fn(s[i]);
        out.push_back(std::move(b));
    };
    switch (spec.method) {
    case CancellerMethod::Linear:
        add("x", false, [](cdouble v) { return v; });
        break;
    case CancellerMethod::WidelyLinear:
        add("x", false, [](cdouble v) { return v; });
        add("conj(x)", false, [](cdouble v) { return std::conj(v); });
        break;
    case CancellerMethod::Nonlinear:
        for (int n = 1; n <= *spec.n_max; n += 2) {
            if (spec.nonlinear_basis == NonlinearBasis::Power) {
                add(n == 1 ? "x" : "x^" + std::to_string(n), false, [n](cdouble v) {
                    cdouble p = v;
                    for (int k = 1; k < n; ++k)
                        p *= v;
                    return p;
                });
            } else {
                add(n == 1 ? "x" : "x|x|^" + std::to_string(n - 1), false,
                    [n](cdouble v) { return v * std::pow(std::abs(v), n - 1); });
            }
        }
        break;
    case CancellerMethod::JointDacIq:
        for (int m = 1; m <= *spec.m_max; ++m) {
            add("re(x)^" + std::to_string(m), true, [m](cdouble v) { return cdouble(std::pow(v.real(), m), 0.0); });
            add("im(x)^" + std::to_string(m), true, [m](cdouble v) { return cdouble(std::pow(v.imag(), m), 0.0); });
        }
        break;
    }
    return out;
}

namespace {

template <class Scalar, class Get>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> toeplitz(const BasisSet &bases, std::size_t L, std::size_t rows,
                                                               Get get) {
    const auto cols = static_cast<Eigen::Index>(bases.size() * L);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a(static_cast<Eigen::Index>(rows), cols);
    for (std::size_t b = 0; b < bases.size(); ++b) {
        require(bases[b].samples.size() >= rows, "basis signal shorter than the requested rows");
        for (std::size_t k = 0; k < L; ++k) {
            const auto col = static_cast<Eigen::Index>(b * L + k);
            for (std::size_t n = 0; n < rows; ++n)
                a(static_cast<Eigen::Index>(n), col) = n >= k ? get(bases[b].samples[n - k]) : Scalar(0);
        }
    }
    return a;
}

} // namespace

Eigen::MatrixXcd regressor_matrix(const BasisSet &bases, std::size_t L, std::size_t rows) {
    return toeplitz<cdouble>(bases, L, rows, [](const cdouble &v) { return v; });
}

struct BasisFitter::Impl {
    std::variant<QrLeastSquares<double>, QrLeastSquares<cdouble>> qr;
};

BasisFitter::BasisFitter(const BasisSet &bases, std::size_t L, std::size_t training_len)
    : L_(L), training_len_(training_len) {
    require(!bases.empty(), "ls: basis set is empty");
    require(L >= 1, "ls: channel length must be >= 1");
    const std::size_t unknowns = bases.size() * L;
    require(training_len >= 4 * unknowns, "ls: training length " + std::to_string(training_len) +
                                              " below 4 x (bases x L) = " + std::to_string(4 * unknowns));
    bool all_real = true;
    for (const auto &b : bases) {
        labels_.push_back(b.label);
        all_real = all_real && b.real_valued;
    }
    if (all_real)
        impl_.reset(new Impl{QrLeastSquares<double>(
            toeplitz<double>(bases, L, training_len, [](const cdouble &v) { return v.real(); }))});
    else
        impl_.reset(new Impl{QrLeastSquares<cdouble>(regressor_matrix(bases, L, training_len))});
}

BasisFitter::~BasisFitter() = default;
BasisFitter::BasisFitter(BasisFitter &&) noexcept = default;
BasisFitter &BasisFitter::operator=(BasisFitter &&) noexcept = default;

const ConditionReport &BasisFitter::condition() const {
    return std::visit([](const auto &q) -> const ConditionReport & { return q.condition(); }, impl_->qr);
}

LsFit BasisFitter::fit(const ComplexBasebandSignal &r) const {
    require(r.size() >= training_len_, "ls: received signal shorter than the training length");
    Eigen::VectorXcd b(static_cast<Eigen::Index>(training_len_));
    for (std::size_t n = 0; n < training_len_; ++n)
        b(static_cast<Eigen::Index>(n)) = r[n];
    const auto sol = std::visit([&](const auto &q) { return q.solve(b); }, impl_->qr);

    LsFit fit;
    fit.channel_len = L_;
    fit.training_len = training_len_;
    fit.condition_diag = condition();
    fit.residual_power_dbfs = db10(sol.residual_power);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        CVector taps(L_);
        for (std::size_t k = 0; k < L_; ++k)
            taps[k] = sol.coeffs(static_cast<Eigen::Index>(i * L_ + k));
        fit.channels.emplace_back(labels_[i], std::move(taps));
    }
    return fit;
}

LsFit ls_estimate(const ComplexBasebandSignal &r, const BasisSet &bases, std::size_t L, std::size_t training_len) {
    return BasisFitter(bases, L, training_len == 0 ? r.size() : training_len).fit(r);
}

CVector reconstruct(const BasisSet &bases, const LsFit &fit) {
    require(bases.size() == fit.channels.size(), "cancel: basis set does not match the fit (" +
                                                     std::to_string(bases.size()) + " bases, " +
                                                     std::to_string(fit.channels.size()) + " channels)");
    require(!bases.empty(), "cancel: empty basis set");
    const std::size_t n = bases[0].samples.size();
    CVector y(n, cdouble{});
    for (std::size_t b = 0; b < bases.size(); ++b) {
        require(bases[b].label == fit.channels[b].first,
                "cancel: basis '" + bases[b].label + "' does not match fitted channel '" + fit.channels[b].first + "'");
        require(bases[b].samples.size() == n, "cancel: basis signals differ in length");
        require(fit.channels[b].second.size() == fit.channel_len, "cancel: channel length mismatch");
        const CVector part = fir_convolve(bases[b].samples, fit.channels[b].second);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += part[i];
    }
    return y;
}

ComplexBasebandSignal cancel(const ComplexBasebandSignal &r, const BasisSet &bases, const LsFit &fit) {
    CVector y = reconstruct(bases, fit);
    require(y.size() == r.size(), "cancel: basis length differs from received length");
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = r[i] - y[i];
    return {std::move(y), r.sample_rate()};
}

std::uint64_t high_power_term_count(int m_max, int n_max) {
    require(m_max >= 1, "term count: m_max must be >= 1");
    require(n_max >= 1 && n_max % 2 == 1, "term count: n_max must be odd and >= 1");
    const std::uint64_t base = 2ULL * static_cast<std::uint64_t>(m_max);
    std::uint64_t out = 1;
    for (int i = 0; i < n_max; ++i) {
        require(out <= std::numeric_limits<std::uint64_t>::max() / base, "term count overflows 64 bits");
        out *= base;
    }
    return out;
}

} // namespace fdsim
