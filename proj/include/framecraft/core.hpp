/**
 * @file core.hpp
 * @brief Shared vocabulary types, tolerances and the error type used by
 *        every framecraft module.
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace framecraft {

using Complex = std::complex<double>;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

namespace tol {
/// Relative tolerance for equality of totals (traces, sums of norms).
inline constexpr double sum_rel = 1e-10;
/// Absolute slack for partial-sum dominance tests.
inline constexpr double partial_abs = 1e-12;
/// Max entrywise deviation from the conjugate transpose.
inline constexpr double hermitian = 1e-12;
/// Eigenvalues in [-psd_clamp, 0) are rounded to zero.
inline constexpr double psd_clamp = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double norm = 1e-9;
}  // namespace tol

enum class ErrorKind {
    invalid_input,
    no_descent,
    step_too_large,
    infeasible,
    infeasible_tight,
    budget_exceeded,
    degenerate_polar,
    no_convergence,
    invalid_order,
    non_primitive,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid-input";
        case ErrorKind::no_descent: return "no-descent";
        case ErrorKind::step_too_large: return "step-too-large";
        case ErrorKind::infeasible: return "infeasible";
        case ErrorKind::infeasible_tight: return "infeasible-tight";
        case ErrorKind::budget_exceeded: return "budget-exceeded";
        case ErrorKind::degenerate_polar: return "degenerate-polar";
        case ErrorKind::no_convergence: return "no-convergence";
        case ErrorKind::invalid_order: return "invalid-order";
        case ErrorKind::non_primitive: return "non-primitive";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool condition, const std::string& what) {
    if (!condition) fail(ErrorKind::invalid_input, what);
}

/// |x - y| <= rel * max(1, |x|, |y|)
inline bool sums_equal(double x, double y, double rel = tol::sum_rel) {
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x - y) <= rel * scale;
}

inline bool all_finite(const RVec& v) { return v.allFinite(); }

inline RVec make_rvec(std::initializer_list<double> values) {
    RVec v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    return v;
}

inline RVec make_rvec(const std::vector<double>& values) {
    return Eigen::Map<const RVec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

inline std::vector<double> to_std(const RVec& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

/// Non-increasing sequence of strictly positive squared norms.
class NormProfile {
public:
    NormProfile() = default;

    explicit NormProfile(RVec values) : values_(std::move(values)) {
        require(values_.size() >= 1, "norm profile must be non-empty");
        require(values_.allFinite(), "norm profile has non-finite entries");
        for (Eigen::Index i = 0; i < values_.size(); ++i) {
            require(values_(i) > 0.0, "norm profile entries must be strictly positive");
            if (i > 0) require(values_(i - 1) >= values_(i), "norm profile must be non-increasing");
        }
    }

    NormProfile(std::initializer_list<double> values) : NormProfile(make_rvec(values)) {}

    /// Sorts the input before validating; convenient for profiles read from frames.
    static NormProfile from_unsorted(RVec values) {
        std::sort(values.data(), values.data() + values.size(), std::greater<>());
        return NormProfile(std::move(values));
    }

    const RVec& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
    double operator[](std::size_t i) const { return values_(static_cast<Eigen::Index>(i)); }
    double total() const { return values_.sum(); }

private:
    RVec values_;
};

/// Non-increasing sequence of non-negative reals (eigenvalues of a frame operator).
class Spectrum {
public:
    Spectrum() = default;

    explicit Spectrum(RVec values) : values_(std::move(values)) {
        require(values_.allFinite(), "spectrum has non-finite entries");
        for (Eigen::Index i = 0; i < values_.size(); ++i) {
            require(values_(i) >= 0.0, "spectrum entries must be non-negative");
            if (i > 0) require(values_(i - 1) >= values_(i), "spectrum must be non-increasing");
        }
    }

    Spectrum(std::initializer_list<double> values) : Spectrum(make_rvec(values)) {}

    const RVec& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
    double operator[](std::size_t i) const { return values_(static_cast<Eigen::Index>(i)); }
    double total() const { return values_.sum(); }

private:
    RVec values_;
};

inline double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double hermitian_defect(const CMat& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return max_abs(m - m.adjoint());
}

inline bool is_hermitian(const CMat& m, double tolerance = tol::hermitian) {
    return hermitian_defect(m) <= tolerance * std::max(1.0, max_abs(m));
}

inline bool is_unitary(const CMat& u, double tolerance = tol::unitary) {
    if (u.rows() != u.cols()) return false;
    return max_abs(u.adjoint() * u - CMat::Identity(u.rows(), u.cols())) <= tolerance;
}

/// Largest singular value.
inline double operator_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

}  // namespace framecraft
