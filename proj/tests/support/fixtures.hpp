// Random generators and named frames shared by the unit and acceptance suites.
#pragma once

#include "framecraft/framecraft.hpp"

#include <random>

namespace framecraft::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline CMat gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> g;
    CMat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

inline Frame random_frame(Rng& rng, std::size_t d, std::size_t m) {
    return Frame(gaussian_matrix(rng, static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(m)));
}

/// Random vectors rescaled to squared norms a (frame order = profile order).
inline Frame random_frame_with_norms(Rng& rng, std::size_t d, const RVec& a) {
    CMat t = gaussian_matrix(rng, static_cast<Eigen::Index>(d), a.size());
    for (Eigen::Index j = 0; j < t.cols(); ++j) t.col(j) *= std::sqrt(a(j)) / t.col(j).norm();
    return Frame(std::move(t));
}

inline NormProfile random_profile(Rng& rng, std::size_t m, double lo = 0.1, double hi = 5.0) {
    RVec a(static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = uniform(rng, lo, hi);
    return NormProfile::from_unsorted(a);
}

/// Profiles with a few dominant entries, so the d-irregularity is often positive.
inline NormProfile random_spiky_profile(Rng& rng, std::size_t m) {
    RVec a(static_cast<Eigen::Index>(m));
    const std::size_t spikes = uniform_int(rng, 0, std::min<std::size_t>(3, m));
    for (Eigen::Index i = 0; i < a.size(); ++i)
        a(i) = static_cast<std::size_t>(i) < spikes ? uniform(rng, 3.0, 20.0) : uniform(rng, 0.1, 1.5);
    return NormProfile::from_unsorted(a);
}

inline CMat random_unitary(Rng& rng, std::size_t d) {
    const CMat g = gaussian_matrix(rng, static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    Eigen::HouseholderQR<CMat> qr(g);
    return qr.householderQ() * CMat::Identity(g.rows(), g.cols());
}

inline CMat random_hermitian(Rng& rng, std::size_t d) {
    const CMat g = gaussian_matrix(rng, static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    return 0.5 * (g + g.adjoint());
}

/// Traceless Hermitian with unit operator norm.
inline CMat random_traceless_hermitian(Rng& rng, std::size_t d) {
    CMat h = random_hermitian(rng, d);
    h -= (h.trace() / static_cast<double>(d)) * CMat::Identity(h.rows(), h.cols());
    return h / operator_norm(h);
}

inline CMat random_anti_hermitian(Rng& rng, std::size_t m) { return Complex(0.0, 1.0) * random_hermitian(rng, m); }

inline Frame onb(std::size_t d) {
    return Frame(CMat::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
}

/// Three unit vectors in R^2 at 0, 120 and 240 degrees.
inline Frame mercedes_benz() {
    const double s = std::sqrt(3.0) / 2.0;
    RMat t(2, 3);
    t << 1.0, -0.5, -0.5, 0.0, s, -s;
    return Frame::from_real(t);
}

inline Frame real_frame(std::initializer_list<std::initializer_list<double>> vectors) {
    std::vector<CVec> cols;
    std::size_t d = 0;
    for (const auto& v : vectors) {
        d = v.size();
        CVec c(static_cast<Eigen::Index>(d));
        Eigen::Index i = 0;
        for (double x : v) c(i++) = x;
        cols.push_back(c);
    }
    return Frame(d, cols);
}

inline CMat diag(std::initializer_list<double> values) { return make_rvec(values).cast<Complex>().asDiagonal(); }

/// Spectrum of a random member of B(a): feasible for (., a) by construction.
inline Spectrum random_feasible_spectrum(Rng& rng, const NormProfile& a, std::size_t d) {
    return spectrum(frame_operator(random_frame_with_norms(rng, d, a.values())));
}

}  // namespace framecraft::testing
