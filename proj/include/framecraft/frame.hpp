/**
 * @file frame.hpp
 * @brief Finite frames in C^d: synthesis, frame and Gram operators, spectra,
 *        frame bounds, the vector-vector distance and the orthogonal
 *        partition of a frame into irreducible pieces.
 *
 * Inner products are linear in the first slot, <x, y> = y^* x. With
 * G = T^* T this gives G_ij = <phi_j, phi_i>.
 */
#pragma once

#include "framecraft/core.hpp"

#include <Eigen/Eigenvalues>

#include <numeric>
#include <optional>

namespace framecraft {

/// Ordered list of m vectors in C^d, stored as the columns of the synthesis matrix.
class Frame {
public:
    Frame() = default;

    explicit Frame(CMat synthesis) : t_(std::move(synthesis)) {
        require(t_.rows() >= 1 && t_.cols() >= 1, "frame needs d >= 1 and m >= 1");
        require(t_.allFinite(), "frame has non-finite entries");
    }

    Frame(std::size_t d, const std::vector<CVec>& vectors) {
        require(d >= 1 && !vectors.empty(), "frame needs d >= 1 and m >= 1");
        t_.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(vectors.size()));
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            require(static_cast<std::size_t>(vectors[j].size()) == d, "frame vector has wrong dimension");
            t_.col(static_cast<Eigen::Index>(j)) = vectors[j];
        }
        require(t_.allFinite(), "frame has non-finite entries");
    }

    static Frame from_real(const RMat& columns) { return Frame(columns.cast<Complex>()); }

    std::size_t dim() const noexcept { return static_cast<std::size_t>(t_.rows()); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(t_.cols()); }

    auto vector(std::size_t j) const { return t_.col(static_cast<Eigen::Index>(j)); }
    const CMat& synthesis() const noexcept { return t_; }

    /// Squared norms in frame order.
    RVec squared_norms() const { return t_.colwise().squaredNorm().transpose(); }
    double total_squared_norm() const { return t_.squaredNorm(); }

    bool in_trace_set(double c) const { return sums_equal(total_squared_norm(), c); }

    /// Membership in B(a) for a listed in frame order.
    bool in_norm_set(const RVec& a, double tolerance = tol::norm) const {
        if (static_cast<std::size_t>(a.size()) != size()) return false;
        return (squared_norms() - a).cwiseAbs().maxCoeff() <= tolerance * std::max(1.0, a.cwiseAbs().maxCoeff());
    }

    /// Concatenation F ⊔ G.
    friend Frame juxtapose(const Frame& f, const Frame& g) {
        require(f.dim() == g.dim(), "juxtapose: dimension mismatch");
        CMat t(f.t_.rows(), f.t_.cols() + g.t_.cols());
        t << f.t_, g.t_;
        return Frame(std::move(t));
    }

    friend Frame operator*(double s, const Frame& f) { return Frame(s * f.t_); }

private:
    CMat t_;
};

inline const CMat& synthesis_matrix(const Frame& f) { return f.synthesis(); }

namespace detail {
inline CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }
}  // namespace detail

/// S = T T^*, symmetrized so the result is exactly Hermitian.
inline CMat frame_operator(const Frame& f) {
    const CMat& t = f.synthesis();
    return detail::hermitian_part(t * t.adjoint());
}

/// G = T^* T, G_ij = <phi_j, phi_i>.
inline CMat gram(const Frame& f) {
    const CMat& t = f.synthesis();
    return detail::hermitian_part(t.adjoint() * t);
}

/// Eigenvalues of a Hermitian matrix in non-increasing order, no sign checks.
inline RVec hermitian_eigenvalues_desc(const CMat& s) {
    require(s.rows() == s.cols(), "eigenvalues: matrix must be square");
    require(is_hermitian(s), "eigenvalues: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es(s, Eigen::EigenvaluesOnly);
    require(es.info() == Eigen::Success, "eigenvalues: decomposition failed");
    return es.eigenvalues().reverse();
}

/// Spectrum of a Hermitian PSD operator; values just below zero are clamped.
inline Spectrum spectrum(const CMat& s) {
    RVec ev = hermitian_eigenvalues_desc(s);
    if (ev.size() == 0) return Spectrum(ev);
    const double floor = -tol::psd_clamp * std::max(1.0, std::abs(ev(0)));
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        require(ev(i) >= floor, "spectrum: operator has a negative eigenvalue");
        if (ev(i) < 0.0) ev(i) = 0.0;
    }
    return Spectrum(std::move(ev));
}

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool is_frame = false;
    bool tight = false;
};

/// (lambda_d, lambda_1) of S^F; rank-deficient inputs are flagged rather than rejected.
inline FrameBounds frame_bounds(const Frame& f) {
    const Spectrum sp = spectrum(frame_operator(f));
    FrameBounds b;
    b.upper = sp[0];
    b.lower = sp[sp.size() - 1];
    b.is_frame = b.upper > 0.0 && b.lower > 1e-10 * b.upper;
    b.tight = b.is_frame && (b.upper - b.lower) <= 1e-10 * b.upper;
    return b;
}

/// d(F, G) = max_i ||phi_i - psi_i||.
inline double vv_distance(const Frame& f, const Frame& g) {
    require(f.dim() == g.dim() && f.size() == g.size(), "vv_distance: shape mismatch");
    return (f.synthesis() - g.synthesis()).colwise().norm().maxCoeff();
}

using IndexSets = std::vector<std::vector<std::size_t>>;

/**
 * Connected components of the graph on {0..n-1} with an edge (i, j) whenever
 * |M_ij| > threshold. Components are sorted by their smallest index.
 */
inline IndexSets support_components(const CMat& m, double threshold) {
    const auto n = static_cast<std::size_t>(m.rows());
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) > threshold) {
                const std::size_t ri = find(i);
                const std::size_t rj = find(j);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
    IndexSets out;
    std::vector<std::optional<std::size_t>> slot(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (!slot[root]) {
            slot[root] = out.size();
            out.emplace_back();
        }
        out[*slot[root]].push_back(i);
    }
    return out;
}

/// Default threshold for the Gram support graph: 1e-10 times the largest diagonal entry.
inline double default_partition_tol(const CMat& g) {
    return g.size() == 0 ? 0.0 : 1e-10 * g.diagonal().real().cwiseAbs().maxCoeff();
}

/// Splits F into maximal mutually orthogonal blocks (0-based frame indices).
inline IndexSets orthogonal_partition(const Frame& f, std::optional<double> tolerance = std::nullopt) {
    const CMat g = gram(f);
    const double t = tolerance.value_or(default_partition_tol(g));
    require(t >= 0.0, "orthogonal_partition: tolerance must be non-negative");
    return support_components(g, t);
}

inline bool is_irreducible(const Frame& f, std::optional<double> tolerance = std::nullopt) {
    return orthogonal_partition(f, tolerance).size() == 1;
}

}  // namespace framecraft
