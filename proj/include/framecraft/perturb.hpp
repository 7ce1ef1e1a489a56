/**
 * @file perturb.hpp
 * @brief Moving a frame to a nearby prescribed frame operator.
 *
 * Polar transport swaps the positive factor in T = S^{1/2} W for the target's
 * square root; norms are not controlled. Norm-preserving transport also
 * solves U in U(m) near the identity with diag(U^* W^* S_target W U) equal to
 * the original squared norms, by Gauss-Newton on the map U -> diag(U^* G U)
 * with a Cayley retraction.
 */
#pragma once

#include "framecraft/frame.hpp"

#include <Eigen/SVD>

namespace framecraft {

struct SectionSolveReport {
    int iterations = 0;
    double residual = 0.0;          ///< ||diag(U^* G U) - target||_inf
    double unitary_distance = 0.0;  ///< ||U - I|| (operator norm)
    bool converged = false;
    bool reducible = false;         ///< G's support graph is disconnected
};

class SectionSolveError : public Error {
public:
    SectionSolveError(const std::string& what, SectionSolveReport report)
        : Error(ErrorKind::no_convergence, what), report_(report) {}

    const SectionSolveReport& report() const noexcept { return report_; }

private:
    SectionSolveReport report_;
};

struct SectionSolveOptions {
    double tol = 1e-10;
    int max_iter = 100;
    int max_halvings = 20;
    double pinv_rel = 1e-12;
};

/// Positive square root of a Hermitian PSD matrix.
inline CMat psd_sqrt(const CMat& s) {
    require(is_hermitian(s), "psd_sqrt: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es(s);
    RVec ev = es.eigenvalues();
    const double top = ev.size() ? std::max(1.0, ev.cwiseAbs().maxCoeff()) : 1.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        require(ev(i) >= -tol::psd_clamp * top, "psd_sqrt: matrix is not positive semidefinite");
        ev(i) = std::sqrt(std::max(ev(i), 0.0));
    }
    return detail::hermitian_part(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());
}

struct PolarFactors {
    CMat sqrt_s;  ///< (S^F)^{1/2}, d x d
    CMat w;       ///< co-isometry, d x m, W W^* = I
};

/// T = S^{1/2} W for a full-rank synthesis matrix.
inline PolarFactors polar_decomposition(const Frame& f) {
    const CMat& t = f.synthesis();
    Eigen::JacobiSVD<CMat> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVec& sv = svd.singularValues();
    const auto d = t.rows();
    if (sv.size() < d || sv(d - 1) * sv(d - 1) <= 1e-10 * sv(0) * sv(0))
        fail(ErrorKind::degenerate_polar, "frame operator is rank deficient; polar factor is not unique");
    PolarFactors p;
    p.sqrt_s = detail::hermitian_part(svd.matrixU() * sv.asDiagonal() * svd.matrixU().adjoint());
    p.w = svd.matrixU() * svd.matrixV().adjoint();
    return p;
}

namespace detail {

inline void check_target(const Frame& f, const CMat& s_target) {
    const auto d = static_cast<Eigen::Index>(f.dim());
    require(s_target.rows() == d && s_target.cols() == d, "target operator has the wrong shape");
    require(is_hermitian(s_target), "target operator is not Hermitian");
    (void)spectrum(s_target);  // throws on a negative eigenvalue
    require(sums_equal(s_target.trace().real(), f.total_squared_norm()),
            "target trace differs from the frame's total squared norm");
}

/// (I - X/2)^{-1} (I + X/2): unitary whenever X is anti-Hermitian.
inline CMat cayley(const CMat& x) {
    const CMat id = CMat::Identity(x.rows(), x.cols());
    return (id - 0.5 * x).partialPivLu().solve(id + 0.5 * x);
}

/// Real Jacobian of X -> diag([X, A]) over the off-diagonal anti-Hermitian basis
/// (E_kl - E_lk, i(E_kl + E_lk)) for k < l; the diagonal generators map to zero.
inline RMat section_jacobian(const CMat& a) {
    const Eigen::Index m = a.rows();
    RMat j = RMat::Zero(m, m * (m - 1));
    Eigen::Index col = 0;
    for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = k + 1; l < m; ++l) {
            const double re = 2.0 * a(k, l).real();
            const double im = 2.0 * a(k, l).imag();
            j(k, col) = re;
            j(l, col) = -re;
            j(k, col + 1) = im;
            j(l, col + 1) = -im;
            col += 2;
        }
    return j;
}

inline CMat generator_from_coordinates(const RVec& y, Eigen::Index m) {
    CMat x = CMat::Zero(m, m);
    Eigen::Index col = 0;
    for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = k + 1; l < m; ++l) {
            const Complex z(y(col), y(col + 1));  // E_kl - E_lk and i(E_kl + E_lk)
            x(k, l) = z;
            x(l, k) = -std::conj(z);
            col += 2;
        }
    return x;
}

inline RVec diag_real(const CMat& a) { return a.diagonal().real(); }

}  // namespace detail

/// diag([X, U^* G U]) for anti-Hermitian X. This is the derivative of
/// t -> diag(V(t)^* G V(t)) along V(t) = U cayley(-t X).
inline RVec section_differential(const CMat& g, const CMat& u, const CMat& x) {
    const Eigen::Index m = g.rows();
    require(g.cols() == m && u.rows() == m && u.cols() == m && x.rows() == m && x.cols() == m,
            "section_differential: shapes must all be m x m");
    require(is_hermitian(g), "section_differential: G is not Hermitian");
    require(max_abs(x + x.adjoint()) <= 1e-10, "section_differential: X is not anti-Hermitian");
    const CMat a = u.adjoint() * g * u;
    return (x * a - a * x).diagonal().real();
}

/// Numerical rank of X -> diag([X, G]) on anti-Hermitian X.
inline Eigen::Index section_differential_rank(const CMat& g, double rel = 1e-12) {
    const Eigen::Index m = g.rows();
    if (m <= 1) return 0;
    const RMat j = detail::section_jacobian(g);
    Eigen::JacobiSVD<RMat> svd(j);
    const RVec& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel * sv(0)) ++rank;
    return rank;
}

/// True iff the support graph of G is connected and the differential at I has rank m - 1.
inline bool section_rank_check(const CMat& g) {
    require(g.rows() == g.cols() && is_hermitian(g), "section_rank_check: G must be Hermitian");
    const Eigen::Index m = g.rows();
    const bool connected = support_components(g, default_partition_tol(g)).size() == 1;
    return connected && section_differential_rank(g) == m - 1;
}

/**
 * Finds unitary U near I with diag(U^* G U) = target. Throws
 * SectionSolveError (carrying the report) when the residual does not reach
 * tol within max_iter steps or no damped step decreases it.
 */
inline std::pair<CMat, SectionSolveReport> diagonal_section_solve(const CMat& g, const RVec& target,
                                                                  const SectionSolveOptions& opt = {}) {
    const Eigen::Index m = g.rows();
    require(g.cols() == m && is_hermitian(g), "diagonal_section_solve: G must be Hermitian");
    require(target.size() == m && target.allFinite(), "diagonal_section_solve: target has the wrong length");
    require(sums_equal(target.sum(), g.trace().real()), "diagonal_section_solve: target sum differs from tr(G)");

    SectionSolveReport report;
    report.reducible = !section_rank_check(g);
    CMat u = CMat::Identity(m, m);
    auto residual_of = [&](const CMat& v) -> RVec { return target - detail::diag_real(v.adjoint() * g * v); };
    RVec res = residual_of(u);
    report.residual = res.cwiseAbs().maxCoeff();

    while (report.residual > opt.tol) {
        if (report.iterations >= opt.max_iter) {
            report.unitary_distance = operator_norm(u - CMat::Identity(m, m));
            throw SectionSolveError("diagonal_section_solve: no convergence within max_iter", report);
        }
        const CMat a = u.adjoint() * g * u;
        const RMat jac = detail::section_jacobian(a);
        Eigen::CompleteOrthogonalDecomposition<RMat> cod;
        cod.setThreshold(opt.pinv_rel);
        cod.compute(jac);
        const bool degenerate = jac.size() == 0 || jac.cwiseAbs().maxCoeff() == 0.0;
        const RVec y = degenerate ? RVec::Zero(jac.cols()) : RVec(cod.solve(res));
        const CMat x = detail::generator_from_coordinates(y, m);

        // diag(cayley(-X)^* A cayley(-X)) = diag(A) + diag([X, A]) + O(|X|^2)
        double step = 1.0;
        bool improved = false;
        const double before = res.norm();
        for (int h = 0; h <= opt.max_halvings && !degenerate; ++h, step *= 0.5) {
            const CMat candidate = u * detail::cayley(-step * x);
            const RVec cres = residual_of(candidate);
            if (cres.norm() < before) {
                u = candidate;
                res = cres;
                improved = true;
                break;
            }
        }
        ++report.iterations;
        report.residual = res.cwiseAbs().maxCoeff();
        if (!improved) {
            report.unitary_distance = operator_norm(u - CMat::Identity(m, m));
            throw SectionSolveError("diagonal_section_solve: no damped step decreases the residual", report);
        }
    }
    report.converged = true;
    report.unitary_distance = operator_norm(u - CMat::Identity(m, m));
    return {u, report};
}

/// G with S^G = S_target and d(F, G) <= ||S^F - S_target||^{1/2}; norms may change.
inline Frame polar_transport(const Frame& f, const CMat& s_target) {
    detail::check_target(f, s_target);
    const CMat s = frame_operator(f);
    const PolarFactors polar = polar_decomposition(f);
    if (s_target == s) return f;
    return Frame(psd_sqrt(s_target) * polar.w);
}

struct TransportResult {
    Frame frame;
    SectionSolveReport report;
    CMat u;
};

/**
 * Psi with S^Psi = S_target and ||psi_j|| = ||phi_j||, built as
 * S_target^{1/2} W U where U solves diag(U^* W^* S_target W U) = diag(G^F).
 */
inline TransportResult norm_preserving_transport(const Frame& f, const CMat& s_target, double tol = 1e-10) {
    detail::check_target(f, s_target);
    const auto m = static_cast<Eigen::Index>(f.size());
    const PolarFactors polar = polar_decomposition(f);
    if (s_target == frame_operator(f)) {
        SectionSolveReport report;
        report.converged = true;
        report.reducible = !is_irreducible(f);
        return {f, report, CMat::Identity(m, m)};
    }
    const CMat g_target = detail::hermitian_part(polar.w.adjoint() * s_target * polar.w);
    SectionSolveOptions opt;
    opt.tol = tol;
    auto [u, report] = diagonal_section_solve(g_target, f.squared_norms(), opt);
    report.reducible = report.reducible || !is_irreducible(f);
    return {Frame(psd_sqrt(s_target) * polar.w * u), report, u};
}

}  // namespace framecraft
