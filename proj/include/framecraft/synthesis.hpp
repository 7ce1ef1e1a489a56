/**
 * @file synthesis.hpp
 * @brief Frames with prescribed frame-operator spectrum and prescribed
 *        squared norms, tight frames, and the global minimizers of every
 *        convex potential over B(a).
 *
 * All norm arguments are squared norms.
 */
#pragma once

#include "framecraft/frame.hpp"
#include "framecraft/majorization.hpp"

namespace framecraft {

/// True iff a frame with spectrum lambda (length d) and squared norms a exists.
inline bool feasible(const Spectrum& lambda, const NormProfile& a) {
    const std::size_t d = lambda.size();
    require(d >= 1, "feasible: empty spectrum");
    require(d <= a.size(), "feasible: d exceeds the number of norms");
    double pl = 0.0;
    double pa = 0.0;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        pl += lambda[k];
        pa += a[k];
        if (pa > pl + tol::partial_abs * std::max(1.0, pl)) return false;
    }
    return sums_equal(lambda.total(), a.total());
}

namespace detail {

/**
 * Real orthogonal Q (m x m) with diag(Q^T D Q) = a, D = diag(lambda, 0).
 *
 * Targets are fixed largest first. The remaining diagonal block stays
 * diagonal: at each step the current largest target t is straddled by two
 * adjacent remaining values x >= t >= y, a plane rotation between their slots
 * lands t on one slot and leaves x + y - t on the other. The remaining targets
 * stay majorized by the remaining values, so the chain never gets stuck and
 * uses at most m - 1 rotations. Returns Q with its columns permuted so
 * column k carries target a_k.
 */
inline RMat prescribed_diagonal_rotation(const RVec& diag_values, const RVec& targets) {
    const Eigen::Index m = diag_values.size();
    RMat q = RMat::Identity(m, m);
    std::vector<double> value(diag_values.data(), diag_values.data() + m);
    std::vector<Eigen::Index> remaining(static_cast<std::size_t>(m));
    std::iota(remaining.begin(), remaining.end(), Eigen::Index{0});
    std::vector<Eigen::Index> slot_for_target(static_cast<std::size_t>(m), -1);

    for (Eigen::Index k = 0; k < m; ++k) {
        const double t = targets(k);
        std::stable_sort(remaining.begin(), remaining.end(),
                         [&](Eigen::Index i, Eigen::Index j) { return value[i] > value[j]; });
        // last remaining position whose value is >= t
        std::size_t p = 0;
        bool found = false;
        for (std::size_t i = 0; i < remaining.size(); ++i)
            if (value[remaining[i]] >= t) {
                p = i;
                found = true;
            }
        const double scale = std::max(1.0, std::abs(t));
        Eigen::Index fixed = remaining[found ? p : 0];
        if (found && p + 1 < remaining.size() && value[remaining[p]] - t > 1e-15 * scale) {
            const Eigen::Index sp = remaining[p];
            const Eigen::Index sq = remaining[p + 1];
            const double x = value[sp];
            const double y = value[sq];
            double c2 = x > y ? (t - y) / (x - y) : 1.0;
            c2 = std::clamp(c2, 0.0, 1.0);
            const double c = std::sqrt(c2);
            const double s = std::sqrt(1.0 - c2);
            const RVec qp = q.col(sp);
            const RVec qq = q.col(sq);
            q.col(sp) = c * qp + s * qq;
            q.col(sq) = -s * qp + c * qq;
            value[sp] = t;
            value[sq] = x + y - t;
            fixed = sp;
        }
        slot_for_target[static_cast<std::size_t>(k)] = fixed;
        remaining.erase(std::find(remaining.begin(), remaining.end(), fixed));
    }

    RMat out(m, m);
    for (Eigen::Index k = 0; k < m; ++k) out.col(k) = q.col(slot_for_target[static_cast<std::size_t>(k)]);
    return out;
}

/// ±sqrt(a_i) with alternating signs: a tight frame for a one-dimensional space.
inline Frame line_frame(const RVec& a) {
    CMat t(1, a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) t(0, i) = (i % 2 == 0 ? 1.0 : -1.0) * std::sqrt(a(i));
    return Frame(std::move(t));
}

}  // namespace detail

/**
 * Frame with S^F = diag(lambda) and ||phi_i||^2 = a_i. The synthesis matrix is
 * T = Lambda^{1/2} V_1^T where V_1 holds the first d rows of the rotation chain.
 */
inline Frame schur_horn_frame(const Spectrum& lambda, const NormProfile& a) {
    if (!feasible(lambda, a)) fail(ErrorKind::infeasible, "schur_horn_frame: no frame has this spectrum and these norms");
    const auto d = static_cast<Eigen::Index>(lambda.size());
    const auto m = static_cast<Eigen::Index>(a.size());
    RVec diag_values = RVec::Zero(m);
    diag_values.head(d) = lambda.values();
    const RMat q = detail::prescribed_diagonal_rotation(diag_values, a.values());
    RMat t = lambda.values().cwiseSqrt().asDiagonal() * q.topRows(d);
    return Frame::from_real(t);
}

/// Frame in B(a) with S^F = (sum a / d) I; needs d_irregularity(a, d) = 0.
inline Frame tight_frame(const NormProfile& a, std::size_t d) {
    if (d_irregularity(a, d) > 0)
        fail(ErrorKind::infeasible_tight, "tight_frame: the norm profile is d-irregular, no tight frame exists");
    if (d == 1) return detail::line_frame(a.values());
    return schur_horn_frame(uniform_minimal_vector(a.total(), d), a);
}

/**
 * {sqrt(a_i) e_i}_{i<=r} followed by a tight frame for span{e_{r+1}, ..., e_d}
 * carrying the remaining norms. Its frame operator has the minimal spectrum
 * of P(a), so it minimizes every convex potential over B(a).
 */
inline Frame minimizer_frame(const NormProfile& a, std::size_t d) {
    const std::size_t r = d_irregularity(a, d);
    const auto m = static_cast<Eigen::Index>(a.size());
    const auto dd = static_cast<Eigen::Index>(d);
    const auto rr = static_cast<Eigen::Index>(r);
    CMat t = CMat::Zero(dd, m);
    for (Eigen::Index i = 0; i < rr; ++i) t(i, i) = std::sqrt(a[static_cast<std::size_t>(i)]);

    const RVec rest = a.values().tail(m - rr);
    const std::size_t k = d - r;
    Frame tail;
    if (k == 1) {
        tail = detail::line_frame(rest);
    } else {
        const NormProfile sub(rest);
        const Spectrum constant = uniform_minimal_vector(sub.total(), k);
        tail = schur_horn_frame(constant, sub);
    }
    t.block(rr, rr, dd - rr, m - rr) = tail.synthesis();
    return Frame(std::move(t));
}

/// phi_i -> U phi_i; Gram is invariant and S becomes U S U^*.
inline Frame rotate_frame(const Frame& f, const CMat& u) {
    require(u.rows() == static_cast<Eigen::Index>(f.dim()) && u.cols() == u.rows(), "rotate_frame: U has the wrong shape");
    require(is_unitary(u), "rotate_frame: U is not unitary");
    return Frame(u * f.synthesis());
}

}  // namespace framecraft
