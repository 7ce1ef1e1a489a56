/**
 * @file majorization.hpp
 * @brief Majorization preorder on real vectors, the feasibility sets
 *        K(c) = {b >= 0, sum b = c} and P(a) (partial sums dominating a norm
 *        profile), d-irregularity, the minimal elements of both sets and the
 *        strict-decrease pinch step.
 *
 * Vectors are always compared as multisets: every routine works on sorted
 * copies and never reorders its argument.
 */
#pragma once

#include "framecraft/core.hpp"

#include <numeric>
#include <variant>

namespace framecraft {

struct MajorizationTol {
    double sum_rel = tol::sum_rel;
    double partial_abs = tol::partial_abs;
};

/// Non-increasing rearrangement; ties keep their original relative order.
inline RVec sort_desc(const RVec& v) {
    require(v.allFinite(), "sort_desc: non-finite entry");
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) { return v(i) > v(j); });
    RVec out(v.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out(static_cast<Eigen::Index>(k)) = v(idx[k]);
    return out;
}

/// True iff b is majorized by c (b ≺ c).
inline bool majorizes(const RVec& c, const RVec& b, const MajorizationTol& t = {}) {
    require(c.size() == b.size(), "majorizes: length mismatch");
    const RVec cs = sort_desc(c);
    const RVec bs = sort_desc(b);
    double pc = 0.0;
    double pb = 0.0;
    for (Eigen::Index k = 0; k < cs.size(); ++k) {
        pc += cs(k);
        pb += bs(k);
        if (k + 1 < cs.size() && pb > pc + t.partial_abs) return false;
    }
    return sums_equal(pc, pb, t.sum_rel);
}

namespace detail {

/// tail(j) = sum_{i >= j} a_i (0-based), tail(m) = 0.
inline std::vector<double> suffix_sums(const RVec& a) {
    std::vector<double> tail(static_cast<std::size_t>(a.size()) + 1, 0.0);
    for (Eigen::Index i = a.size() - 1; i >= 0; --i)
        tail[static_cast<std::size_t>(i)] = tail[static_cast<std::size_t>(i) + 1] + a(i);
    return tail;
}

}  // namespace detail

/**
 * d-irregularity: the largest j in {1..d} with (d - j) a_j > sum_{i > j} a_i,
 * or 0 when no index qualifies. Indices here are 1-based like the defining set.
 */
inline std::size_t d_irregularity(const NormProfile& a, std::size_t d) {
    require(d >= 1, "d_irregularity: d must be positive");
    require(d <= a.size(), "d_irregularity: d exceeds the number of norms");
    const auto tail = detail::suffix_sums(a.values());
    std::size_t r = 0;
    for (std::size_t j = 1; j <= d; ++j) {
        const double lhs = static_cast<double>(d - j) * a[j - 1];
        if (lhs > tail[j]) r = j;
    }
    return r;
}

/// (c/d, ..., c/d): majorized by every member of K(c).
inline Spectrum uniform_minimal_vector(double c, std::size_t d) {
    require(c > 0.0 && std::isfinite(c), "uniform_minimal_vector: c must be positive");
    require(d >= 1, "uniform_minimal_vector: d must be positive");
    return Spectrum(RVec::Constant(static_cast<Eigen::Index>(d), c / static_cast<double>(d)));
}

/// (a_1, ..., a_r, h, ..., h) with r = d_irregularity(a, d), h the mean of the remaining tail.
inline Spectrum constrained_minimal_vector(const NormProfile& a, std::size_t d) {
    const std::size_t r = d_irregularity(a, d);
    const auto tail = detail::suffix_sums(a.values());
    const double h = tail[r] / static_cast<double>(d - r);
    RVec v(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = i < r ? a[i] : h;
    // h <= a_r holds exactly in real arithmetic; clamp rounding so the result sorts.
    for (Eigen::Index i = static_cast<Eigen::Index>(r); i < v.size() && r > 0; ++i)
        v(i) = std::min(v(i), a[r - 1]);
    return Spectrum(std::move(v));
}

/// Membership in P(a): b >= 0, partial sums of b↓ dominate those of a up to d, equal totals.
inline bool in_feasible_set(const RVec& b, const NormProfile& a, std::size_t d, const MajorizationTol& t = {}) {
    require(static_cast<std::size_t>(b.size()) == d, "in_feasible_set: b must have length d");
    require(d <= a.size(), "in_feasible_set: d exceeds the number of norms");
    if (!b.allFinite()) return false;
    if ((b.array() < -t.partial_abs).any()) return false;
    const RVec bs = sort_desc(b);
    double pb = 0.0;
    double pa = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        pb += bs(static_cast<Eigen::Index>(k));
        pa += a[k];
        if (pb + t.partial_abs < pa) return false;
    }
    return sums_equal(bs.sum(), a.total(), t.sum_rel);
}

struct SimplexConstraint {
    double c;
};

struct PolytopeConstraint {
    NormProfile a;
    std::size_t d;
};

using PinchConstraint = std::variant<SimplexConstraint, PolytopeConstraint>;

/**
 * Moves mass epsilon/sqrt(2) from b↓_j to b↓_{j+1} at the smallest index j
 * that keeps the order (gap >= 2t) and, for P(a), keeps the j-th partial sum
 * above that of a. The result satisfies b_eps ≺ b and ||b↓ - b_eps||_2 = epsilon.
 */
inline RVec pinch_step(const RVec& b, double epsilon, const PinchConstraint& constraint) {
    require(epsilon > 0.0 && std::isfinite(epsilon), "pinch_step: epsilon must be positive");
    const RVec bs = sort_desc(b);
    const auto n = static_cast<std::size_t>(bs.size());

    const NormProfile* profile = nullptr;
    RVec minimal;
    if (const auto* s = std::get_if<SimplexConstraint>(&constraint)) {
        require(n >= 1, "pinch_step: empty vector");
        require((bs.array() >= -tol::partial_abs).all() && sums_equal(bs.sum(), s->c),
                "pinch_step: b is not in K(c)");
        minimal = uniform_minimal_vector(s->c, n).values();
    } else {
        const auto& p = std::get<PolytopeConstraint>(constraint);
        require(in_feasible_set(b, p.a, p.d), "pinch_step: b is not in P(a)");
        profile = &p.a;
        minimal = constrained_minimal_vector(p.a, p.d).values();
    }

    const double scale = std::max(1.0, bs.cwiseAbs().maxCoeff());
    if ((bs - minimal).cwiseAbs().maxCoeff() <= 1e-12 * scale)
        fail(ErrorKind::no_descent, "pinch_step: b already equals the minimal vector");

    const double t = epsilon / std::sqrt(2.0);
    double prefix_b = 0.0;
    double prefix_a = 0.0;
    bool any_candidate = false;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        prefix_b += bs(static_cast<Eigen::Index>(j));
        if (profile != nullptr) prefix_a += (*profile)[j];
        const double gap = bs(static_cast<Eigen::Index>(j)) - bs(static_cast<Eigen::Index>(j + 1));
        const double slack = profile != nullptr ? prefix_b - prefix_a : gap;
        if (gap <= 0.0 || slack <= 0.0) continue;
        any_candidate = true;
        if (gap >= 2.0 * t && slack >= t) {
            RVec out = bs;
            out(static_cast<Eigen::Index>(j)) -= t;
            out(static_cast<Eigen::Index>(j + 1)) += t;
            return out;
        }
    }
    if (!any_candidate) fail(ErrorKind::no_descent, "pinch_step: no index admits a strict transfer");
    fail(ErrorKind::step_too_large, "pinch_step: epsilon too large for every admissible index");
}

}  // namespace framecraft
