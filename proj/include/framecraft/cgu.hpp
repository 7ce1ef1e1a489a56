/**
 * @file cgu.hpp
 * @brief Compound geometrically uniform frames generated by a cyclic group of
 *        unitaries {U^0, ..., U^{n-1}}: orbits, repeated norm profiles, the
 *        irregularity of a repeated profile and the CGU potential minimizer.
 */
#pragma once

#include "framecraft/potentials.hpp"
#include "framecraft/synthesis.hpp"

#include <optional>

namespace framecraft {

class CyclicUnitaryGroup {
public:
    /// Validates U^n = I and that no smaller positive power is the identity.
    CyclicUnitaryGroup(CMat generator, std::size_t order) : generator_(std::move(generator)), order_(order) {
        require(order_ >= 1, "cyclic_group: order must be positive");
        require(generator_.rows() >= 1 && generator_.rows() == generator_.cols(), "cyclic_group: generator must be square");
        require(is_unitary(generator_), "cyclic_group: generator is not unitary");
        const auto d = generator_.rows();
        const CMat id = CMat::Identity(d, d);
        elements_.reserve(order_);
        CMat power = id;
        for (std::size_t k = 0; k < order_; ++k) {
            if (k > 0 && max_abs(power - id) <= 1e-6)
                fail(ErrorKind::non_primitive, "cyclic_group: U^" + std::to_string(k) + " = I before the stated order");
            elements_.push_back(power);
            power = power * generator_;
        }
        if (max_abs(power - id) > 1e-9) fail(ErrorKind::invalid_order, "cyclic_group: U^n differs from I");
    }

    /// Block cyclic shift on d = n N coordinates: e_{kN + j} -> e_{((k+1) mod n) N + j}.
    static CyclicUnitaryGroup block_shift(std::size_t n, std::size_t d) {
        require(n >= 1 && d >= 1 && d % n == 0, "block_shift: n must divide d");
        const std::size_t blocks = d / n;
        CMat u = CMat::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < blocks; ++j)
                u(static_cast<Eigen::Index>(((k + 1) % n) * blocks + j), static_cast<Eigen::Index>(k * blocks + j)) = 1.0;
        return CyclicUnitaryGroup(std::move(u), n);
    }

    const CMat& generator() const noexcept { return generator_; }
    std::size_t order() const noexcept { return order_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(generator_.rows()); }
    const std::vector<CMat>& elements() const noexcept { return elements_; }

private:
    CMat generator_;
    std::size_t order_;
    std::vector<CMat> elements_;
};

inline CyclicUnitaryGroup cyclic_group(const CMat& u, std::size_t n) { return CyclicUnitaryGroup(u, n); }

/// Orbit G·Phi, seed-major: vector (j n + s) is U^s phi_j.
inline Frame cgu_frame(const CyclicUnitaryGroup& group, const Frame& seeds) {
    require(seeds.dim() == group.dim(), "cgu_frame: seed dimension does not match the group");
    const auto n = static_cast<Eigen::Index>(group.order());
    const auto m = static_cast<Eigen::Index>(seeds.size());
    CMat t(seeds.synthesis().rows(), n * m);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index s = 0; s < n; ++s)
            t.col(j * n + s) = group.elements()[static_cast<std::size_t>(s)] * seeds.synthesis().col(j);
    return Frame(std::move(t));
}

/// Each a_i repeated n consecutive times: the norm profile of an orbit frame.
inline NormProfile repeated_profile(const NormProfile& a, std::size_t n) {
    require(n >= 1, "repeated_profile: n must be positive");
    RVec b(static_cast<Eigen::Index>(a.size() * n));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t s = 0; s < n; ++s) b(static_cast<Eigen::Index>(i * n + s)) = a[i];
    return NormProfile(std::move(b));
}

struct CguIrregularity {
    std::size_t r;   ///< N-irregularity of a, N = d / n
    std::size_t r0;  ///< d-irregularity of the repeated profile; always n r
};

/// r = max{j : (d/n - j) a_j > sum_{k>j} a_k}, cross-checked against the repeated profile.
inline CguIrregularity cgu_irregularity(const NormProfile& a, std::size_t d, std::size_t n) {
    require(n >= 1 && d >= 1 && d % n == 0, "cgu_irregularity: n must divide d");
    const std::size_t blocks = d / n;
    require(blocks <= a.size(), "cgu_irregularity: d/n exceeds the number of seeds");
    const std::size_t r = d_irregularity(a, blocks);
    const std::size_t r0 = d_irregularity(repeated_profile(a, n), d);
    if (r0 != n * r) throw std::logic_error("cgu_irregularity: repeated-profile irregularity is not n r");
    return {r, r0};
}

/**
 * Orthonormal {e_j}_{j<N} with {U^k e_j} an orthonormal basis of C^d.
 * Tries the canonical block-shift seeds first, then builds seeds from the
 * spectral projectors of U (one orthonormal basis per n-th root of unity,
 * each eigenspace of dimension N). Returns nullopt when neither verifies.
 */
inline std::optional<std::vector<CVec>> compatible_basis(const CyclicUnitaryGroup& group) {
    const std::size_t d = group.dim();
    const std::size_t n = group.order();
    if (d % n != 0) return std::nullopt;
    const std::size_t blocks = d / n;
    const auto dd = static_cast<Eigen::Index>(d);

    auto verify = [&](const std::vector<CVec>& seeds) {
        CMat b(dd, dd);
        for (std::size_t j = 0; j < blocks; ++j)
            for (std::size_t k = 0; k < n; ++k)
                b.col(static_cast<Eigen::Index>(j * n + k)) = group.elements()[k] * seeds[j];
        return max_abs(b.adjoint() * b - CMat::Identity(dd, dd)) <= 1e-9;
    };

    std::vector<CVec> canonical;
    for (std::size_t j = 0; j < blocks; ++j) canonical.push_back(CVec::Unit(dd, static_cast<Eigen::Index>(j)));
    if (verify(canonical)) return canonical;

    // P_w = (1/n) sum_k w^{-k} U^k projects onto the eigenspace of w.
    std::vector<CVec> seeds(blocks, CVec::Zero(dd));
    const double pi = std::acos(-1.0);
    for (std::size_t q = 0; q < n; ++q) {
        CMat proj = CMat::Zero(dd, dd);
        for (std::size_t k = 0; k < n; ++k)
            proj += std::polar(1.0, -2.0 * pi * static_cast<double>(q * k % n) / static_cast<double>(n)) * group.elements()[k];
        proj /= static_cast<double>(n);
        Eigen::JacobiSVD<CMat> svd(proj, Eigen::ComputeFullU);
        const RVec& sv = svd.singularValues();
        std::size_t rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > 0.5) ++rank;
        if (rank != blocks) return std::nullopt;
        for (std::size_t j = 0; j < blocks; ++j)
            seeds[j] += svd.matrixU().col(static_cast<Eigen::Index>(j)) / std::sqrt(static_cast<double>(n));
    }
    if (verify(seeds)) return seeds;
    return std::nullopt;
}

/// n { sum_{i<=r} f(a_i) + (N - r) f(h) } <= P_f(S^{G·F}) <= (d-1) f(0) + f(n sum a), h = mean of a_{r+1..m} over N - r.
inline PotentialBounds cgu_potential_bounds(const Potential& f, const NormProfile& a, std::size_t d, std::size_t n) {
    const CguIrregularity irr = cgu_irregularity(a, d, n);
    const std::size_t blocks = d / n;
    double tail = 0.0;
    for (std::size_t k = irr.r; k < a.size(); ++k) tail += a[k];
    const double h = tail / static_cast<double>(blocks - irr.r);
    double head = 0.0;
    for (std::size_t i = 0; i < irr.r; ++i) head += f(a[i]);
    const double nn = static_cast<double>(n);
    const double lower = nn * (head + static_cast<double>(blocks - irr.r) * f(h));
    const double upper = (static_cast<double>(d) - 1.0) * f.f_zero() + f(nn * a.total());
    return {lower, upper};
}

/**
 * Seeds {sqrt(a_i) e_i}_{i<=r} plus a tight frame for span{e_{r+1}, ..., e_N}
 * with constant h, expanded to the full orbit. Minimizes every convex
 * potential over G·B(a).
 */
inline Frame cgu_minimizer(const CyclicUnitaryGroup& group, const NormProfile& a) {
    const std::size_t d = group.dim();
    const std::size_t n = group.order();
    require(d % n == 0, "cgu_minimizer: n must divide d");
    const auto basis = compatible_basis(group);
    if (!basis) fail(ErrorKind::infeasible, "cgu_minimizer: no compatible orthonormal basis for this group");
    const std::size_t blocks = d / n;
    // The seed problem in coordinates of {e_j} is the plain minimizer problem in dimension N.
    const Frame local = minimizer_frame(a, blocks);
    CMat e(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(blocks));
    for (std::size_t j = 0; j < blocks; ++j) e.col(static_cast<Eigen::Index>(j)) = (*basis)[j];
    return cgu_frame(group, Frame(e * local.synthesis()));
}

}  // namespace framecraft
