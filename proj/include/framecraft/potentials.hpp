/**
 * @file potentials.hpp
 * @brief Convex frame potentials P_f(S) = tr f(S), their sharp bounds over
 *        the trace and norm constraint sets, the Welch ratio, the n-th frame
 *        potential as a cyclic product sum over the Gram matrix, and a
 *        seeded random local-minimality probe.
 */
#pragma once

#include "framecraft/frame.hpp"
#include "framecraft/majorization.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <variant>

namespace framecraft {

class Potential {
public:
    using Fn = std::function<double(double)>;

    Potential(std::string name, Fn f, bool strictly_convex, bool non_decreasing)
        : name_(std::move(name)), f_(std::move(f)), strictly_convex_(strictly_convex),
          non_decreasing_(non_decreasing) {}

    const std::string& name() const noexcept { return name_; }
    double operator()(double x) const { return f_(x); }
    double f_zero() const { return f_(0.0); }
    bool convex() const noexcept { return true; }
    bool strictly_convex() const noexcept { return strictly_convex_; }
    bool non_decreasing() const noexcept { return non_decreasing_; }

    /// f(x) = x^2, the Benedetto-Fickus potential.
    static Potential bf() {
        return Potential("bf", [](double x) { return x * x; }, true, true);
    }

    /// f(x) = x^n for integer n >= 2.
    static Potential power(int n) {
        require(n >= 2, "power potential needs n >= 2");
        return Potential("power:" + std::to_string(n),
                         [n](double x) {
                             double r = 1.0;
                             for (int k = 0; k < n; ++k) r *= x;
                             return r;
                         },
                         true, true);
    }

    /// f(x) = x ln x with f(0) = 0. Minimizing P_f maximizes von Neumann entropy.
    /// Not monotone on [0, 1/e]; the flag records that.
    static Potential xlogx() {
        return Potential("xlogx", [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; }, true, false);
    }

    /// Accepts "bf", "power:<n>" and "xlogx".
    static Potential parse(std::string_view spec) {
        if (spec == "bf") return bf();
        if (spec == "xlogx") return xlogx();
        constexpr std::string_view prefix = "power:";
        if (spec.substr(0, prefix.size()) == prefix) {
            const std::string digits(spec.substr(prefix.size()));
            std::size_t used = 0;
            int n = 0;
            try {
                n = std::stoi(digits, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            require(used == digits.size() && !digits.empty(), "unknown potential: " + std::string(spec));
            return power(n);
        }
        fail(ErrorKind::invalid_input, "unknown potential: " + std::string(spec));
    }

    static std::vector<Potential> catalog() { return {bf(), power(3), power(4), xlogx()}; }

private:
    std::string name_;
    Fn f_;
    bool strictly_convex_;
    bool non_decreasing_;
};

/// sum_i f(lambda_i).
inline double eval_on_spectrum(const Potential& f, const RVec& lambda) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) s += f(lambda(i));
    return s;
}

inline double eval_potential(const Potential& f, const CMat& s) {
    return eval_on_spectrum(f, spectrum(s).values());
}

inline double eval_potential(const Potential& f, const Frame& frame) {
    return eval_potential(f, frame_operator(frame));
}

/// tr f(G^F) - (m - d) f(0).
inline double eval_potential_gram(const Potential& f, const Frame& frame) {
    const double m = static_cast<double>(frame.size());
    const double d = static_cast<double>(frame.dim());
    return eval_on_spectrum(f, spectrum(gram(frame)).values()) - (m - d) * f.f_zero();
}

/// sum_{i,j} |<phi_i, phi_j>|^2.
inline double bf_potential_double_sum(const Frame& frame) {
    const CMat& t = frame.synthesis();
    const Eigen::Index m = t.cols();
    double s = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) s += std::norm(t.col(j).dot(t.col(i)));
    return s;
}

inline constexpr double kEnumerationBudget = 1e7;

namespace detail {

inline void check_budget(std::size_t m, int n) {
    require(n >= 2, "n-th potential needs n >= 2");
    const double work = std::pow(static_cast<double>(m), n);
    if (work > kEnumerationBudget)
        fail(ErrorKind::budget_exceeded, "m^n exceeds the enumeration budget; use eval_potential_gram");
}

/// ip(i, j) = <phi_i, phi_j>, built entry by entry.
inline CMat inner_products(const Frame& frame) {
    const CMat& t = frame.synthesis();
    const Eigen::Index m = t.cols();
    CMat ip(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) ip(i, j) = t.col(j).dot(t.col(i));  // phi_j^* phi_i
    return ip;
}

/// sum over i_2..i_n of prod_j <phi_{i_j}, phi_{i_{j+1}}> with i_1 = start and i_{n+1} = i_1.
inline Complex cyclic_row_sum(const CMat& ip, std::size_t start, int n) {
    const auto m = static_cast<std::size_t>(ip.rows());
    Complex total{0.0, 0.0};
    // Depth-first walk over the free indices with running partial products.
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    std::vector<Complex> partial(static_cast<std::size_t>(n), Complex{1.0, 0.0});
    idx[0] = start;
    int level = 1;
    if (n == 1) return ip(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(start));
    idx[1] = 0;
    while (level >= 1) {
        const auto lv = static_cast<std::size_t>(level);
        if (idx[lv] == m) {
            --level;
            if (level >= 1) ++idx[static_cast<std::size_t>(level)];
            continue;
        }
        const Complex link = ip(static_cast<Eigen::Index>(idx[lv - 1]), static_cast<Eigen::Index>(idx[lv]));
        partial[lv] = partial[lv - 1] * link;
        if (level == n - 1) {
            total += partial[lv] * ip(static_cast<Eigen::Index>(idx[lv]), static_cast<Eigen::Index>(start));
            ++idx[lv];
        } else {
            ++level;
            idx[static_cast<std::size_t>(level)] = 0;
        }
    }
    return total;
}

}  // namespace detail

/// Cyclic product sum over all index tuples; equals tr((G^F)^n).
inline double nth_potential_products(const Frame& frame, int n) {
    detail::check_budget(frame.size(), n);
    const CMat ip = detail::inner_products(frame);
    Complex total{0.0, 0.0};
    for (std::size_t k = 0; k < frame.size(); ++k) total += detail::cyclic_row_sum(ip, k, n);
    const double scale = std::max(1.0, std::abs(total));
    require(std::abs(total.imag()) <= 1e-8 * scale, "nth_potential_products: non-real cyclic sum");
    return total.real();
}

/// max_k (G^n)_kk >= (sum ||phi_i||^2)^n / (m d), with row sums built by enumeration.
inline bool row_sum_bound_check(const Frame& frame, int n) {
    detail::check_budget(frame.size(), n);
    const CMat ip = detail::inner_products(frame);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < frame.size(); ++k) best = std::max(best, detail::cyclic_row_sum(ip, k, n).real());
    const double rhs = std::pow(frame.total_squared_norm(), n) /
                       (static_cast<double>(frame.size()) * static_cast<double>(frame.dim()));
    return best >= rhs - 1e-9 * std::max(1.0, rhs);
}

/// FP(F) / (sum ||phi_i||^2)^2, which lies in [1/d, 1].
inline double welch_ratio(const Frame& frame) {
    const double c = frame.total_squared_norm();
    require(c > 0.0, "welch_ratio: all-zero frame");
    return bf_potential_double_sum(frame) / (c * c);
}

struct PotentialBounds {
    double lower;
    double upper;
};

/// d f(c/d) <= P_f(S) <= (d - 1) f(0) + f(c) over frames with total squared norm c.
inline PotentialBounds potential_bounds_simplex(const Potential& f, double c, std::size_t d) {
    require(c > 0.0, "potential_bounds_simplex: c must be positive");
    require(d >= 1, "potential_bounds_simplex: d must be positive");
    const double dd = static_cast<double>(d);
    return {dd * f(c / dd), (dd - 1.0) * f.f_zero() + f(c)};
}

/// Bounds over B(a): the lower one is attained exactly by the minimizer structure.
inline PotentialBounds potential_bounds_profile(const Potential& f, const NormProfile& a, std::size_t d) {
    const Spectrum v = constrained_minimal_vector(a, d);
    return {eval_on_spectrum(f, v.values()), (static_cast<double>(d) - 1.0) * f.f_zero() + f(a.total())};
}

/// P_f(S1) <= P_f(S2) given spectrum(S1) ≺ spectrum(S2).
inline bool majorization_monotonicity_check(const Potential& f, const CMat& s1, const CMat& s2) {
    require(s1.rows() == s2.rows(), "majorization_monotonicity_check: size mismatch");
    const Spectrum l1 = spectrum(s1);
    const Spectrum l2 = spectrum(s2);
    require(majorizes(l2.values(), l1.values()), "majorization_monotonicity_check: spectrum(S1) is not majorized by spectrum(S2)");
    return eval_on_spectrum(f, l1.values()) <= eval_on_spectrum(f, l2.values()) + 1e-9;
}

struct TraceSet {};   ///< A(c): total squared norm preserved.
struct NormSet {};    ///< B(a): every squared norm preserved.
using ProbeConstraint = std::variant<TraceSet, NormSet>;

struct ProbeResult {
    Frame best_frame;
    double best_value;
    double base_value;
    bool descent_found;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline Frame project_to_constraint(const CMat& t, const Frame& base, const ProbeConstraint& constraint) {
    CMat out = t;
    if (std::holds_alternative<NormSet>(constraint)) {
        const RVec target = base.squared_norms();
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            const double nj = out.col(j).norm();
            if (nj > 0.0) out.col(j) *= std::sqrt(target(j)) / nj;
            else out.col(j) = base.synthesis().col(j);
        }
    } else {
        const double c = base.total_squared_norm();
        const double now = out.squaredNorm();
        if (now > 0.0) out *= std::sqrt(c / now);
    }
    return Frame(std::move(out));
}

/// One probe sample; depends only on (seed, index) so samples can run in any order.
inline Frame probe_sample(const Frame& base, const ProbeConstraint& constraint, double radius,
                          std::uint64_t seed, std::size_t index) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index))));
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const CMat& t = base.synthesis();
    CMat delta(t.rows(), t.cols());
    for (Eigen::Index j = 0; j < t.cols(); ++j)
        for (Eigen::Index i = 0; i < t.rows(); ++i) delta(i, j) = Complex(gauss(rng), gauss(rng));
    const double biggest = delta.colwise().norm().maxCoeff();
    if (biggest > 0.0) delta *= (0.5 * radius * unit(rng)) / biggest;
    for (int shrink = 0; shrink < 60; ++shrink) {
        Frame candidate = project_to_constraint(t + delta, base, constraint);
        if (vv_distance(candidate, base) <= radius) return candidate;
        delta *= 0.5;
    }
    return base;
}

}  // namespace detail

/**
 * Random search for a lower potential within vv-distance `radius` of F,
 * staying inside A(c) or B(a). Deterministic for a given seed.
 */
inline ProbeResult local_min_probe(const Frame& frame, const Potential& f, const ProbeConstraint& constraint,
                                   double radius, std::size_t samples, std::uint64_t seed) {
    require(radius >= 0.0 && std::isfinite(radius), "local_min_probe: radius must be non-negative");
    require(samples >= 1, "local_min_probe: need at least one sample");
    const double base = eval_potential(f, frame);
    ProbeResult result{frame, base, base, false};
    if (radius == 0.0) return result;
    for (std::size_t k = 0; k < samples; ++k) {
        Frame candidate = detail::probe_sample(frame, constraint, radius, seed, k);
        const double value = eval_potential(f, candidate);
        if (value < result.best_value) {
            result.best_value = value;
            result.best_frame = std::move(candidate);
        }
    }
    result.descent_found = result.best_value < base - 1e-9 * std::max(1.0, std::abs(base));
    return result;
}

}  // namespace framecraft
