#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "harmap/errors.hpp"

namespace harmap {

using cplx = std::complex<double>;

inline constexpr int kDefaultOrder = 128;
inline constexpr double kDefaultEvalRadius = 0.995;
inline constexpr double kDivisorTolerance = 1e-12;

/// Truncated complex power series c0 + c1 z + ... + cN z^N.
///
/// The one numeric representation shared by every analytic function in the
/// library. Instances are immutable and every operation below is a pure
/// function, so values can be shared across threads without locking.
///
/// Binary operations truncate to the *shorter* operand: a truncation tail is
/// unknown, not zero, and zero-padding would silently pretend otherwise.
class Series {
public:
    Series() : coeffs_(1, cplx{}) {}

    explicit Series(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("Series needs at least the constant coefficient");
        for (const cplx& c : coeffs_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw std::invalid_argument("Series coefficients must be finite");
        }
    }

    static Series zero(int order) { return Series(std::vector<cplx>(checked(order) + 1, cplx{})); }

    static Series constant(cplx value, int order = 0) {
        std::vector<cplx> c(checked(order) + 1, cplx{});
        c[0] = value;
        return Series(std::move(c));
    }

    /// coeff * z^degree, truncated at `order` (order defaults to the degree).
    static Series monomial(int degree, cplx coeff, int order = -1) {
        if (degree < 0) throw std::invalid_argument("monomial degree must be >= 0");
        if (order < 0) order = degree;
        if (order < degree) throw std::invalid_argument("monomial degree exceeds requested order");
        std::vector<cplx> c(static_cast<std::size_t>(order) + 1, cplx{});
        c[static_cast<std::size_t>(degree)] = coeff;
        return Series(std::move(c));
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// Coefficient of z^n; zero beyond the stored order.
    cplx coeff(int n) const {
        if (n < 0 || n > order()) return cplx{};
        return coeffs_[static_cast<std::size_t>(n)];
    }

    const std::vector<cplx>& coeffs() const { return coeffs_; }

    Series truncated(int new_order) const {
        if (new_order < 0 || new_order > order())
            throw std::invalid_argument("truncated(): order must lie within the stored order");
        return Series(std::vector<cplx>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
    }

private:
    static int checked(int order) {
        if (order < 0) throw std::invalid_argument("series order must be >= 0");
        return order;
    }

    std::vector<cplx> coeffs_;
};

/// s*a + t*b coefficient-wise, up to the shorter order.
inline Series linear_combine(const Series& a, const Series& b, cplx s, cplx t) {
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = s * a.coeff(k) + t * b.coeff(k);
    return Series(std::move(c));
}

inline Series scale(const Series& a, cplx s) { return linear_combine(a, a, s, cplx{}); }

/// Product series: c_n = sum_{k<=n} a_k b_{n-k}, truncated to the shorter order.
inline Series cauchy_product(const Series& a, const Series& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1, cplx{});
    for (int i = 0; i <= std::min(a.order(), n); ++i) {
        const cplx ai = a.coeff(i);
        if (ai == cplx{}) continue;
        for (int j = 0; i + j <= n && j <= b.order(); ++j)
            c[static_cast<std::size_t>(i + j)] += ai * b.coeff(j);
    }
    return Series(std::move(c));
}

/// Quotient q with cauchy_product(q, b) == a through the shorter order.
/// Standard division recurrence; requires |b(0)| > kDivisorTolerance.
inline Series reciprocal_divide(const Series& a, const Series& b) {
    if (std::abs(b.coeff(0)) <= kDivisorTolerance) throw DivisorVanishesAtOrigin();
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> q(static_cast<std::size_t>(n) + 1);
    const cplx inv_b0 = 1.0 / b.coeff(0);
    for (int k = 0; k <= n; ++k) {
        cplx s = a.coeff(k);
        for (int j = 1; j <= k; ++j) s -= b.coeff(j) * q[static_cast<std::size_t>(k - j)];
        q[static_cast<std::size_t>(k)] = s * inv_b0;
    }
    return Series(std::move(q));
}

/// Termwise derivative; order drops by one (constants map to the zero series).
inline Series derive(const Series& a) {
    const int n = std::max(a.order() - 1, 0);
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1, cplx{});
    for (int k = 0; k <= a.order() - 1; ++k)
        c[static_cast<std::size_t>(k)] = static_cast<double>(k + 1) * a.coeff(k + 1);
    return Series(std::move(c));
}

/// Termwise antiderivative with zero constant; order grows by one.
inline Series integrate(const Series& a) {
    std::vector<cplx> c(static_cast<std::size_t>(a.order()) + 2, cplx{});
    for (int k = 0; k <= a.order(); ++k)
        c[static_cast<std::size_t>(k) + 1] = a.coeff(k) / static_cast<double>(k + 1);
    return Series(std::move(c));
}

/// Horner evaluation. The radius cap exists because every function in this
/// domain has its natural boundary on |z| = 1 and truncations degrade fast
/// beyond the cap.
inline cplx eval(const Series& a, cplx z, double r_max = kDefaultEvalRadius) {
    const double r = std::abs(z);
    if (r > r_max) throw OutsideEvaluationDisk(r, r_max);
    cplx acc{};
    for (int k = a.order(); k >= 0; --k) acc = acc * z + a.coeff(k);
    return acc;
}

/// Substitution z -> c*z with |c| <= 1: c_n -> c_n * c^n.
inline Series compose_scale(const Series& a, cplx c) {
    if (std::abs(c) > 1.0 + 1e-15) throw ScaleExceedsUnit();
    std::vector<cplx> out(static_cast<std::size_t>(a.order()) + 1);
    cplx pw = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        out[static_cast<std::size_t>(k)] = a.coeff(k) * pw;
        pw *= c;
    }
    return Series(std::move(out));
}

/// Hadamard product: c_n = a_n * b_n, truncated to the shorter order.
inline Series hadamard(const Series& a, const Series& b) {
    const int n = std::min(a.order(), b.order());
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a.coeff(k) * b.coeff(k);
    return Series(std::move(c));
}

/// sup-norm of the coefficient vector.
inline double max_abs_coeff(const Series& a) {
    double m = 0.0;
    for (int k = 0; k <= a.order(); ++k) m = std::max(m, std::abs(a.coeff(k)));
    return m;
}

/// sup-distance between coefficient vectors, compared through the *longer*
/// order (missing coefficients count as zero). Intended for residual checks
/// where both operands describe the same function.
inline double max_coeff_distance(const Series& a, const Series& b) {
    double m = 0.0;
    const int n = std::max(a.order(), b.order());
    for (int k = 0; k <= n; ++k) m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
    return m;
}

}  // namespace harmap
