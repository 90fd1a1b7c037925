#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <vector>

#include "harmap/errors.hpp"
#include "harmap/series.hpp"

namespace harmap {

/// Exact closed-form expressions over the unit disk, used as oracles for the
/// series computations. The node set is deliberately small:
///
///   Constant, Variable, Add, Mul, Div, IntPow(k),
///   Log1p(c)        = log(1 + c z), principal branch, |c| <= 1,
///   AtanShift(a, b) = arctan(a z + b), continued from arctan(b) at z = 0.
///
/// Every Log1p keeps Re(1 + c z) > 0 on the open disk, so the principal
/// branch is single-valued there. AtanShift is reduced to two such logs:
/// with c1 = ia/(1+ib) and c2 = -ia/(1-ib),
///
///   arctan(a z + b) = arctan(b) + (log(1 + c1 z) - log(1 + c2 z)) / (2i),
///
/// which equals the path integral of a/(1+(az+b)^2) from 0 because the disk
/// is simply connected; |c1| = |c2| = |a|/sqrt(1+b^2) <= 1 is exactly the
/// condition that the integrand is pole-free on the disk.
class ClosedForm {
    enum class Kind { Constant, Variable, Add, Mul, Div, IntPow, Log1p, AtanShift };

    struct Node {
        Kind kind;
        cplx value{};                        // Constant payload / Log1p factor
        int power = 0;                       // IntPow exponent
        double atan_a = 0.0, atan_b = 0.0;   // AtanShift payload
        std::shared_ptr<const Node> lhs, rhs;
    };

public:
    static ClosedForm constant(cplx v) {
        return make({Kind::Constant, v, 0, 0, 0, nullptr, nullptr});
    }

    static ClosedForm variable() { return make({Kind::Variable, {}, 0, 0, 0, nullptr, nullptr}); }

    static ClosedForm log1p(cplx c) {
        if (std::abs(c) > 1.0 + 1e-9)
            throw ParamOutOfRange("Log1p factor must satisfy |c| <= 1");
        return make({Kind::Log1p, c, 0, 0, 0, nullptr, nullptr});
    }

    static ClosedForm atan_shift(double a, double b) {
        if (a * a > (1.0 + b * b) * (1.0 + 1e-9))
            throw ParamOutOfRange("AtanShift needs a^2 <= 1 + b^2 (pole-free on the disk)");
        return make({Kind::AtanShift, {}, 0, a, b, nullptr, nullptr});
    }

    static ClosedForm ipow(const ClosedForm& base, int k) {
        return make({Kind::IntPow, {}, k, 0, 0, base.node_, nullptr});
    }

    friend ClosedForm operator+(const ClosedForm& a, const ClosedForm& b) {
        return make({Kind::Add, {}, 0, 0, 0, a.node_, b.node_});
    }
    friend ClosedForm operator-(const ClosedForm& a, const ClosedForm& b) {
        return a + constant(-1.0) * b;
    }
    friend ClosedForm operator*(const ClosedForm& a, const ClosedForm& b) {
        return make({Kind::Mul, {}, 0, 0, 0, a.node_, b.node_});
    }
    friend ClosedForm operator/(const ClosedForm& a, const ClosedForm& b) {
        return make({Kind::Div, {}, 0, 0, 0, a.node_, b.node_});
    }
    friend ClosedForm operator*(cplx s, const ClosedForm& a) { return constant(s) * a; }
    friend ClosedForm operator+(cplx s, const ClosedForm& a) { return constant(s) + a; }
    friend ClosedForm operator-(const ClosedForm& a, cplx s) { return a + constant(-s); }

    /// Evaluate at |z| < 1. Exact up to machine precision with the branch
    /// conventions above.
    cplx eval(cplx z) const {
        if (std::abs(z) >= 1.0) throw OutsideDisk();
        return eval_node(*node_, z);
    }

    /// Taylor coefficients at 0 by recursive series composition.
    Series to_series(int order) const { return series_node(*node_, order); }

private:
    explicit ClosedForm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static ClosedForm make(Node n) { return ClosedForm(std::make_shared<const Node>(std::move(n))); }

    static cplx eval_node(const Node& n, cplx z) {
        switch (n.kind) {
            case Kind::Constant: return n.value;
            case Kind::Variable: return z;
            case Kind::Add: return eval_node(*n.lhs, z) + eval_node(*n.rhs, z);
            case Kind::Mul: return eval_node(*n.lhs, z) * eval_node(*n.rhs, z);
            case Kind::Div: {
                const cplx den = eval_node(*n.rhs, z);
                if (std::abs(den) < 1e-14) throw PoleHit("division by ~0 in closed form");
                return eval_node(*n.lhs, z) / den;
            }
            case Kind::IntPow: {
                const cplx base = eval_node(*n.lhs, z);
                if (n.power < 0 && std::abs(base) < 1e-14)
                    throw PoleHit("negative power of ~0 in closed form");
                return std::pow(base, n.power);
            }
            case Kind::Log1p: return std::log(1.0 + n.value * z);
            case Kind::AtanShift: {
                const cplx i{0.0, 1.0};
                const cplx c1 = i * n.atan_a / (1.0 + i * n.atan_b);
                const cplx c2 = -i * n.atan_a / (1.0 - i * n.atan_b);
                return std::atan(n.atan_b) +
                       (std::log(1.0 + c1 * z) - std::log(1.0 + c2 * z)) / (2.0 * i);
            }
        }
        throw Error("unreachable closed-form kind");
    }

    static Series series_node(const Node& n, int order) {
        switch (n.kind) {
            case Kind::Constant: return Series::constant(n.value, order);
            case Kind::Variable: return Series::monomial(1, 1.0, std::max(order, 1));
            case Kind::Add: return linear_combine(series_node(*n.lhs, order), series_node(*n.rhs, order), 1.0, 1.0);
            case Kind::Mul: return cauchy_product(series_node(*n.lhs, order), series_node(*n.rhs, order));
            case Kind::Div: {
                try {
                    return reciprocal_divide(series_node(*n.lhs, order), series_node(*n.rhs, order));
                } catch (const DivisorVanishesAtOrigin&) {
                    throw PoleHit("closed form has a structural pole at 0");
                }
            }
            case Kind::IntPow: {
                const Series base = series_node(*n.lhs, order);
                Series acc = Series::constant(1.0, order);
                for (int k = 0; k < std::abs(n.power); ++k) acc = cauchy_product(acc, base);
                if (n.power >= 0) return acc;
                try {
                    return reciprocal_divide(Series::constant(1.0, order), acc);
                } catch (const DivisorVanishesAtOrigin&) {
                    throw PoleHit("closed form has a structural pole at 0");
                }
            }
            case Kind::Log1p: return log1p_series(n.value, order);
            case Kind::AtanShift: {
                const cplx i{0.0, 1.0};
                const cplx c1 = i * n.atan_a / (1.0 + i * n.atan_b);
                const cplx c2 = -i * n.atan_a / (1.0 - i * n.atan_b);
                Series s = linear_combine(log1p_series(c1, order), log1p_series(c2, order),
                                          1.0 / (2.0 * i), -1.0 / (2.0 * i));
                std::vector<cplx> c = s.coeffs();
                c[0] += std::atan(n.atan_b);
                return Series(std::move(c));
            }
        }
        throw Error("unreachable closed-form kind");
    }

    static Series log1p_series(cplx c, int order) {
        // log(1 + c z) = sum_{n>=1} -(-c)^n / n * z^n
        std::vector<cplx> out(static_cast<std::size_t>(order) + 1, cplx{});
        cplx pw = 1.0;
        for (int k = 1; k <= order; ++k) {
            pw *= -c;
            out[static_cast<std::size_t>(k)] = -pw / static_cast<double>(k);
        }
        return Series(std::move(out));
    }

    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Stock functions.

inline ClosedForm halfplane_cf() {
    const auto z = ClosedForm::variable();
    return z / (ClosedForm::constant(1.0) - z);
}

inline ClosedForm koebe_cf() {
    const auto z = ClosedForm::variable();
    return z * ClosedForm::ipow(ClosedForm::constant(1.0) - z, -2);
}

inline ClosedForm halflog_cf() {
    return 0.5 * (ClosedForm::log1p(1.0) - ClosedForm::log1p(-1.0));
}

/// z/(1-z): the right-half-plane map, coefficients 1.
inline Series halfplane(int order) {
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1, cplx{1.0});
    c[0] = 0.0;
    return Series(std::move(c));
}

/// z/(1-z)^2: coefficients n.
inline Series koebe(int order) {
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) c[static_cast<std::size_t>(n)] = static_cast<double>(n);
    return Series(std::move(c));
}

/// (1/2) log((1+z)/(1-z)): odd coefficients 1/(2k+1).
inline Series halflog(int order) {
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1, cplx{});
    for (int n = 1; n <= order; n += 2) c[static_cast<std::size_t>(n)] = 1.0 / static_cast<double>(n);
    return Series(std::move(c));
}

/// phi(z) = int_0^z dzeta / ((1 + zeta e^{i th1})(1 + zeta e^{i th2})).
/// Normalized: phi(0) = 0, phi'(0) = 1.
inline Series kernel_phi(double theta1, double theta2, int order) {
    if (order < 1) throw std::invalid_argument("kernel_phi needs order >= 1");
    const cplx e1 = std::polar(1.0, theta1), e2 = std::polar(1.0, theta2);
    std::vector<cplx> den(static_cast<std::size_t>(order), cplx{});
    den[0] = 1.0;
    if (order >= 2) den[1] = e1 + e2;
    if (order >= 3) den[2] = e1 * e2;
    const Series integrand = reciprocal_divide(Series::constant(1.0, order - 1), Series(std::move(den)));
    return integrate(integrand);
}

namespace detail {

/// Shared core of the two direction-convexity generators. `p` is treated as
/// exact through the requested order (class-P inputs arrive in closed form).
inline Series direction_phi(double mu, double nu, const Series& p, int order, bool civd) {
    if (std::abs(p.coeff(0) - 1.0) > 1e-12) throw NotNormalizedP();
    if (order < 1) throw std::invalid_argument("generator needs order >= 1");
    const cplx i{0.0, 1.0};
    const cplx emu = std::polar(1.0, mu);
    const cplx emi = std::polar(1.0, -mu);
    const int m = order - 1;
    std::vector<cplx> num(static_cast<std::size_t>(m) + 1), den(static_cast<std::size_t>(m) + 1, cplx{});
    for (int k = 0; k <= m; ++k) {
        // CIVD flavor: cos(mu) + i sin(mu) p;  CDR flavor: cos(mu) p + i sin(mu).
        num[static_cast<std::size_t>(k)] =
            civd ? (k == 0 ? cplx{std::cos(mu)} : cplx{}) + i * std::sin(mu) * p.coeff(k)
                 : std::cos(mu) * p.coeff(k) + (k == 0 ? i * std::sin(mu) : cplx{});
    }
    den[0] = emu;
    if (m >= 1) den[1] = -2.0 * std::cos(nu) * emi * emu;
    if (m >= 2) den[2] = emi * emi * emu;
    return integrate(reciprocal_divide(Series(std::move(num)), Series(std::move(den))));
}

}  // namespace detail

/// phi(z) = int_0^z (cos(mu) + i sin(mu) p(zeta))
///          / (e^{i mu} (1 - 2 zeta e^{-i mu} cos(nu) + zeta^2 e^{-2i mu})) dzeta.
/// For Re p > 0 on the disk the image is convex in the imaginary direction.
inline Series civd_phi(double mu, double nu, const Series& p, int order) {
    if (mu < -1e-12 || mu > std::numbers::pi + 1e-12 || nu < -1e-12 || nu > std::numbers::pi + 1e-12)
        throw ParamOutOfRange("civd generator needs mu, nu in [0, pi]");
    return detail::direction_phi(mu, nu, p, order, /*civd=*/true);
}

/// Companion generator with numerator cos(mu) p + i sin(mu); for Re p > 0 the
/// image is convex in the real direction. Accepts cos(mu) >= 0.
inline Series cdr_phi(double mu, double nu, const Series& p, int order) {
    if (std::cos(mu) < -1e-12 || nu < -1e-12 || nu > std::numbers::pi + 1e-12)
        throw ParamOutOfRange("cdr generator needs cos(mu) >= 0 and nu in [0, pi]");
    return detail::direction_phi(mu, nu, p, order, /*civd=*/false);
}

/// gamma * z(1 - alpha z)/(1 - z^2)
///   + (1 - gamma) * (1/(2i sin theta)) log((1 + z e^{i theta})/(1 + z e^{-i theta})).
inline Series c1_phi(double gamma, double alpha, double theta, int order) {
    if (gamma < 0.0 || gamma > 1.0) throw ParamOutOfRange("c1: gamma in [0,1]");
    if (alpha < -1.0 || alpha > 1.0) throw ParamOutOfRange("c1: alpha in [-1,1]");
    if (!(theta > 0.0 && theta < std::numbers::pi))
        throw ParamOutOfRange("c1: theta in (0, pi), endpoints excluded (sin theta = 0)");
    if (order < 1) throw std::invalid_argument("c1_phi needs order >= 1");
    std::vector<cplx> num(static_cast<std::size_t>(order) + 1, cplx{});
    num[1] = 1.0;
    if (order >= 2) num[2] = -alpha;
    std::vector<cplx> den(static_cast<std::size_t>(order) + 1, cplx{});
    den[0] = 1.0;
    if (order >= 2) den[2] = -1.0;
    const Series rational = reciprocal_divide(Series(std::move(num)), Series(std::move(den)));
    const cplx e = std::polar(1.0, theta);
    const cplx i{0.0, 1.0};
    const Series logpart = linear_combine(
        ClosedForm::log1p(e).to_series(order), ClosedForm::log1p(std::conj(e)).to_series(order),
        1.0 / (2.0 * i * std::sin(theta)), -1.0 / (2.0 * i * std::sin(theta)));
    return linear_combine(rational, logpart, gamma, 1.0 - gamma);
}

/// gamma * (1/2) log((1+z)/(1-z)) + (1 - gamma) * z/(1 + beta z + z^2).
inline Series c2_phi(double gamma, double beta, int order) {
    if (gamma < 0.0 || gamma > 1.0) throw ParamOutOfRange("c2: gamma in [0,1]");
    if (beta < -2.0 || beta > 2.0) throw ParamOutOfRange("c2: beta in [-2,2]");
    if (order < 1) throw std::invalid_argument("c2_phi needs order >= 1");
    std::vector<cplx> num(static_cast<std::size_t>(order) + 1, cplx{});
    num[1] = 1.0;
    std::vector<cplx> den(static_cast<std::size_t>(order) + 1, cplx{});
    den[0] = 1.0;
    if (order >= 1) den[1] = beta;
    if (order >= 2) den[2] = 1.0;
    const Series rational = reciprocal_divide(Series(std::move(num)), Series(std::move(den)));
    return linear_combine(halflog(order), rational, gamma, 1.0 - gamma);
}

}  // namespace harmap
