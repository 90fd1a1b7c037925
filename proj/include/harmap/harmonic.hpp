#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "harmap/closed_form.hpp"
#include "harmap/errors.hpp"
#include "harmap/grid.hpp"
#include "harmap/series.hpp"

namespace harmap {

/// Planar harmonic mapping f = h + conj(g) with h, g analytic on the disk.
/// Normalization (h(0) = 0, h'(0) = 1, g(0) = 0, g'(0) = 0) is queryable,
/// not enforced: a constant dilatation yields g'(0) != 0 and such maps are
/// still worth constructing and inspecting.
struct HarmonicMap {
    Series h;
    Series g;
    std::optional<ClosedForm> h_closed;
    std::optional<ClosedForm> g_closed;
    std::string label;

    bool is_normalized(double tol = 1e-9) const {
        return std::abs(h.coeff(0)) <= tol && std::abs(h.coeff(1) - 1.0) <= tol &&
               std::abs(g.coeff(0)) <= tol && std::abs(g.coeff(1)) <= tol;
    }
};

/// Data for the shear construction of the class {h + lambda*g = phi}:
/// an analytic target phi, a dilatation omega with |omega(0)| < 1, and a
/// unimodular class parameter lambda.
struct ShearSpec {
    Series phi;
    Series omega;
    cplx lambda{1.0, 0.0};
};

/// Shear construction: h' = phi' / (1 + lambda*omega), g = (phi - h)/lambda.
///
/// Defining g through the exact linear relation (rather than integrating
/// omega*h') pins h + lambda*g = phi to rounding error; g' = omega*h' then
/// holds through the truncation order by the same algebra.
/// omega is treated as exact through the working order (its coefficients
/// beyond omega.order() are zeros, matching polynomial dilatations like z or
/// -z^2). Result order = min(order, phi.order()).
inline HarmonicMap shear(const ShearSpec& spec, int order, std::string label = {}) {
    if (std::abs(std::abs(spec.lambda) - 1.0) > 1e-12)
        throw ParamOutOfRange("shear: |lambda| must be 1");
    if (std::abs(spec.phi.coeff(0)) > 1e-12 || std::abs(spec.phi.coeff(1) - 1.0) > 1e-12)
        throw PhiNotNormalized();
    if (std::abs(spec.omega.coeff(0)) >= 1.0) throw DilatationNotSubunit();

    const int n = std::min(order, spec.phi.order());
    const Series phi = spec.phi.order() == n ? spec.phi : spec.phi.truncated(n);
    const Series dphi = derive(phi);

    std::vector<cplx> den(static_cast<std::size_t>(dphi.order()) + 1, cplx{});
    for (int k = 0; k <= dphi.order(); ++k) den[static_cast<std::size_t>(k)] = spec.lambda * spec.omega.coeff(k);
    den[0] += 1.0;

    const Series h = integrate(reciprocal_divide(dphi, Series(std::move(den)))).truncated(n);
    const Series g = linear_combine(phi, h, 1.0 / spec.lambda, -1.0 / spec.lambda);
    return HarmonicMap{h, g, std::nullopt, std::nullopt, std::move(label)};
}

/// Dilatation omega = g'/h' as a series quotient. Requires h'(0) != 0, which
/// holds for every sheared map (h'(0) = 1/(1 + lambda*omega(0))).
inline Series dilatation(const HarmonicMap& f) {
    return reciprocal_divide(derive(f.g), derive(f.h));
}

/// Convex combination t*f1 + (1-t)*f2, part-wise.
inline HarmonicMap combine(const HarmonicMap& f1, const HarmonicMap& f2, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw ParamOutOfRange("combine: t in [0,1]");
    HarmonicMap out;
    out.h = linear_combine(f1.h, f2.h, t, 1.0 - t);
    out.g = linear_combine(f1.g, f2.g, t, 1.0 - t);
    if (f1.h_closed && f2.h_closed) out.h_closed = t * (*f1.h_closed) + (1.0 - t) * (*f2.h_closed);
    if (f1.g_closed && f2.g_closed) out.g_closed = t * (*f1.g_closed) + (1.0 - t) * (*f2.g_closed);
    return out;
}

/// Hadamard convolution, part-wise: H = h1*h2, G = g1*g2 coefficient-wise.
inline HarmonicMap convolve(const HarmonicMap& f1, const HarmonicMap& f2) {
    HarmonicMap out;
    out.h = hadamard(f1.h, f2.h);
    out.g = hadamard(f1.g, f2.g);
    return out;
}

inline cplx eval_map(const HarmonicMap& f, cplx z, double r_max = kDefaultEvalRadius) {
    return eval(f.h, z, r_max) + std::conj(eval(f.g, z, r_max));
}

/// min over the grid of |h'(z)| - |g'(z)|. A positive value is a sampled
/// witness that f is sense-preserving (hence locally univalent) there.
inline double sense_preserving_margin(const HarmonicMap& f, const GridSpec& grid) {
    const Series dh = derive(f.h), dg = derive(f.g);
    double margin = std::numeric_limits<double>::infinity();
    for (const cplx z : disk_points(grid))
        margin = std::min(margin, std::abs(eval(dh, z)) - std::abs(eval(dg, z)));
    return margin;
}

/// Residual of the dilatation identity for linear combinations within a
/// shared class h_j - lambda*g_j = phi (note: *this* lambda convention, the
/// mirror of ShearSpec's):
///
///   Re((1+lw3)/(1-lw3)) = t Re((1+lw1)/(1-lw1)) + (1-t) Re((1+lw2)/(1-lw2)),
///
/// with w3 the dilatation of t*f1 + (1-t)*f2. All dilatations are evaluated
/// pointwise from the derivative series, so the identity is exact for the
/// truncations themselves and the residual measures hypothesis failure, not
/// truncation.
inline double combination_dilatation_residual(const HarmonicMap& f1, const HarmonicMap& f2,
                                              cplx lambda, double t, cplx z) {
    if (std::abs(z) > 0.95) throw OutsideEvaluationDisk(std::abs(z), 0.95);
    const double shared = max_coeff_distance(linear_combine(f1.h, f1.g, 1.0, -lambda),
                                             linear_combine(f2.h, f2.g, 1.0, -lambda));
    if (shared > 1e-10)
        throw HypothesisViolated("h - lambda*g differs between the maps (|diff| = " +
                                 std::to_string(shared) + ")");

    const auto herglotz_part = [lambda](cplx w) { return ((1.0 + lambda * w) / (1.0 - lambda * w)).real(); };
    const cplx h1 = eval(derive(f1.h), z), g1 = eval(derive(f1.g), z);
    const cplx h2 = eval(derive(f2.h), z), g2 = eval(derive(f2.g), z);
    const cplx w1 = g1 / h1, w2 = g2 / h2;
    const cplx w3 = (t * g1 + (1.0 - t) * g2) / (t * h1 + (1.0 - t) * h2);
    return std::abs(herglotz_part(w3) - t * herglotz_part(w1) - (1.0 - t) * herglotz_part(w2));
}

}  // namespace harmap
