#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "harmap/closed_form.hpp"
#include "harmap/convexity.hpp"
#include "harmap/errors.hpp"
#include "harmap/grid.hpp"
#include "harmap/harmonic.hpp"
#include "harmap/series.hpp"

namespace harmap {

struct HypothesisCheck {
    std::string name;
    double value = 0.0;
    bool passed = false;
};

/// Outcome of one theorem harness: which hypotheses were sampled with what
/// margins, the conclusion certificate when one was found, and the labels of
/// the maps that were constructed along the way.
/// passed <=> every hypothesis holds and the conclusion certificate exists.
struct HarnessReport {
    std::string theorem_id;
    std::vector<HypothesisCheck> hypotheses;
    std::optional<Certificate> conclusion;
    std::vector<std::string> map_labels;
    bool passed = false;
};

/// Linear-combination harness input: two sheared maps f_j with class data
/// (lambda_j, target) and dilatation omega_j, a combination weight t, an
/// optional target-direction override, and -- for the mixed-class path --
/// the kernel angles that the shared target must integrate.
struct CombinationSpec {
    cplx lambda1{1.0, 0.0};
    cplx lambda2{1.0, 0.0};
    Series phi;
    Series psi;
    Series omega1;
    Series omega2;
    double t = 0.5;
    std::optional<double> direction;
    std::optional<std::pair<double, double>> kernel_thetas;
};

namespace detail {

inline HypothesisCheck margin_check(std::string name, double margin) {
    return {std::move(name), margin, margin >= -kPositivityMargin};
}

inline HypothesisCheck residual_check(std::string name, double residual, double tol) {
    return {std::move(name), residual, residual <= tol};
}

inline bool finish(HarnessReport& report) {
    report.passed = report.conclusion.has_value();
    for (const HypothesisCheck& h : report.hypotheses) report.passed = report.passed && h.passed;
    return report.passed;
}

inline Certificate kernel_certificate(double min_value, double theta1, double theta2,
                                      const GridSpec& grid) {
    Certificate cert;
    cert.kind = CertificateKind::Kernel;
    cert.theta1 = theta1;
    cert.theta2 = theta2;
    cert.min_value = min_value;
    cert.grid = grid;
    return cert;
}

}  // namespace detail

/// Dispatches on the class data, mirroring the linear-combination results:
///   lambda1 == lambda2, phi == psi   -> shared class; target direction is
///       pi/2 for lambda = 1, 0 for lambda = -1, else -arg(lambda)/2.
///   lambda1 == lambda2, phi != psi   -> two targets (lambda = +-1 only);
///       extra hypothesis Re((1 - w1 conj(w2)) h1' conj(h2')) >= 0, target
///       t*phi + (1-t)*psi in the lambda-determined direction.
///   lambda1 != lambda2, phi == psi   -> mixed classes {+1, -1}; extra
///       hypothesis Re(1 + (w1 - conj(w2))/(1 - w1 conj(w2))) >= 0, and the
///       kernel criterion on h3 - g3 at the input's kernel angles.
/// Every path also samples sense-preservation of the combination.
inline HarnessReport harness_combination(const CombinationSpec& spec, const GridSpec& grid) {
    validate(grid);
    if (!(spec.t >= 0.0 && spec.t <= 1.0)) throw ParamOutOfRange("combination weight t in [0,1]");

    const bool same_lambda = std::abs(spec.lambda1 - spec.lambda2) <= 1e-12;
    const bool same_phi = max_coeff_distance(spec.phi, spec.psi) <= 1e-10;
    const auto is_plus = [](cplx l) { return std::abs(l - 1.0) <= 1e-12; };
    const auto is_minus = [](cplx l) { return std::abs(l + 1.0) <= 1e-12; };

    CombinationSpec s = spec;
    if (!same_lambda) {
        if (!same_phi)
            throw SpecAmbiguous("distinct lambdas need a shared target phi = psi");
        if (is_minus(s.lambda1) && is_plus(s.lambda2)) {
            std::swap(s.lambda1, s.lambda2);
            std::swap(s.omega1, s.omega2);
            s.t = 1.0 - s.t;
        }
        if (!(is_plus(s.lambda1) && is_minus(s.lambda2)))
            throw SpecAmbiguous("mixed-class path needs lambdas {+1, -1}");
        if (!s.kernel_thetas)
            throw SpecAmbiguous("mixed-class path needs the kernel angles of the shared target");
    }

    const int order = std::min(s.phi.order(), s.psi.order());
    const HarmonicMap f1 = shear({s.phi, s.omega1, s.lambda1}, order, "f1");
    const HarmonicMap f2 = shear({s.psi, s.omega2, s.lambda2}, order, "f2");
    HarmonicMap f3 = combine(f1, f2, s.t);
    f3.label = "f3";

    HarnessReport report;
    report.map_labels = {f1.label, f2.label, f3.label};
    report.hypotheses.push_back(
        detail::margin_check("sense_preserving_margin_f3", sense_preserving_margin(f3, grid)));
    // strict positivity for local univalence
    report.hypotheses.back().passed = report.hypotheses.back().value > 0.0;

    const auto pointwise_min = [&](auto&& functional) {
        const Series dh1 = derive(f1.h), dg1 = derive(f1.g);
        const Series dh2 = derive(f2.h), dg2 = derive(f2.g);
        double m = std::numeric_limits<double>::infinity();
        for (const cplx z : disk_points(grid)) {
            const cplx h1 = eval(dh1, z), h2 = eval(dh2, z);
            const cplx w1 = eval(dg1, z) / h1, w2 = eval(dg2, z) / h2;
            m = std::min(m, functional(w1, w2, h1, h2));
        }
        return m;
    };

    if (same_lambda && same_phi) {
        report.theorem_id = "combine.shared-class";
        double gamma;
        if (is_plus(s.lambda1)) gamma = std::numbers::pi / 2.0;
        else if (is_minus(s.lambda1)) gamma = 0.0;
        else gamma = -std::arg(s.lambda1) / 2.0;
        if (s.direction) gamma = *s.direction;
        report.conclusion = convex_in_direction(s.phi, gamma, grid);
    } else if (same_lambda) {
        report.theorem_id = "combine.two-targets";
        if (!is_plus(s.lambda1) && !is_minus(s.lambda1))
            throw SpecAmbiguous("two-targets path needs lambda = +-1");
        const double hmin = pointwise_min([](cplx w1, cplx w2, cplx h1, cplx h2) {
            return ((1.0 - w1 * std::conj(w2)) * h1 * std::conj(h2)).real();
        });
        report.hypotheses.push_back(detail::margin_check("re_(1-w1.cw2).h1'.ch2'_min", hmin));
        double gamma = is_plus(s.lambda1) ? std::numbers::pi / 2.0 : 0.0;
        if (s.direction) gamma = *s.direction;
        report.conclusion =
            convex_in_direction(linear_combine(s.phi, s.psi, s.t, 1.0 - s.t), gamma, grid);
    } else {
        report.theorem_id = "combine.mixed-class";
        const auto [th1, th2] = *s.kernel_thetas;
        report.hypotheses.push_back(detail::residual_check(
            "phi_matches_kernel_integral",
            max_coeff_distance(s.phi, kernel_phi(th1, th2, s.phi.order())), 1e-9));
        const double hmin = pointwise_min([](cplx w1, cplx w2, cplx, cplx) {
            return (1.0 + (w1 - std::conj(w2)) / (1.0 - w1 * std::conj(w2))).real();
        });
        report.hypotheses.push_back(detail::margin_check("re_1+(w1-cw2)/(1-w1.cw2)_min", hmin));
        const Series target = linear_combine(f3.h, f3.g, 1.0, -1.0);
        const double km = kernel_criterion(target, th1, th2, grid);
        if (km >= -kPositivityMargin)
            report.conclusion = detail::kernel_certificate(km, th1, th2, grid);
    }

    detail::finish(report);
    return report;
}

enum class ConvolutionTarget {
    Kernel,   // f2 sheared from the kernel integral phi(theta1, theta2)
    HalfLog,  // f2 sheared from (1/2) log((1+z)/(1-z))
};

/// Convolution harness: f1 is sheared from z/(1-z), f2 from the target
/// named above, and f1*f2 is checked for sense-preservation (the "provided
/// it is locally univalent" proviso, sampled) plus the target-direction
/// certificate: the kernel criterion on H - G for the kernel target, a
/// Royster-Ziegler search on H + G (the (pi/2, pi/2) candidate first) for
/// the half-log target.
inline HarnessReport harness_convolution(ConvolutionTarget target, double theta1, double theta2,
                                         cplx lambda1, cplx lambda2, const Series& omega1,
                                         const Series& omega2, const GridSpec& grid,
                                         int order = kCertificateOrder) {
    validate(grid);
    const auto is_plus = [](cplx l) { return std::abs(l - 1.0) <= 1e-12; };
    const auto is_minus = [](cplx l) { return std::abs(l + 1.0) <= 1e-12; };
    if (target == ConvolutionTarget::Kernel) {
        const bool both_plus = is_plus(lambda1) && is_plus(lambda2);
        const bool both_minus = is_minus(lambda1) && is_minus(lambda2);
        if (!both_plus && !both_minus)
            throw SpecAmbiguous("kernel convolution needs lambda1 = lambda2 = +-1");
    } else if (!(is_minus(lambda1) && is_plus(lambda2))) {
        throw SpecAmbiguous("half-log convolution needs lambda1 = -1, lambda2 = +1");
    }

    const HarmonicMap f1 = shear({halfplane(order), omega1, lambda1}, order, "f1");
    const Series phi2 = target == ConvolutionTarget::Kernel ? kernel_phi(theta1, theta2, order)
                                                            : halflog(order);
    const HarmonicMap f2 = shear({phi2, omega2, lambda2}, order, "f2");
    HarmonicMap f9 = convolve(f1, f2);
    f9.label = "f1*f2";

    HarnessReport report;
    report.theorem_id = target == ConvolutionTarget::Kernel ? "convolve.kernel" : "convolve.halflog";
    report.map_labels = {f1.label, f2.label, f9.label};
    report.hypotheses.push_back(
        detail::margin_check("sense_preserving_margin_f1*f2", sense_preserving_margin(f9, grid)));
    report.hypotheses.back().passed = report.hypotheses.back().value > 0.0;

    if (target == ConvolutionTarget::Kernel) {
        const Series diff = linear_combine(f9.h, f9.g, 1.0, -1.0);
        const double km = kernel_criterion(diff, theta1, theta2, grid);
        if (km >= -kPositivityMargin)
            report.conclusion = detail::kernel_certificate(km, theta1, theta2, grid);
    } else {
        const Series sum = linear_combine(f9.h, f9.g, 1.0, 1.0);
        const detail::RzCache cache = detail::make_rz_cache(sum, grid);
        const double v =
            detail::rz_candidate_min(cache, std::numbers::pi / 2.0, std::numbers::pi / 2.0);
        if (v >= -kPositivityMargin) {
            Certificate cert;
            cert.kind = CertificateKind::RoysterZiegler;
            cert.mu = std::numbers::pi / 2.0;
            cert.nu = std::numbers::pi / 2.0;
            cert.min_value = v;
            cert.grid = grid;
            report.conclusion = cert;
        } else {
            report.conclusion = find_rz_certificate(sum, grid);
        }
    }

    detail::finish(report);
    return report;
}

// ---------------------------------------------------------------------------
// The three worked example families, with closed-form twins attached.

struct ExampleMaps {
    HarmonicMap m1, m2, m3;
};

/// f1, f2 sheared from phi = z/(2(1-z)) + (1/4i) log((1+iz)/(1-iz)) with
/// dilatations z and -z^2 (class h + g = phi); f3 = (f1 + f2)/2.
inline ExampleMaps example1(int order = kDefaultOrder) {
    const Series phi = c1_phi(0.5, -1.0, std::numbers::pi / 2.0, order);
    const cplx i{0.0, 1.0};
    const ClosedForm Z = ClosedForm::variable();
    const ClosedForm one = ClosedForm::constant(1.0);
    const ClosedForm Li = ClosedForm::log1p(i), Lmi = ClosedForm::log1p(-i);
    const ClosedForm L1 = ClosedForm::log1p(1.0), Lm1 = ClosedForm::log1p(-1.0);
    const ClosedForm ratio_log = Li - Lmi;                 // log((1+iz)/(1-iz))
    const ClosedForm circle_log = Li + Lmi;                // log(1+z^2)
    const ClosedForm zh = Z / (one - Z);

    HarmonicMap f1 = shear({phi, Series::monomial(1, 1.0), 1.0}, order, "f1");
    f1.h_closed = (1.0 / (8.0 * i)) * ratio_log + (3.0 / 8.0) * L1 - (1.0 / 8.0) * Lm1 -
                  (1.0 / 8.0) * circle_log + 0.25 * zh;
    f1.g_closed = (1.0 / (8.0 * i)) * ratio_log - (3.0 / 8.0) * L1 + (1.0 / 8.0) * Lm1 +
                  (1.0 / 8.0) * circle_log + 0.25 * zh;

    HarmonicMap f2 = shear({phi, Series::monomial(2, -1.0), 1.0}, order, "f2");
    const ClosedForm pole2 = ClosedForm::ipow(one - Z, -2);
    const ClosedForm bump = (2.0 * Z - Z * Z) * pole2;     // (2z - z^2)/(1-z)^2
    f2.h_closed = (1.0 / (8.0 * i)) * ratio_log + (3.0 / 16.0) * (L1 - Lm1) + (1.0 / 8.0) * zh +
                  (1.0 / 8.0) * bump;
    f2.g_closed = (1.0 / (8.0 * i)) * ratio_log - (3.0 / 16.0) * (L1 - Lm1) + (3.0 / 8.0) * zh -
                  (1.0 / 8.0) * bump;

    HarmonicMap f3 = combine(f1, f2, 0.5);
    f3.label = "f3";
    return {f1, f2, f3};
}

/// f4, f5 sheared from phi = (1/4) log((1+z)/(1-z)) + z/(2(1-z)^2) with
/// dilatations 1/2 and -z (class h - g = phi); f6 = f4/3 + 2 f5/3.
/// f4 is deliberately outside the normalized class: its constant dilatation
/// forces g'(0) = 1 and h'(0) = 2.
inline ExampleMaps example2(int order = kDefaultOrder) {
    const Series phi = c2_phi(0.5, -2.0, order);
    const ClosedForm Z = ClosedForm::variable();
    const ClosedForm one = ClosedForm::constant(1.0);
    const ClosedForm hl = halflog_cf();
    const ClosedForm inv1 = ClosedForm::ipow(one - Z, -1);
    const ClosedForm inv2 = ClosedForm::ipow(one - Z, -2);

    HarmonicMap f4 = shear({phi, Series::constant(0.5), -1.0}, order, "f4");
    f4.h_closed = hl - inv1 + inv2;
    f4.g_closed = 0.5 * hl - inv1 + 0.5 * ((ClosedForm::constant(2.0) - Z) * inv2);

    HarmonicMap f5 = shear({phi, Series::monomial(1, -1.0), -1.0}, order, "f5");
    const ClosedForm cusp = Z / (one + Z);
    f5.h_closed = 0.25 * hl + 0.25 * cusp + 0.25 * inv2 - cplx{0.25};
    f5.g_closed = (-0.25) * hl + 0.25 * cusp + 0.25 * ((one - 2.0 * Z) * inv2) - cplx{0.25};

    HarmonicMap f6 = combine(f4, f5, 1.0 / 3.0);
    f6.label = "f6";
    return {f4, f5, f6};
}

/// f7 sheared from z/(1-z) with dilatation -z, f8 from the kernel integral
/// at (pi/6, -pi/6) = 2 arctan(2z + sqrt(3)) - 2pi/3 with dilatation z^2
/// (class h + g = phi); f9 = f7 * f8 with the closed convolution forms
/// H = (h8 + z h8')/2, G = (g8 - z g8')/2 attached.
inline ExampleMaps example3(int order = kDefaultOrder) {
    const double s3 = std::sqrt(3.0);
    const cplx i{0.0, 1.0};
    const ClosedForm Z = ClosedForm::variable();
    const ClosedForm one = ClosedForm::constant(1.0);

    HarmonicMap f7 = shear({halfplane(order), Series::monomial(1, -1.0), 1.0}, order, "f7");
    const ClosedForm pole2 = ClosedForm::ipow(one - Z, -2);
    f7.h_closed = (Z - 0.5 * (Z * Z)) * pole2;
    f7.g_closed = (-0.5) * (Z * Z) * pole2;

    const double pi6 = std::numbers::pi / 6.0;
    HarmonicMap f8 =
        shear({kernel_phi(pi6, -pi6, order), Series::monomial(2, 1.0), 1.0}, order, "f8");
    const ClosedForm quad_log = (s3 / 6.0) * (ClosedForm::log1p(std::polar(1.0, pi6)) +
                                              ClosedForm::log1p(std::polar(1.0, -pi6)) -
                                              ClosedForm::log1p(i) - ClosedForm::log1p(-i));
    const ClosedForm at = ClosedForm::atan_shift(2.0, s3);
    const cplx third_pi{std::numbers::pi / 3.0};
    f8.h_closed = quad_log + at - third_pi;
    f8.g_closed = (-1.0) * quad_log + at - third_pi;

    HarmonicMap f9 = convolve(f7, f8);
    f9.label = "f9";
    const ClosedForm quads = (one + s3 * Z + Z * Z) * (one + Z * Z);
    f9.h_closed = 0.5 * (Z / quads + quad_log + at - third_pi);
    f9.g_closed = 0.5 * ((-1.0) * (Z * Z * Z) / quads + (-1.0) * quad_log + at - third_pi);
    return {f7, f8, f9};
}

inline ExampleMaps example_maps(int index, int order = kDefaultOrder) {
    switch (index) {
        case 1: return example1(order);
        case 2: return example2(order);
        case 3: return example3(order);
        default: throw ParamOutOfRange("example index must be 1, 2 or 3");
    }
}

/// End-to-end theorem harness for one example family, run at certificate
/// quality regardless of the order used for the returned maps.
inline HarnessReport example_harness(int index, const GridSpec& grid,
                                     int order = kCertificateOrder) {
    switch (index) {
        case 1: {
            CombinationSpec spec;
            spec.lambda1 = spec.lambda2 = 1.0;
            spec.phi = spec.psi = c1_phi(0.5, -1.0, std::numbers::pi / 2.0, order);
            spec.omega1 = Series::monomial(1, 1.0);
            spec.omega2 = Series::monomial(2, -1.0);
            spec.t = 0.5;
            return harness_combination(spec, grid);
        }
        case 2: {
            CombinationSpec spec;
            spec.lambda1 = spec.lambda2 = -1.0;
            spec.phi = spec.psi = c2_phi(0.5, -2.0, order);
            spec.omega1 = Series::constant(0.5);
            spec.omega2 = Series::monomial(1, -1.0);
            spec.t = 1.0 / 3.0;
            return harness_combination(spec, grid);
        }
        case 3:
            return harness_convolution(ConvolutionTarget::Kernel, std::numbers::pi / 6.0,
                                       -std::numbers::pi / 6.0, 1.0, 1.0,
                                       Series::monomial(1, -1.0), Series::monomial(2, 1.0), grid,
                                       order);
        default: throw ParamOutOfRange("example index must be 1, 2 or 3");
    }
}

namespace detail {

inline double dilatation_residual(const HarmonicMap& f, const Series& target, int through_order) {
    const Series w = dilatation(f);
    double m = 0.0;
    for (int k = 0; k <= std::min(through_order, w.order()); ++k)
        m = std::max(m, std::abs(w.coeff(k) - target.coeff(k)));
    return m;
}

inline double twin_residual(const HarmonicMap& f) {
    if (!f.h_closed || !f.g_closed) return std::numeric_limits<double>::infinity();
    return std::max(max_coeff_distance(f.h, f.h_closed->to_series(f.h.order())),
                    max_coeff_distance(f.g, f.g_closed->to_series(f.g.order())));
}

inline Series z_times_derivative(const Series& a) {
    std::vector<cplx> c(static_cast<std::size_t>(a.order()) + 1);
    for (int n = 0; n <= a.order(); ++n)
        c[static_cast<std::size_t>(n)] = static_cast<double>(n) * a.coeff(n);
    return Series(std::move(c));
}

}  // namespace detail

/// Identity checks tying one example family to its printed closed forms:
/// dilatation recoveries, shared-target residuals, closed-form twin
/// agreement, and (for the convolution family) the Hadamard identities
/// H = (h8 + z h8')/2, G = (g8 - z g8')/2.
inline std::vector<HypothesisCheck> example_checks(int index, const ExampleMaps& maps) {
    std::vector<HypothesisCheck> checks;
    const int N = maps.m1.h.order();
    // The dilatation identities are verified over the default-order window no
    // matter how far the maps were expanded: the division recurrences are
    // sequential, so the leading quotient coefficients are identical either
    // way, while rounding in the higher coefficients accumulates with the
    // index and would only measure the arithmetic, not the construction.
    const int window = std::min(N, kDefaultOrder);
    const auto twin = [&](const HarmonicMap& f) {
        checks.push_back(detail::residual_check("closed_form_twin_" + f.label,
                                                detail::twin_residual(f), 1e-9));
    };
    switch (index) {
        case 1: {
            const Series phi = c1_phi(0.5, -1.0, std::numbers::pi / 2.0, N);
            checks.push_back(detail::residual_check(
                "dilatation_f1_is_z",
                detail::dilatation_residual(maps.m1, Series::monomial(1, 1.0), window - 2), 1e-10));
            checks.push_back(detail::residual_check(
                "dilatation_f2_is_-z^2",
                detail::dilatation_residual(maps.m2, Series::monomial(2, -1.0), window - 2),
                1e-10));
            checks.push_back(detail::residual_check(
                "shared_target_f1",
                max_coeff_distance(linear_combine(maps.m1.h, maps.m1.g, 1.0, 1.0), phi), 1e-12));
            checks.push_back(detail::residual_check(
                "shared_target_f2",
                max_coeff_distance(linear_combine(maps.m2.h, maps.m2.g, 1.0, 1.0), phi), 1e-12));
            break;
        }
        case 2: {
            // the target here has a boundary double root, so the dilatation
            // division is a decade worse conditioned than in the other families
            const Series phi = c2_phi(0.5, -2.0, N);
            checks.push_back(detail::residual_check(
                "dilatation_f4_is_1/2",
                detail::dilatation_residual(maps.m1, Series::constant(0.5), window - 2), 1e-9));
            checks.push_back(detail::residual_check(
                "dilatation_f5_is_-z",
                detail::dilatation_residual(maps.m2, Series::monomial(1, -1.0), window - 2), 1e-9));
            checks.push_back(detail::residual_check(
                "shared_target_f4",
                max_coeff_distance(linear_combine(maps.m1.h, maps.m1.g, 1.0, -1.0), phi), 1e-12));
            checks.push_back(detail::residual_check(
                "shared_target_f5",
                max_coeff_distance(linear_combine(maps.m2.h, maps.m2.g, 1.0, -1.0), phi), 1e-12));
            break;
        }
        case 3: {
            checks.push_back(detail::residual_check(
                "dilatation_f9_is_-z^2",
                detail::dilatation_residual(maps.m3, Series::monomial(2, -1.0), window - 4),
                1e-10));
            const Series h8 = maps.m2.h, g8 = maps.m2.g;
            checks.push_back(detail::residual_check(
                "hadamard_H_is_(h8+zh8')/2",
                max_coeff_distance(maps.m3.h, linear_combine(h8, detail::z_times_derivative(h8),
                                                             0.5, 0.5)),
                1e-11));
            checks.push_back(detail::residual_check(
                "hadamard_G_is_(g8-zg8')/2",
                max_coeff_distance(maps.m3.g, linear_combine(g8, detail::z_times_derivative(g8),
                                                             0.5, -0.5)),
                1e-11));
            break;
        }
        default: throw ParamOutOfRange("example index must be 1, 2 or 3");
    }
    twin(maps.m1);
    twin(maps.m2);
    twin(maps.m3);
    return checks;
}

}  // namespace harmap
