#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "harmap/errors.hpp"
#include "harmap/grid.hpp"
#include "harmap/series.hpp"

namespace harmap {

/// Positivity slack for certificate acceptance. The certified inequalities
/// are ">= 0" on an open disk and can graze zero at algebraic-equality
/// points, so a sampled minimum down to -kPositivityMargin still passes.
inline constexpr double kPositivityMargin = 1e-9;

/// Working order for series that feed the disk functionals. The default grid
/// samples up to r = 0.99, where an order-N truncation contributes an error
/// of roughly N^2 * 0.99^N for the steepest coefficient growth in this
/// domain; 4096 keeps that below 1e-8, two decades under the smallest
/// certified margins, while every construction here stays O(N^2) or better.
inline constexpr int kCertificateOrder = 4096;

enum class CertificateKind { RoysterZiegler, Kernel };

/// A found witness for a direction-convexity criterion: the parameter pair
/// that worked, the sampled minimum of the criterion functional, and the
/// grid it was sampled on. (mu, nu) is meaningful for RoysterZiegler,
/// (theta1, theta2) for Kernel; the unused pair stays zero.
struct Certificate {
    CertificateKind kind = CertificateKind::RoysterZiegler;
    double mu = 0.0;
    double nu = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double min_value = 0.0;
    GridSpec grid;
    bool refined = false;
};

/// Royster-Ziegler functional
///   Re(-i e^{i mu} (1 - 2 z e^{-i mu} cos nu + z^2 e^{-2i mu}) phi'(z)).
/// Nonnegativity over the disk for some (mu, nu) characterizes univalent
/// convexity in the imaginary direction.
inline double rz_functional(const Series& phi, double mu, double nu, cplx z,
                            double r_max = kDefaultEvalRadius) {
    const cplx w = eval(derive(phi), z, r_max);
    const cplx emi = std::polar(1.0, -mu);
    const cplx q = 1.0 - 2.0 * std::cos(nu) * emi * z + emi * emi * z * z;
    return (cplx{0.0, -1.0} * std::polar(1.0, mu) * q * w).real();
}

namespace detail {

/// Disk samples with phi'(z) precomputed, stored componentwise so the
/// candidate sweep stays a tight scalar loop.
struct RzCache {
    std::vector<double> zr, zi, z2r, z2i, wr, wi;
};

inline RzCache make_rz_cache(const Series& phi, const GridSpec& grid) {
    const Series dphi = derive(phi);
    RzCache c;
    const std::vector<cplx> pts = disk_points(grid);
    c.zr.reserve(pts.size());
    for (const cplx z : pts) {
        const cplx w = eval(dphi, z);
        c.zr.push_back(z.real());
        c.zi.push_back(z.imag());
        c.z2r.push_back(z.real() * z.real() - z.imag() * z.imag());
        c.z2i.push_back(2.0 * z.real() * z.imag());
        c.wr.push_back(w.real());
        c.wi.push_back(w.imag());
    }
    return c;
}

/// min over the cached disk of the functional at one (mu, nu).
inline double rz_candidate_min(const RzCache& c, double mu, double nu) {
    const cplx A = -2.0 * std::cos(nu) * std::polar(1.0, -mu);
    const cplx B = std::polar(1.0, -2.0 * mu);
    const cplx C = cplx{0.0, -1.0} * std::polar(1.0, mu);
    const double ar = A.real(), ai = A.imag(), br = B.real(), bi = B.imag();
    const double cr = C.real(), ci = C.imag();
    double m = std::numeric_limits<double>::infinity();
    const std::size_t n = c.zr.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double qr = 1.0 + ar * c.zr[k] - ai * c.zi[k] + br * c.z2r[k] - bi * c.z2i[k];
        const double qi = ar * c.zi[k] + ai * c.zr[k] + br * c.z2i[k] + bi * c.z2r[k];
        const double tr = cr * qr - ci * qi;
        const double ti = cr * qi + ci * qr;
        const double v = tr * c.wr[k] - ti * c.wi[k];
        if (v < m) m = v;
    }
    return m;
}

}  // namespace detail

/// Full scan record; find_rz_certificate keeps only the refined outcome, the
/// negative-control tests also need the coarse sweep's best value (the max
/// over all candidates of the per-candidate disk minimum).
struct RzScan {
    double coarse_mu = 0.0, coarse_nu = 0.0;
    double coarse_min = -std::numeric_limits<double>::infinity();
    double refined_mu = 0.0, refined_nu = 0.0;
    double refined_min = -std::numeric_limits<double>::infinity();
};

/// Sweep the (mu, nu) certificate grid, then refine at x10 resolution over
/// +-1 coarse cell around the best candidate. The refinement runs even when
/// the coarse best is negative: the disk minimum can be steep in nu near the
/// boundary radii, so true certificates are routinely invisible at coarse
/// resolution. The refined grid is rational in pi (nu = j*pi/(10*(nu_count-1))),
/// so exact certificate angles like pi/2 are hit exactly.
inline RzScan rz_certificate_scan(const Series& phi, const GridSpec& grid) {
    validate(grid);
    const detail::RzCache cache = detail::make_rz_cache(phi, grid);
    RzScan scan;
    const int mu_n = grid.mu_count, nu_n = grid.nu_count;
    int best_i = 0, best_j = 0;
    for (int i = 0; i < mu_n; ++i) {
        const double mu = 2.0 * std::numbers::pi * i / mu_n;
        for (int j = 0; j < nu_n; ++j) {
            const double nu = std::numbers::pi * j / (nu_n - 1);
            const double v = detail::rz_candidate_min(cache, mu, nu);
            if (v > scan.coarse_min) {
                scan.coarse_min = v;
                scan.coarse_mu = mu;
                scan.coarse_nu = nu;
                best_i = i;
                best_j = j;
            }
        }
    }
    for (int di = -10; di <= 10; ++di) {
        const long ii = ((10L * best_i + di) % (10L * mu_n) + 10L * mu_n) % (10L * mu_n);
        const double mu = 2.0 * std::numbers::pi * ii / (10.0 * mu_n);
        for (int dj = -10; dj <= 10; ++dj) {
            const long jj = 10L * best_j + dj;
            if (jj < 0 || jj > 10L * (nu_n - 1)) continue;
            const double nu = std::numbers::pi * jj / (10.0 * (nu_n - 1));
            const double v = detail::rz_candidate_min(cache, mu, nu);
            if (v > scan.refined_min) {
                scan.refined_min = v;
                scan.refined_mu = mu;
                scan.refined_nu = nu;
            }
        }
    }
    return scan;
}

/// Search for a Royster-Ziegler witness that phi maps the disk onto a domain
/// convex in the imaginary direction. Absence is a value, not an error, and
/// means "no certificate at this resolution" -- the criterion's converse
/// direction is not decidable from finitely many samples.
inline std::optional<Certificate> find_rz_certificate(const Series& phi, const GridSpec& grid) {
    const RzScan scan = rz_certificate_scan(phi, grid);
    if (scan.refined_min < -kPositivityMargin) return std::nullopt;
    Certificate cert;
    cert.kind = CertificateKind::RoysterZiegler;
    cert.mu = scan.refined_mu;
    cert.nu = scan.refined_nu;
    cert.min_value = scan.refined_min;
    cert.grid = grid;
    cert.refined = true;
    return cert;
}

/// Convexity in direction gamma, reduced to the imaginary-direction search
/// applied to e^{i(pi/2 - gamma)} * phi (rotating the image turns
/// direction-gamma lines into vertical ones). gamma = 0 tests convexity in
/// the real direction, gamma = pi/2 in the imaginary direction. The returned
/// (mu, nu) refer to the rotated frame.
inline std::optional<Certificate> convex_in_direction(const Series& phi, double gamma,
                                                      const GridSpec& grid) {
    const cplx rot = std::polar(1.0, std::numbers::pi / 2.0 - gamma);
    return find_rz_certificate(scale(phi, rot), grid);
}

/// min over the grid of Re(z F'(z) / kappa(z)) with
/// kappa(z) = z / ((1 + z e^{i th1})(1 + z e^{i th2})); z/kappa is the plain
/// quadratic, so the functional is Re(F'(z) (1+z e^{i th1})(1+z e^{i th2}))
/// and the z = 0 limit Re(F'(0)) joins the samples analytically.
/// A positive minimum is sampled evidence that F is convex in the real
/// direction.
inline double kernel_criterion(const Series& F, double theta1, double theta2,
                               const GridSpec& grid) {
    validate(grid);
    const Series dF = derive(F);
    const cplx e1 = std::polar(1.0, theta1), e2 = std::polar(1.0, theta2);
    double m = dF.coeff(0).real();
    for (const cplx z : disk_points(grid)) {
        const cplx v = eval(dF, z) * (1.0 + z * e1) * (1.0 + z * e2);
        m = std::min(m, v.real());
    }
    return m;
}

/// min over the grid of Re p(z) for p in the Herglotz normalization p(0)=1.
inline double herglotz_min(const Series& p, const GridSpec& grid) {
    validate(grid);
    if (std::abs(p.coeff(0) - 1.0) > 1e-12) throw NotNormalizedP();
    double m = std::numeric_limits<double>::infinity();
    for (const cplx z : disk_points(grid)) m = std::min(m, eval(p, z).real());
    return m;
}

/// min over the grid of Re((psi(z) F(z) * xi(z)) / (psi(z) * xi(z))), the
/// Hadamard quotient behind the convolution positivity property. Requires
/// psi(0) = xi(0) = 0; the removable point z = 0 contributes its limit
/// Re(F(0)).
inline double convolution_positivity_min(const Series& psi, const Series& xi, const Series& F,
                                         const GridSpec& grid) {
    validate(grid);
    if (std::abs(psi.coeff(0)) > 1e-12 || std::abs(xi.coeff(0)) > 1e-12)
        throw std::invalid_argument("convolution positivity needs psi(0) = xi(0) = 0");
    const Series num = hadamard(cauchy_product(psi, F), xi);
    const Series den = hadamard(psi, xi);
    double m = F.coeff(0).real();
    for (const cplx z : disk_points(grid)) {
        const cplx d = eval(den, z);
        if (std::abs(d) < 1e-12) throw DegenerateDenominator();
        m = std::min(m, (eval(num, z) / d).real());
    }
    return m;
}

}  // namespace harmap
