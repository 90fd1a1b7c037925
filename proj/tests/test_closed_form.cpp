#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "harmap/closed_form.hpp"
#include "test_util.hpp"

using namespace harmap;
using testutil::moebius_herglotz;
using testutil::random_in_disk;

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
}  // namespace

TEST_CASE("closed-form evaluation") {
    SECTION("z/(1-z) at 1/2") {
        REQUIRE(std::abs(halfplane_cf().eval(0.5) - 1.0) < 1e-15);
    }
    SECTION("half-log vanishes at 0") {
        REQUIRE(std::abs(halflog_cf().eval(0.0)) < 1e-15);
    }
    SECTION("2 arctan(2z + sqrt(3)) - 2pi/3 vanishes at 0") {
        const ClosedForm phi =
            2.0 * ClosedForm::atan_shift(2.0, std::sqrt(3.0)) - cplx{2.0 * kPi / 3.0};
        REQUIRE(std::abs(phi.eval(0.0)) < 1e-15);
    }
    SECTION("domain is the open disk") {
        REQUIRE_THROWS_AS(halfplane_cf().eval(cplx{1.0, 0.0}), OutsideDisk);
        REQUIRE_THROWS_AS(halfplane_cf().eval(cplx{0.8, 0.8}), OutsideDisk);
    }
    SECTION("pole detection") {
        const ClosedForm inv_z = ClosedForm::constant(1.0) / ClosedForm::variable();
        REQUIRE_THROWS_AS(inv_z.eval(0.0), PoleHit);
        REQUIRE_THROWS_AS(inv_z.to_series(8), PoleHit);
        REQUIRE_THROWS_AS(ClosedForm::ipow(ClosedForm::variable(), -1).to_series(8), PoleHit);
    }
    SECTION("log factor magnitude is validated") {
        REQUIRE_THROWS_AS(ClosedForm::log1p(cplx{1.5}), ParamOutOfRange);
        REQUIRE_THROWS_AS(ClosedForm::atan_shift(3.0, 1.0), ParamOutOfRange);
        REQUIRE_NOTHROW(ClosedForm::atan_shift(2.0, std::sqrt(3.0)));
    }
}

TEST_CASE("taylor expansion of closed forms") {
    SECTION("log(1+z)") {
        const Series s = ClosedForm::log1p(1.0).to_series(12);
        for (int n = 1; n <= 12; ++n) {
            const double expect = (n % 2 == 1 ? 1.0 : -1.0) / n;
            REQUIRE(std::abs(s.coeff(n) - expect) < 1e-15);
        }
    }
    SECTION("z/(1-z)^2 expands to sum n z^n") {
        const Series s = koebe_cf().to_series(24);
        REQUIRE(max_coeff_distance(s, koebe(24)) < 1e-12);
    }
    SECTION("named builders match their closed forms") {
        REQUIRE(max_coeff_distance(halfplane_cf().to_series(32), halfplane(32)) < 1e-12);
        REQUIRE(max_coeff_distance(halflog_cf().to_series(32), halflog(32)) < 1e-12);
    }
}

TEST_CASE("kernel integral") {
    SECTION("theta1 = theta2 = pi gives z/(1-z)") {
        REQUIRE(max_coeff_distance(kernel_phi(kPi, kPi, 32), halfplane(32)) < 1e-12);
    }
    SECTION("(0, pi) gives the half-log") {
        REQUIRE(max_coeff_distance(kernel_phi(0.0, kPi, 32), halflog(32)) < 1e-12);
    }
    SECTION("(pi/6, -pi/6) matches 2 arctan(2z+sqrt(3)) - 2pi/3") {
        const ClosedForm phi =
            2.0 * ClosedForm::atan_shift(2.0, std::sqrt(3.0)) - cplx{2.0 * kPi / 3.0};
        REQUIRE(max_coeff_distance(kernel_phi(kPi / 6.0, -kPi / 6.0, 64), phi.to_series(64)) <
                1e-13);
    }
}

TEST_CASE("direction-convexity generators") {
    SECTION("civd at (pi/2, pi/2) with p = 1 integrates to the half-log") {
        const Series phi = civd_phi(kPi / 2.0, kPi / 2.0, Series::constant(1.0), 40);
        REQUIRE(max_coeff_distance(phi, halflog(40)) < 1e-13);
    }
    SECTION("civd recovers the c1 log branch") {
        // p = (1-z^2)/((1+z e^{i th})(1+z e^{-i th})) drives the gamma = 0 member
        const double th = 1.1;
        const int n = 48;
        std::vector<cplx> num(n + 1, cplx{}), den(n + 1, cplx{});
        num[0] = 1.0;
        num[2] = -1.0;
        den[0] = 1.0;
        den[1] = 2.0 * std::cos(th);
        den[2] = 1.0;
        const Series p = reciprocal_divide(Series(std::move(num)), Series(std::move(den)));
        const Series phi = civd_phi(kPi / 2.0, kPi / 2.0, p, n);
        REQUIRE(max_coeff_distance(phi, c1_phi(0.0, 0.0, th, n)) < 1e-12);
    }
    SECTION("civd recovers the c1 rational member") {
        // p = (1 + z^2)/(1 - z^2) drives gamma = 1, alpha = 0
        const int n = 48;
        std::vector<cplx> num(n + 1, cplx{}), den(n + 1, cplx{});
        num[0] = 1.0;
        num[2] = 1.0;
        den[0] = 1.0;
        den[2] = -1.0;
        const Series p = reciprocal_divide(Series(std::move(num)), Series(std::move(den)));
        const Series phi = civd_phi(kPi / 2.0, kPi / 2.0, p, n);
        REQUIRE(max_coeff_distance(phi, c1_phi(1.0, 0.0, 0.5, n)) < 1e-12);
    }
    SECTION("cdr at (0, pi/2) with p = 1 integrates to arctan") {
        const Series phi = cdr_phi(0.0, kPi / 2.0, Series::constant(1.0), 41);
        for (int k = 1; k <= 41; k += 2) {
            const double expect = ((k / 2) % 2 == 0 ? 1.0 : -1.0) / k;
            REQUIRE(std::abs(phi.coeff(k) - expect) < 1e-14);
        }
    }
    SECTION("cdr recovers the c2 half-log member") {
        const double beta = 0.7;
        const int n = 48;
        std::vector<cplx> num(n + 1, cplx{}), den(n + 1, cplx{});
        num[0] = 1.0;
        num[1] = beta;
        num[2] = 1.0;
        den[0] = 1.0;
        den[2] = -1.0;
        const Series q = reciprocal_divide(Series(std::move(num)), Series(std::move(den)));
        const Series phi = cdr_phi(0.0, std::acos(-beta / 2.0), q, n);
        REQUIRE(max_coeff_distance(phi, c2_phi(1.0, beta, n)) < 1e-12);
    }
    SECTION("cdr recovers the c2 rational member at beta = 0") {
        const int n = 48;
        std::vector<cplx> num(n + 1, cplx{}), den(n + 1, cplx{});
        num[0] = 1.0;
        num[2] = -1.0;
        den[0] = 1.0;
        den[2] = 1.0;
        const Series p = reciprocal_divide(Series(std::move(num)), Series(std::move(den)));
        const Series phi = cdr_phi(0.0, std::acos(0.0), p, n);
        REQUIRE(max_coeff_distance(phi, c2_phi(0.0, 0.0, n)) < 1e-12);
    }
    SECTION("class-P normalization is enforced") {
        REQUIRE_THROWS_AS(civd_phi(1.0, 1.0, Series::constant(2.0), 16), NotNormalizedP);
        REQUIRE_THROWS_AS(cdr_phi(0.0, 1.0, Series::constant(0.5), 16), NotNormalizedP);
    }
    SECTION("parameter ranges") {
        const Series p = Series::constant(1.0);
        REQUIRE_THROWS_AS(civd_phi(-0.1, 1.0, p, 16), ParamOutOfRange);
        REQUIRE_THROWS_AS(civd_phi(1.0, 3.5, p, 16), ParamOutOfRange);
        REQUIRE_THROWS_AS(cdr_phi(2.0, 1.0, p, 16), ParamOutOfRange);  // cos(mu) < 0
        REQUIRE_NOTHROW(cdr_phi(3.0 * kPi / 2.0, 1.0, p, 16));         // cos(mu) >= 0
    }
    SECTION("normalization phi(0) = 0, phi'(0) = 1 for random parameters") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const double mu = u(rng) * kPi, nu = u(rng) * kPi;
            const Series p = moebius_herglotz(random_in_disk(rng, 0.9), 32);
            const Series phi = civd_phi(mu, nu, p, 32);
            REQUIRE(std::abs(phi.coeff(0)) < 1e-15);
            REQUIRE(std::abs(phi.coeff(1) - 1.0) <= 1e-12);
            const Series phi2 = cdr_phi(std::acos(u(rng)), nu, p, 32);
            REQUIRE(std::abs(phi2.coeff(1) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("parametric family builders") {
    SECTION("c1 collapses") {
        const int n = 32;
        // gamma = 1, alpha = 0: z/(1-z^2), odd coefficients 1
        const Series a = c1_phi(1.0, 0.0, 1.0, n);
        for (int k = 1; k <= n; k += 2) REQUIRE(std::abs(a.coeff(k) - 1.0) < 1e-13);
        for (int k = 0; k <= n; k += 2) REQUIRE(std::abs(a.coeff(k)) < 1e-13);
        // gamma = 0, theta = pi/2: arctan-type odd series
        const Series b = c1_phi(0.0, 0.0, kPi / 2.0, n);
        for (int k = 1; k <= n; k += 2) {
            const double expect = ((k / 2) % 2 == 0 ? 1.0 : -1.0) / k;
            REQUIRE(std::abs(b.coeff(k) - expect) < 1e-13);
        }
    }
    SECTION("c2 collapses") {
        REQUIRE(max_coeff_distance(c2_phi(1.0, 0.3, 32), halflog(32)) < 1e-13);
        const Series b = c2_phi(0.0, 0.0, 32);  // z/(1+z^2)
        for (int k = 1; k <= 32; k += 2) {
            const double expect = ((k / 2) % 2 == 0 ? 1.0 : -1.0);
            REQUIRE(std::abs(b.coeff(k) - expect) < 1e-13);
        }
    }
    SECTION("range validation") {
        REQUIRE_THROWS_AS(c1_phi(1.1, 0.0, 1.0, 8), ParamOutOfRange);
        REQUIRE_THROWS_AS(c1_phi(0.5, -1.2, 1.0, 8), ParamOutOfRange);
        REQUIRE_THROWS_AS(c1_phi(0.5, 0.0, 0.0, 8), ParamOutOfRange);
        REQUIRE_THROWS_AS(c1_phi(0.5, 0.0, kPi, 8), ParamOutOfRange);
        REQUIRE_THROWS_AS(c2_phi(-0.1, 0.0, 8), ParamOutOfRange);
        REQUIRE_THROWS_AS(c2_phi(0.5, 2.1, 8), ParamOutOfRange);
    }
}

TEST_CASE("series truncations track the exact closed forms") {
    // Exact-evaluation comparison runs at |z| <= 0.7: the order-128 truncation
    // tail at 0.7 is < 1e-17 even for coefficient growth ~ n, so the 1e-9
    // budget tests the expansion itself, not the truncation.
    std::mt19937_64 rng(37);
    const ClosedForm forms[] = {halfplane_cf(), koebe_cf(), halflog_cf(),
                                ClosedForm::atan_shift(2.0, std::sqrt(3.0)),
                                ClosedForm::log1p(std::polar(1.0, 0.4))};
    for (const ClosedForm& e : forms) {
        const Series s = e.to_series(128);
        for (int k = 0; k < 200; ++k) {
            const cplx z = random_in_disk(rng, 0.7);
            REQUIRE(std::abs(eval(s, z) - e.eval(z)) <= 1e-9);
        }
    }
}

TEST_CASE("atan-shift branch continuity along radii") {
    const ClosedForm at = ClosedForm::atan_shift(2.0, std::sqrt(3.0));
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    for (int dir = 0; dir < 8; ++dir) {
        const double th = u(rng);
        const cplx e = std::polar(1.0, th);
        const int steps = 100;
        const double dt = 0.995 / steps;
        cplx prev = at.eval(0.0);
        for (int k = 1; k <= steps; ++k) {
            const cplx z = (k * dt) * e;
            const cplx cur = at.eval(z);
            const cplx mid = ((k - 0.5) * dt) * e;
            const cplx w = 2.0 * mid + std::sqrt(3.0);
            const double deriv_bound = std::abs(2.0 / (1.0 + w * w));
            REQUIRE(std::abs(cur - prev) <= 10.0 * deriv_bound * dt + 1e-9);
            prev = cur;
        }
    }
}
