#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "harmap/gallery.hpp"
#include "harmap/report.hpp"
#include "test_util.hpp"

using namespace harmap;
using testutil::random_in_disk;

namespace {

constexpr double kPi = std::numbers::pi;

GridSpec fast_grid() {
    GridSpec g;
    g.radial_count = 16;
    g.angle_count = 128;
    g.mu_count = 90;
    g.nu_count = 45;
    return g;
}

double pointwise_twin_error(const HarmonicMap& f, std::mt19937_64& rng, double r, int samples) {
    const Series hs = f.h_closed->to_series(f.h.order());
    const Series gs = f.g_closed->to_series(f.g.order());
    double m = 0.0;
    for (int k = 0; k < samples; ++k) {
        const cplx z = random_in_disk(rng, r);
        m = std::max(m, std::abs(eval(f.h, z) - eval(hs, z)));
        m = std::max(m, std::abs(eval(f.g, z) - eval(gs, z)));
    }
    return m;
}

double exact_twin_error(const HarmonicMap& f, std::mt19937_64& rng, double r, int samples) {
    double m = 0.0;
    for (int k = 0; k < samples; ++k) {
        const cplx z = random_in_disk(rng, r);
        m = std::max(m, std::abs(eval(f.h, z) - f.h_closed->eval(z)));
        m = std::max(m, std::abs(eval(f.g, z) - f.g_closed->eval(z)));
    }
    return m;
}

}  // namespace

TEST_CASE("first example family") {
    const ExampleMaps ex = example1();
    SECTION("head coefficients of h1") {
        REQUIRE(std::abs(ex.m1.h.coeff(1) - 1.0) <= 1e-14);
        REQUIRE(std::abs(ex.m1.h.coeff(2)) <= 1e-14);
        REQUIRE(std::abs(ex.m1.h.coeff(3) - 1.0 / 3.0) <= 1e-14);
    }
    SECTION("identity checks all pass") {
        for (const HypothesisCheck& c : example_checks(1, ex)) {
            INFO(c.name << " = " << c.value);
            REQUIRE(c.passed);
        }
    }
    SECTION("series and closed forms agree, truncation-matched at r <= 0.9") {
        std::mt19937_64 rng(73);
        REQUIRE(pointwise_twin_error(ex.m1, rng, 0.9, 200) <= 1e-9);
        REQUIRE(pointwise_twin_error(ex.m2, rng, 0.9, 200) <= 1e-9);
        REQUIRE(pointwise_twin_error(ex.m3, rng, 0.9, 200) <= 1e-9);
    }
    SECTION("series track the exact closed forms strictly inside the disk") {
        std::mt19937_64 rng(79);
        REQUIRE(exact_twin_error(ex.m1, rng, 0.7, 200) <= 1e-9);
        REQUIRE(exact_twin_error(ex.m2, rng, 0.7, 200) <= 1e-9);
    }
    SECTION("map evaluation against the closed forms at z = 1/2") {
        const cplx z{0.5, 0.0};
        const cplx expect = ex.m1.h_closed->eval(z) + std::conj(ex.m1.g_closed->eval(z));
        REQUIRE(std::abs(eval_map(ex.m1, z) - expect) <= 1e-9);
    }
    SECTION("dilatation identity for the shared-class pair (lambda = -1 convention)") {
        std::mt19937_64 rng(83);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        REQUIRE(combination_dilatation_residual(ex.m1, ex.m2, -1.0, 0.5, cplx{0.3, 0.2}) <= 1e-10);
        for (int k = 0; k < 10; ++k)
            REQUIRE(combination_dilatation_residual(ex.m1, ex.m2, -1.0, u(rng),
                                                    random_in_disk(rng, 0.9)) <= 1e-10);
    }
}

TEST_CASE("second example family") {
    const ExampleMaps ex = example2();
    SECTION("f4 sits outside the normalized class by construction") {
        REQUIRE_FALSE(ex.m1.is_normalized());
        REQUIRE(std::abs(ex.m1.h.coeff(1) - 2.0) <= 1e-12);
        REQUIRE(std::abs(ex.m1.g.coeff(1) - 1.0) <= 1e-12);
        REQUIRE(ex.m2.is_normalized());
    }
    SECTION("identity checks all pass") {
        for (const HypothesisCheck& c : example_checks(2, ex)) {
            INFO(c.name << " = " << c.value);
            REQUIRE(c.passed);
        }
    }
    SECTION("truncation-matched twin agreement at r <= 0.9") {
        std::mt19937_64 rng(89);
        REQUIRE(pointwise_twin_error(ex.m1, rng, 0.9, 200) <= 1e-9);
        REQUIRE(pointwise_twin_error(ex.m2, rng, 0.9, 200) <= 1e-9);
        REQUIRE(pointwise_twin_error(ex.m3, rng, 0.9, 200) <= 1e-9);
    }
    SECTION("dilatation identity for the pair (lambda = +1 convention)") {
        std::mt19937_64 rng(97);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int k = 0; k < 10; ++k)
            REQUIRE(combination_dilatation_residual(ex.m1, ex.m2, 1.0, u(rng),
                                                    random_in_disk(rng, 0.9)) <= 1e-10);
    }
}

TEST_CASE("third example family") {
    const ExampleMaps ex = example3();
    SECTION("identity checks all pass") {
        for (const HypothesisCheck& c : example_checks(3, ex)) {
            INFO(c.name << " = " << c.value);
            REQUIRE(c.passed);
        }
    }
    SECTION("convolution dilatation is -z^2") {
        const Series w = dilatation(ex.m3);
        double m = 0.0;
        for (int k = 0; k <= ex.m3.h.order() - 4; ++k)
            m = std::max(m, std::abs(w.coeff(k) - Series::monomial(2, -1.0, 2).coeff(k)));
        REQUIRE(m <= 1e-10);
    }
    SECTION("twin agreement") {
        std::mt19937_64 rng(101);
        REQUIRE(pointwise_twin_error(ex.m1, rng, 0.9, 200) <= 1e-9);
        REQUIRE(pointwise_twin_error(ex.m2, rng, 0.9, 200) <= 1e-9);
        REQUIRE(pointwise_twin_error(ex.m3, rng, 0.9, 200) <= 1e-9);
        REQUIRE(exact_twin_error(ex.m2, rng, 0.7, 200) <= 1e-9);
        REQUIRE(exact_twin_error(ex.m3, rng, 0.7, 200) <= 1e-9);
    }
}

TEST_CASE("combination harness: shared-class paths") {
    SECTION("imaginary-direction path passes on the c1 member") {
        CombinationSpec spec;
        spec.lambda1 = spec.lambda2 = 1.0;
        spec.phi = spec.psi = c1_phi(0.5, 0.0, kPi / 2.0, kCertificateOrder);
        spec.omega1 = Series::monomial(1, 1.0);
        spec.omega2 = Series::monomial(2, -1.0);
        spec.t = 0.5;
        const HarnessReport r = harness_combination(spec, fast_grid());
        REQUIRE(r.theorem_id == "combine.shared-class");
        REQUIRE(r.conclusion.has_value());
        REQUIRE(r.passed);
    }
    SECTION("degenerate endpoint weight") {
        CombinationSpec spec;
        spec.lambda1 = spec.lambda2 = 1.0;
        spec.phi = spec.psi = c1_phi(0.5, 0.0, kPi / 2.0, kCertificateOrder);
        spec.omega1 = Series::monomial(1, 1.0);
        spec.omega2 = Series::monomial(2, -1.0);
        spec.t = 1.0;
        REQUIRE(harness_combination(spec, fast_grid()).passed);
    }
    SECTION("example harnesses pass end to end") {
        REQUIRE(example_harness(1, fast_grid()).passed);
        REQUIRE(example_harness(2, fast_grid()).passed);
        REQUIRE(example_harness(3, fast_grid()).passed);
    }
    SECTION("harness reports are deterministic") {
        const auto a = to_json(example_harness(3, fast_grid())).dump();
        const auto b = to_json(example_harness(3, fast_grid())).dump();
        REQUIRE(a == b);
    }
    SECTION("generic unimodular class parameter targets -arg(lambda)/2") {
        // the half-plane image is convex in every direction, so the reduced
        // search must succeed for any lambda
        CombinationSpec spec;
        spec.lambda1 = spec.lambda2 = std::polar(1.0, kPi / 3.0);
        spec.phi = spec.psi = halfplane(kCertificateOrder);
        spec.omega1 = Series::monomial(1, 0.5);
        spec.omega2 = Series::zero(0);
        spec.t = 0.25;
        const HarnessReport r = harness_combination(spec, fast_grid());
        REQUIRE(r.theorem_id == "combine.shared-class");
        REQUIRE(r.passed);
    }
}

TEST_CASE("combination harness: two-targets path") {
    CombinationSpec spec;
    spec.lambda1 = spec.lambda2 = 1.0;
    spec.phi = c1_phi(0.5, 0.0, kPi / 2.0, kCertificateOrder);
    spec.psi = c1_phi(0.5 + 1e-6, 0.0, kPi / 2.0, kCertificateOrder);  // distinct target, same geometry
    spec.omega1 = spec.omega2 = Series::monomial(1, 1.0);
    spec.t = 0.5;
    const HarnessReport r = harness_combination(spec, fast_grid());
    REQUIRE(r.theorem_id == "combine.two-targets");
    bool found_hypothesis = false;
    for (const HypothesisCheck& h : r.hypotheses)
        if (h.name.find("w1.cw2") != std::string::npos) {
            found_hypothesis = true;
            // equal dilatations: the quantity is (1-|w|^2) |h'|^2 / ... > 0
            REQUIRE(h.value > 0.0);
        }
    REQUIRE(found_hypothesis);
    REQUIRE(r.passed);
}

TEST_CASE("combination harness: mixed-class path") {
    const double t1 = kPi / 6.0, t2 = -kPi / 6.0;
    CombinationSpec spec;
    spec.lambda1 = 1.0;
    spec.lambda2 = -1.0;
    spec.phi = spec.psi = kernel_phi(t1, t2, kCertificateOrder);
    spec.omega1 = Series::zero(0);
    spec.omega2 = Series::zero(0);
    spec.t = 0.4;
    spec.kernel_thetas = {{t1, t2}};
    SECTION("passes with trivial dilatations") {
        const HarnessReport r = harness_combination(spec, fast_grid());
        REQUIRE(r.theorem_id == "combine.mixed-class");
        REQUIRE(r.conclusion.has_value());
        REQUIRE(r.conclusion->kind == CertificateKind::Kernel);
        REQUIRE(std::abs(r.conclusion->min_value - 1.0) <= 1e-9);
        REQUIRE(r.passed);
    }
    SECTION("swapped classes normalize to the same harness") {
        CombinationSpec swapped = spec;
        std::swap(swapped.lambda1, swapped.lambda2);
        swapped.t = 1.0 - spec.t;
        const HarnessReport a = harness_combination(spec, fast_grid());
        const HarnessReport b = harness_combination(swapped, fast_grid());
        REQUIRE(a.theorem_id == b.theorem_id);
        REQUIRE(a.passed == b.passed);
        REQUIRE(std::abs(a.conclusion->min_value - b.conclusion->min_value) <= 1e-12);
    }
    SECTION("kernel angles are required") {
        CombinationSpec bare = spec;
        bare.kernel_thetas.reset();
        REQUIRE_THROWS_AS(harness_combination(bare, fast_grid()), SpecAmbiguous);
    }
    SECTION("ambiguous class data is rejected") {
        CombinationSpec bad = spec;
        bad.lambda1 = cplx{0.0, 1.0};
        REQUIRE_THROWS_AS(harness_combination(bad, fast_grid()), SpecAmbiguous);
        CombinationSpec bad2 = spec;
        bad2.psi = halflog(bad2.phi.order());
        REQUIRE_THROWS_AS(harness_combination(bad2, fast_grid()), SpecAmbiguous);
    }
}

TEST_CASE("convolution harness") {
    const double t1 = kPi / 6.0, t2 = -kPi / 6.0;
    SECTION("kernel target on the third example data") {
        const HarnessReport r =
            harness_convolution(ConvolutionTarget::Kernel, t1, t2, 1.0, 1.0,
                                Series::monomial(1, -1.0), Series::monomial(2, 1.0), fast_grid());
        REQUIRE(r.theorem_id == "convolve.kernel");
        REQUIRE(r.conclusion.has_value());
        REQUIRE(r.conclusion->kind == CertificateKind::Kernel);
        REQUIRE(r.passed);
    }
    SECTION("kernel target with an analytic second factor") {
        const HarnessReport r =
            harness_convolution(ConvolutionTarget::Kernel, t1, t2, 1.0, 1.0,
                                Series::monomial(1, -1.0), Series::zero(0), fast_grid());
        REQUIRE(r.passed);
    }
    SECTION("half-log target") {
        const HarnessReport r =
            harness_convolution(ConvolutionTarget::HalfLog, 0.0, 0.0, -1.0, 1.0,
                                Series::monomial(1, 1.0), Series::monomial(1, -1.0), fast_grid());
        REQUIRE(r.theorem_id == "convolve.halflog");
        REQUIRE(r.conclusion.has_value());
        REQUIRE(r.conclusion->kind == CertificateKind::RoysterZiegler);
        REQUIRE(std::abs(r.conclusion->mu - kPi / 2.0) <= 1e-15);
        REQUIRE(std::abs(r.conclusion->nu - kPi / 2.0) <= 1e-15);
        REQUIRE(r.passed);
    }
    SECTION("class patterns are enforced") {
        REQUIRE_THROWS_AS(harness_convolution(ConvolutionTarget::Kernel, t1, t2, 1.0, -1.0,
                                              Series::zero(0), Series::zero(0), fast_grid()),
                          SpecAmbiguous);
        REQUIRE_THROWS_AS(harness_convolution(ConvolutionTarget::HalfLog, 0.0, 0.0, 1.0, 1.0,
                                              Series::zero(0), Series::zero(0), fast_grid()),
                          SpecAmbiguous);
    }
}

TEST_CASE("shared-target residuals across the gallery") {
    const ExampleMaps e1 = example1();
    const Series phi1 = c1_phi(0.5, -1.0, kPi / 2.0, e1.m1.h.order());
    REQUIRE(max_coeff_distance(linear_combine(e1.m1.h, e1.m1.g, 1.0, 1.0), phi1) <= 1e-12);
    REQUIRE(max_coeff_distance(linear_combine(e1.m2.h, e1.m2.g, 1.0, 1.0), phi1) <= 1e-12);
}
