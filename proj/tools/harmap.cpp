// harmap -- construct planar harmonic mappings by shearing, combine and
// convolve them, certify direction-convexity numerically, and render the
// disk images as figures.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "harmap/convexity.hpp"
#include "harmap/funcspec.hpp"
#include "harmap/gallery.hpp"
#include "harmap/render.hpp"
#include "harmap/report.hpp"

namespace {

using namespace harmap;

GridSpec parse_grid(const std::string& text) {
    GridSpec g = default_grid();
    if (text.empty()) return g;
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("--grid expects K,M (radii, angles)");
    g.radial_count = std::stoi(text.substr(0, comma));
    g.angle_count = std::stoi(text.substr(comma + 1));
    return g;
}

int emit(const Report& report) {
    std::fputs(render_report(report).c_str(), stdout);
    return report.passed ? 0 : 2;
}

int run_example(int index, const std::string& render_dir, int order, const std::string& grid_text) {
    const GridSpec grid = parse_grid(grid_text);
    const ExampleMaps maps = example_maps(index, order);
    const HarnessReport harness = example_harness(index, grid);

    Report report;
    report.command = "example";
    report.inputs = {{"example", index},
                     {"order", order},
                     {"render", render_dir.empty() ? ordered_json(nullptr) : ordered_json(render_dir)},
                     {"grid", to_json(grid)}};
    report.add_all(example_checks(index, maps));
    for (const HarmonicMap* m : {&maps.m1, &maps.m2, &maps.m3}) {
        const PolylineSet ring = disk_image(*m, 1, 0, 1024, 0.99);
        const bool simple = simple_curve_check(ring.curves.front().points);
        report.add({"simple_boundary_curve_" + m->label, simple ? 1.0 : 0.0, simple});
    }
    report.certificate = harness.conclusion;
    report.data["harness"] = to_json(harness);

    if (!render_dir.empty()) {
        std::filesystem::create_directories(render_dir);
        for (const HarmonicMap* m : {&maps.m1, &maps.m2, &maps.m3}) {
            const PolylineSet figure = disk_image(*m, 12, 24, 512, 0.99);
            const std::filesystem::path svg = std::filesystem::path(render_dir) / (m->label + ".svg");
            const std::filesystem::path csv = std::filesystem::path(render_dir) / (m->label + ".csv");
            emit_svg(figure, svg);
            emit_csv(figure, csv);
            report.artifacts.push_back(svg.string());
            report.artifacts.push_back(csv.string());
        }
    }

    report.passed = harness.passed;
    for (const CheckResult& c : report.results) report.passed = report.passed && c.passed;
    return emit(report);
}

int run_shear(const std::string& phi_text, const std::string& omega_text,
              const std::string& lambda_text, int order) {
    const PhiSpec phi = parse_phi_spec(phi_text, order);
    const Series omega = parse_omega_spec(omega_text, order);
    const cplx lambda = parse_complex(lambda_text);
    const HarmonicMap f = shear({phi.series, omega, lambda}, order, "f");

    Report report;
    report.command = "shear";
    report.inputs = {{"phi", phi_text}, {"omega", omega_text}, {"lambda", lambda_text}, {"order", order}};

    const double residual = max_coeff_distance(linear_combine(f.h, f.g, 1.0, lambda), phi.series);
    report.add({"shear_residual_h+lambda*g-phi", residual, residual <= 1e-13});
    const Series w = dilatation(f);
    double wres = 0.0;
    for (int k = 0; k <= w.order() - 2; ++k) wres = std::max(wres, std::abs(w.coeff(k) - omega.coeff(k)));
    report.add({"dilatation_recovery", wres, wres <= 1e-10});
    // margins are sampled to r = 0.9 here: at the default working order the
    // truncation carries no signal at the certificate grid's 0.99 rim
    GridSpec margin_grid = default_grid();
    margin_grid.max_radius = 0.9;
    const double margin = sense_preserving_margin(f, margin_grid);
    report.add({"sense_preserving_margin", margin, margin > 0.0});

    ordered_json coeffs = ordered_json::object();
    coeffs["h"] = ordered_json::array();
    coeffs["g"] = ordered_json::array();
    for (int k = 0; k <= std::min(8, f.h.order()); ++k) {
        coeffs["h"].push_back({f.h.coeff(k).real(), f.h.coeff(k).imag()});
        coeffs["g"].push_back({f.g.coeff(k).real(), f.g.coeff(k).imag()});
    }
    report.data = {{"leading_coefficients", coeffs}};

    report.passed = true;
    for (const CheckResult& c : report.results) report.passed = report.passed && c.passed;
    return emit(report);
}

int run_check(const std::string& phi_text, const std::string& direction, int order,
              const std::string& grid_text) {
    const GridSpec grid = parse_grid(grid_text);
    const PhiSpec phi = parse_phi_spec(phi_text, order);
    double gamma;
    if (direction == "real") gamma = 0.0;
    else if (direction == "imag") gamma = std::numbers::pi / 2.0;
    else gamma = parse_angle(direction);

    Report report;
    report.command = "check";
    report.inputs = {{"phi", phi_text}, {"direction", direction}, {"order", order}, {"grid", to_json(grid)}};
    report.certificate = convex_in_direction(phi.series, gamma, grid);
    report.add({"certificate_found", report.certificate ? 1.0 : 0.0,
                report.certificate.has_value(), report.certificate});
    if (!report.certificate)
        report.data = {{"note", "no certificate at this grid resolution"}};
    report.passed = report.certificate.has_value();
    return emit(report);
}

int run_combine(const std::string& phi1_text, const std::string& omega1_text,
                const std::string& lambda1_text, const std::string& phi2_text,
                const std::string& omega2_text, const std::string& lambda2_text, double t,
                int order, const std::string& grid_text) {
    const GridSpec grid = parse_grid(grid_text);
    const PhiSpec phi1 = parse_phi_spec(phi1_text, order);
    const PhiSpec phi2 = parse_phi_spec(phi2_text, order);

    CombinationSpec spec;
    spec.lambda1 = parse_complex(lambda1_text);
    spec.lambda2 = parse_complex(lambda2_text);
    spec.phi = phi1.series;
    spec.psi = phi2.series;
    spec.omega1 = parse_omega_spec(omega1_text, order);
    spec.omega2 = parse_omega_spec(omega2_text, order);
    spec.t = t;
    spec.kernel_thetas = phi1.kernel_thetas ? phi1.kernel_thetas : phi2.kernel_thetas;

    const HarnessReport harness = harness_combination(spec, grid);

    Report report;
    report.command = "combine";
    report.inputs = {{"phi1", phi1_text}, {"omega1", omega1_text}, {"lambda1", lambda1_text},
                     {"phi2", phi2_text}, {"omega2", omega2_text}, {"lambda2", lambda2_text},
                     {"t", t},            {"order", order},        {"grid", to_json(grid)}};
    report.add_all(harness.hypotheses);
    report.certificate = harness.conclusion;
    report.data["harness"] = to_json(harness);
    report.passed = harness.passed;
    return emit(report);
}

int run_convolve(const std::string& phi_text, const std::string& omega1_text,
                 const std::string& lambda1_text, const std::string& omega2_text,
                 const std::string& lambda2_text, int order, const std::string& grid_text) {
    const GridSpec grid = parse_grid(grid_text);
    const PhiSpec phi = parse_phi_spec(phi_text, order);
    ConvolutionTarget target;
    double t1 = 0.0, t2 = 0.0;
    if (phi.kernel_thetas) {
        target = ConvolutionTarget::Kernel;
        t1 = phi.kernel_thetas->first;
        t2 = phi.kernel_thetas->second;
    } else if (phi.name == "halflog") {
        target = ConvolutionTarget::HalfLog;
    } else {
        throw std::invalid_argument("convolve needs --phi kernel:T1,T2 or --phi halflog");
    }

    const HarnessReport harness =
        harness_convolution(target, t1, t2, parse_complex(lambda1_text),
                            parse_complex(lambda2_text), parse_omega_spec(omega1_text, order),
                            parse_omega_spec(omega2_text, order), grid, order);

    Report report;
    report.command = "convolve";
    report.inputs = {{"phi", phi_text},     {"omega1", omega1_text}, {"lambda1", lambda1_text},
                     {"omega2", omega2_text}, {"lambda2", lambda2_text}, {"order", order},
                     {"grid", to_json(grid)}};
    report.add_all(harness.hypotheses);
    report.certificate = harness.conclusion;
    report.data["harness"] = to_json(harness);
    report.passed = harness.passed;
    return emit(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic mapping construction and direction-convexity certificates"};
    app.require_subcommand(1);

    int ex_index = 1;
    std::string ex_render;
    int ex_order = 2048;
    std::string grid_text;

    CLI::App* ex = app.add_subcommand("example", "build a worked example, run its harness, render figures");
    ex->add_option("index", ex_index, "example index (1, 2 or 3)")->required()->check(CLI::Range(1, 3));
    ex->add_option("--render", ex_render, "directory for SVG/CSV figures");
    ex->add_option("--order", ex_order, "series truncation order");
    ex->add_option("--grid", grid_text, "disk grid as K,M (radii, angles)");

    std::string phi_text, omega_text, lambda_text = "1";
    int order = kDefaultOrder;
    CLI::App* sh = app.add_subcommand("shear", "construct one map and print its leading coefficients");
    sh->add_option("--phi", phi_text, "analytic target spec")->required();
    sh->add_option("--omega", omega_text, "dilatation spec")->required();
    sh->add_option("--lambda", lambda_text, "unimodular class parameter");
    sh->add_option("--order", order, "series truncation order");

    std::string direction;
    int cert_order = kCertificateOrder;
    CLI::App* ck = app.add_subcommand("check", "search for a direction-convexity certificate");
    ck->add_option("--phi", phi_text, "analytic target spec")->required();
    ck->add_option("--direction", direction, "real | imag | angle")->required();
    ck->add_option("--order", cert_order, "series truncation order");
    ck->add_option("--grid", grid_text, "disk grid as K,M");

    std::string phi2_text, omega2_text, lambda2_text = "1";
    double weight = 0.5;
    CLI::App* cb = app.add_subcommand("combine", "run the linear-combination harness on two sheared maps");
    cb->add_option("--phi1", phi_text)->required();
    cb->add_option("--omega1", omega_text)->required();
    cb->add_option("--lambda1", lambda_text);
    cb->add_option("--phi2", phi2_text)->required();
    cb->add_option("--omega2", omega2_text)->required();
    cb->add_option("--lambda2", lambda2_text);
    cb->add_option("--t", weight, "combination weight in [0,1]")->required();
    cb->add_option("--order", cert_order, "series truncation order");
    cb->add_option("--grid", grid_text, "disk grid as K,M");

    CLI::App* cv = app.add_subcommand("convolve", "run the convolution harness");
    cv->add_option("--phi", phi_text, "kernel:T1,T2 or halflog")->required();
    cv->add_option("--omega1", omega_text)->required();
    cv->add_option("--lambda1", lambda_text);
    cv->add_option("--omega2", omega2_text)->required();
    cv->add_option("--lambda2", lambda2_text);
    cv->add_option("--order", cert_order, "series truncation order");
    cv->add_option("--grid", grid_text, "disk grid as K,M");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (ex->parsed()) return run_example(ex_index, ex_render, ex_order, grid_text);
        if (sh->parsed()) return run_shear(phi_text, omega_text, lambda_text, order);
        if (ck->parsed()) return run_check(phi_text, direction, cert_order, grid_text);
        if (cb->parsed())
            return run_combine(phi_text, omega_text, lambda_text, phi2_text, omega2_text,
                               lambda2_text, weight, cert_order, grid_text);
        if (cv->parsed())
            return run_convolve(phi_text, omega_text, lambda_text, omega2_text, lambda2_text,
                                cert_order, grid_text);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
