#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "harmap/convexity.hpp"
#include "harmap/gallery.hpp"
#include "harmap/version.hpp"

namespace harmap {

using ordered_json = nlohmann::ordered_json;

/// One row of a report: a named check with the quantity that decided it and,
/// when the check is a certificate search, the certificate itself.
struct CheckResult {
    std::string name;
    double value = 0.0;
    bool passed = false;
    std::optional<Certificate> certificate;

    CheckResult() = default;
    CheckResult(std::string n, double v, bool p, std::optional<Certificate> c = std::nullopt)
        : name(std::move(n)), value(v), passed(p), certificate(std::move(c)) {}
    CheckResult(const HypothesisCheck& h) : name(h.name), value(h.value), passed(h.passed) {}
};

/// Machine-readable outcome of one CLI invocation. Field order is fixed by
/// construction order below, so identical invocations serialize to identical
/// bytes.
struct Report {
    std::string command;
    ordered_json inputs = ordered_json::object();
    std::vector<CheckResult> results;
    std::optional<Certificate> certificate;
    ordered_json data;  // subcommand-specific payload (coefficients, ...)
    std::vector<std::string> artifacts;
    bool passed = false;

    void add(CheckResult r) { results.push_back(std::move(r)); }
    void add_all(const std::vector<HypothesisCheck>& hs) {
        for (const HypothesisCheck& h : hs) results.emplace_back(h);
    }
};

inline ordered_json to_json(const GridSpec& g) {
    return {{"radial_count", g.radial_count},
            {"max_radius", g.max_radius},
            {"angle_count", g.angle_count},
            {"mu_count", g.mu_count},
            {"nu_count", g.nu_count}};
}

inline ordered_json to_json(const Certificate& c) {
    return {{"kind", c.kind == CertificateKind::RoysterZiegler ? "royster-ziegler" : "kernel"},
            {"mu", c.mu},
            {"nu", c.nu},
            {"theta1", c.theta1},
            {"theta2", c.theta2},
            {"min_value", c.min_value},
            {"refined", c.refined},
            {"grid", to_json(c.grid)}};
}

inline ordered_json to_json(const HypothesisCheck& h) {
    return {{"name", h.name}, {"value", h.value}, {"passed", h.passed}};
}

inline ordered_json to_json(const CheckResult& r) {
    return {{"name", r.name},
            {"value", r.value},
            {"certificate", r.certificate ? to_json(*r.certificate) : ordered_json(nullptr)},
            {"passed", r.passed}};
}

inline ordered_json to_json(const HarnessReport& r) {
    ordered_json j;
    j["theorem_id"] = r.theorem_id;
    j["hypotheses"] = ordered_json::array();
    for (const HypothesisCheck& h : r.hypotheses) j["hypotheses"].push_back(to_json(h));
    j["conclusion_certificate"] = r.conclusion ? to_json(*r.conclusion) : ordered_json(nullptr);
    j["maps"] = r.map_labels;
    j["passed"] = r.passed;
    return j;
}

inline ordered_json to_json(const Report& r) {
    ordered_json j;
    j["version"] = kVersion;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["results"] = ordered_json::array();
    for (const CheckResult& c : r.results) j["results"].push_back(to_json(c));
    j["certificate"] = r.certificate ? to_json(*r.certificate) : ordered_json(nullptr);
    if (!r.data.is_null()) j["data"] = r.data;
    j["artifacts"] = r.artifacts;
    j["passed"] = r.passed;
    return j;
}

inline std::string render_report(const Report& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace harmap
