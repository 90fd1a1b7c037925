#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "harmap/closed_form.hpp"
#include "harmap/series.hpp"

namespace harmap {

/// Textual mini-grammar for the functions this toolkit works with.
///
/// Analytic targets:   halfplane | koebe | halflog | kernel:T1,T2
///                     | c1:G,A,T | c2:G,B
/// Dilatations:        z | -z | z^2 | -z^2 | <complex constant> | blaschke:A
/// Angles:             decimal, or pi expressions like pi, -pi/6, 2pi/3, 0.5pi
/// Complex constants:  1, -0.5, i, -i, 2i, 1+2i, 0.6-0.8i
///
/// Parse failures throw std::invalid_argument (usage errors at the CLI).

inline double parse_angle(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw std::invalid_argument("empty angle");
    double sign = 1.0;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        sign = s[0] == '-' ? -1.0 : 1.0;
        pos = 1;
    }
    const std::size_t pi_at = s.find("pi", pos);
    if (pi_at == std::string::npos) {
        std::size_t used = 0;
        const double v = std::stod(s.substr(pos), &used);
        if (pos + used != s.size()) throw std::invalid_argument("bad angle: " + s);
        return sign * v;
    }
    double num = 1.0;
    if (pi_at > pos) {
        std::size_t used = 0;
        const std::string head = s.substr(pos, pi_at - pos);
        num = std::stod(head, &used);
        if (used != head.size() && !(used + 1 == head.size() && head[used] == '*'))
            throw std::invalid_argument("bad angle: " + s);
    }
    double den = 1.0;
    const std::size_t after = pi_at + 2;
    if (after < s.size()) {
        if (s[after] != '/') throw std::invalid_argument("bad angle: " + s);
        std::size_t used = 0;
        const std::string tail = s.substr(after + 1);
        den = std::stod(tail, &used);
        if (used != tail.size() || den == 0.0) throw std::invalid_argument("bad angle: " + s);
    }
    return sign * num * std::numbers::pi / den;
}

inline cplx parse_complex(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw std::invalid_argument("empty complex constant");

    // One or two signed terms, each either "<num>", "i", or "<num>i".
    double re = 0.0, im = 0.0;
    std::size_t pos = 0;
    int terms = 0;
    while (pos < s.size()) {
        if (++terms > 2) throw std::invalid_argument("bad complex constant: " + s);
        double sign = 1.0;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1.0 : 1.0;
            ++pos;
        }
        if (pos < s.size() && s[pos] == 'i' && (pos + 1 == s.size() || s[pos + 1] == '+' || s[pos + 1] == '-')) {
            im += sign;
            ++pos;
            continue;
        }
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(s.substr(pos), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad complex constant: " + s);
        }
        pos += used;
        if (pos < s.size() && s[pos] == 'i') {
            im += sign * v;
            ++pos;
        } else {
            re += sign * v;
        }
    }
    return {re, im};
}

/// A parsed analytic target. Kernel targets remember their angles so the
/// harnesses can reuse them.
struct PhiSpec {
    Series series;
    std::string name;
    std::optional<std::pair<double, double>> kernel_thetas;
};

namespace detail {

inline std::vector<std::string> split_args(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

inline PhiSpec parse_phi_spec(std::string_view text, int order) {
    const std::string s(text);
    const std::size_t colon = s.find(':');
    const std::string head = s.substr(0, colon);
    const std::string args = colon == std::string::npos ? std::string{} : s.substr(colon + 1);

    if (head == "halfplane") return {halfplane(order), s, std::nullopt};
    if (head == "koebe") return {koebe(order), s, std::nullopt};
    if (head == "halflog") return {halflog(order), s, std::nullopt};
    if (head == "kernel") {
        const auto a = detail::split_args(args);
        if (a.size() != 2) throw std::invalid_argument("kernel:T1,T2 needs two angles");
        const double t1 = parse_angle(a[0]), t2 = parse_angle(a[1]);
        return {kernel_phi(t1, t2, order), s, std::make_pair(t1, t2)};
    }
    if (head == "c1") {
        const auto a = detail::split_args(args);
        if (a.size() != 3) throw std::invalid_argument("c1:gamma,alpha,theta needs three values");
        return {c1_phi(parse_angle(a[0]), parse_angle(a[1]), parse_angle(a[2]), order), s,
                std::nullopt};
    }
    if (head == "c2") {
        const auto a = detail::split_args(args);
        if (a.size() != 2) throw std::invalid_argument("c2:gamma,beta needs two values");
        return {c2_phi(parse_angle(a[0]), parse_angle(a[1]), order), s, std::nullopt};
    }
    throw std::invalid_argument("unknown function spec: " + s);
}

/// Dilatation grammar. Blaschke factors (z-a)/(1-conj(a)z) are expanded in
/// closed form: coefficients -a, then (1-|a|^2) conj(a)^{n-1}.
inline Series parse_omega_spec(std::string_view text, int order) {
    const std::string s(text);
    if (s == "z") return Series::monomial(1, 1.0, std::max(order, 1));
    if (s == "-z") return Series::monomial(1, -1.0, std::max(order, 1));
    if (s == "z^2") return Series::monomial(2, 1.0, std::max(order, 2));
    if (s == "-z^2") return Series::monomial(2, -1.0, std::max(order, 2));
    if (s.rfind("blaschke:", 0) == 0) {
        const cplx a = parse_complex(s.substr(9));
        if (std::abs(a) >= 1.0) throw std::invalid_argument("blaschke parameter needs |a| < 1");
        std::vector<cplx> c(static_cast<std::size_t>(std::max(order, 1)) + 1, cplx{});
        c[0] = -a;
        cplx pw = 1.0 - std::norm(a);
        for (int n = 1; n <= std::max(order, 1); ++n) {
            c[static_cast<std::size_t>(n)] = pw;
            pw *= std::conj(a);
        }
        return Series(std::move(c));
    }
    const cplx v = parse_complex(s);
    if (std::abs(v) >= 1.0)
        throw std::invalid_argument("constant dilatation needs modulus < 1");
    return Series::constant(v);
}

}  // namespace harmap
