#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "harmap/errors.hpp"
#include "harmap/grid.hpp"
#include "harmap/harmonic.hpp"

namespace harmap {

struct Curve {
    std::string label;
    std::vector<cplx> points;
    bool closed = false;
};

struct BoundingBox {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
};

struct PolylineSet {
    std::vector<Curve> curves;

    BoundingBox bounds() const {
        BoundingBox b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        bool any = false;
        for (const Curve& c : curves)
            for (const cplx p : c.points) {
                any = true;
                b.min_x = std::min(b.min_x, p.real());
                b.max_x = std::max(b.max_x, p.real());
                b.min_y = std::min(b.min_y, p.imag());
                b.max_y = std::max(b.max_y, p.imag());
            }
        if (!any) return {0.0, 0.0, 1.0, 1.0};
        return b;
    }
};

/// Image of the disk under f in the figure style of this domain: the closed
/// images of concentric circles (radii clustered toward r_max) and the open
/// images of radial spokes. Each curve carries exactly samples_per_curve
/// points; circle curves do not repeat their first point and are marked
/// closed instead.
inline PolylineSet disk_image(const HarmonicMap& f, int circles, int spokes,
                              int samples_per_curve, double r_max) {
    if (r_max > kDefaultEvalRadius) throw ParamOutOfRange("disk_image: r_max <= 0.995");
    if (samples_per_curve < 2) throw ParamOutOfRange("disk_image: need at least 2 samples per curve");
    if (circles < 0 || spokes < 0) throw ParamOutOfRange("disk_image: negative curve count");

    PolylineSet out;
    const std::vector<double> radii = circles > 0 ? clustered_radii(circles, r_max)
                                                  : std::vector<double>{};
    for (int k = 0; k < circles; ++k) {
        Curve c;
        c.label = "circle_" + std::to_string(k);
        c.closed = true;
        c.points.reserve(static_cast<std::size_t>(samples_per_curve));
        for (int j = 0; j < samples_per_curve; ++j) {
            const double th = 2.0 * std::numbers::pi * j / samples_per_curve;
            c.points.push_back(eval_map(f, std::polar(radii[static_cast<std::size_t>(k)], th)));
        }
        out.curves.push_back(std::move(c));
    }
    for (int m = 0; m < spokes; ++m) {
        Curve c;
        c.label = "spoke_" + std::to_string(m);
        c.points.reserve(static_cast<std::size_t>(samples_per_curve));
        const double th = 2.0 * std::numbers::pi * m / spokes;
        for (int j = 0; j < samples_per_curve; ++j) {
            const double r = r_max * j / (samples_per_curve - 1);
            c.points.push_back(eval_map(f, std::polar(r, th)));
        }
        out.curves.push_back(std::move(c));
    }
    return out;
}

namespace detail {

inline double cross(cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

inline bool on_segment(cplx p, cplx q, cplx r) {
    return std::min(p.real(), r.real()) <= q.real() && q.real() <= std::max(p.real(), r.real()) &&
           std::min(p.imag(), r.imag()) <= q.imag() && q.imag() <= std::max(p.imag(), r.imag());
}

/// Proper or improper intersection of segments [p1,p2] and [q1,q2].
/// Orientations below `eps` count as collinear.
inline bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2, double eps) {
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
        ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)))
        return true;
    if (std::abs(d1) <= eps && on_segment(q1, p1, q2)) return true;
    if (std::abs(d2) <= eps && on_segment(q1, p2, q2)) return true;
    if (std::abs(d3) <= eps && on_segment(p1, q1, p2)) return true;
    if (std::abs(d4) <= eps && on_segment(p1, q2, p2)) return true;
    return false;
}

}  // namespace detail

/// True iff no two non-adjacent edges of the implicitly-closed polyline
/// intersect. Quadratic sweep; fine for the <= 2048-point witness curves.
/// The collinearity tolerance is 1e-14 of the squared curve scale.
inline bool simple_curve_check(const std::vector<cplx>& curve) {
    const std::size_t n = curve.size();
    if (n < 16) throw TooFewPoints();
    double scale = 0.0;
    for (const cplx p : curve) scale = std::max({scale, std::abs(p.real()), std::abs(p.imag())});
    const double eps = 1e-14 * scale * scale;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx p1 = curve[i], p2 = curve[(i + 1) % n];
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // wrap-around neighbours
            const cplx q1 = curve[j], q2 = curve[(j + 1) % n];
            if (detail::segments_intersect(p1, p2, q1, q2, eps)) return false;
        }
    }
    return true;
}

namespace detail {

inline std::string fmt(double v, const char* spec = "%.8g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v == 0.0 ? 0.0 : v);  // avoid "-0"
    return buf;
}

inline void write_atomically(const std::filesystem::path& path, const std::string& body) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << body;
        if (!out) throw WriteFailed(path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw WriteFailed(path.string());
}

}  // namespace detail

/// One SVG document, one path element per curve, viewBox fitted with a 5%
/// margin. The y axis is flipped on output so the figure keeps mathematical
/// orientation. Byte-identical output for identical input.
inline void emit_svg(const PolylineSet& ps, const std::filesystem::path& path) {
    const BoundingBox b = ps.bounds();
    const double w = b.max_x - b.min_x, h = b.max_y - b.min_y;
    const double mx = 0.05 * (w > 0 ? w : 1.0), my = 0.05 * (h > 0 ? h : 1.0);
    const double stroke = 0.002 * std::max(w + 2 * mx, h + 2 * my);

    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + detail::fmt(b.min_x - mx) +
           " " + detail::fmt(-b.max_y - my) + " " + detail::fmt(w + 2 * mx) + " " +
           detail::fmt(h + 2 * my) + "\">\n";
    for (const Curve& c : ps.curves) {
        if (c.points.size() < 2) continue;
        svg += "  <path id=\"" + c.label + "\" fill=\"none\" stroke=\"black\" stroke-width=\"" +
               detail::fmt(stroke) + "\" d=\"";
        for (std::size_t k = 0; k < c.points.size(); ++k) {
            svg += (k == 0 ? "M" : " L");
            svg += detail::fmt(c.points[k].real()) + " " + detail::fmt(-c.points[k].imag());
        }
        if (c.closed) svg += " Z";
        svg += "\"/>\n";
    }
    svg += "</svg>\n";
    detail::write_atomically(path, svg);
}

/// CSV rows `label,k,x,y` in curve order, one header line, 17 significant
/// digits (doubles round-trip exactly). Byte-identical for identical input.
inline void emit_csv(const PolylineSet& ps, const std::filesystem::path& path) {
    std::string csv = "label,k,x,y\n";
    for (const Curve& c : ps.curves)
        for (std::size_t k = 0; k < c.points.size(); ++k)
            csv += c.label + "," + std::to_string(k) + "," +
                   detail::fmt(c.points[k].real(), "%.17g") + "," +
                   detail::fmt(c.points[k].imag(), "%.17g") + "\n";
    detail::write_atomically(path, csv);
}

}  // namespace harmap
