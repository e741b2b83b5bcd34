#include "sloshspot/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace sloshspot {

namespace {

std::string fmt(const char* spec, double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

std::string g12(double x) { return fmt("%.12g", x); }

}  // namespace

std::string family_name(Family family) {
    return family == Family::SUM ? "sum" : "diff";
}

std::string case_name(CaseTag tag) {
    switch (tag) {
        case CaseTag::W32: return "w32";
        case CaseTag::W32_PRIME: return "w32_prime";
        case CaseTag::W52: return "w52";
        case CaseTag::W52_COMPANION: return "w52c";
        case CaseTag::W72: return "w72";
        case CaseTag::W3: return "w3";
        case CaseTag::W2: return "w2";
        case CaseTag::SMOOTH_VARIANT: return "smooth";
    }
    return "unknown";
}

namespace {

nlohmann::ordered_json mode_json(const Mode& mode) {
    return {{"nu", mode.nu}, {"family", family_name(mode.family)}};
}

nlohmann::ordered_json spot_list_json(const std::vector<HighSpot>& spots) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const HighSpot& h : spots)
        arr.push_back({{"x", h.x},
                       {"kind", h.kind == SpotKind::MAX ? "max" : "min"},
                       {"interior", h.interior},
                       {"value", h.trace_value},
                       {"degenerate", h.degenerate}});
    return arr;
}

}  // namespace

nlohmann::ordered_json domain_to_json(const SloshingDomain& domain,
                                      const std::vector<HighSpot>& spots) {
    nlohmann::ordered_json bottom = nlohmann::ordered_json::array();
    for (const LevelCurve& c : domain.bottom) {
        nlohmann::ordered_json verts = nlohmann::ordered_json::array();
        for (const Point2& p : c.vertices) verts.push_back({p.x, p.y});
        bottom.push_back(
            {{"level", c.level}, {"vertices", std::move(verts)}});
    }
    nlohmann::ordered_json corners = nlohmann::ordered_json::array();
    for (const Point2& p : domain.corners) corners.push_back({p.x, p.y});
    return {{"schema_version", 1},
            {"mode", mode_json(domain.mode)},
            {"free_surface", {domain.fs_left, domain.fs_right}},
            {"bottom", std::move(bottom)},
            {"corners", std::move(corners)},
            {"high_spots", spot_list_json(spots)}};
}

nlohmann::ordered_json spots_to_json(const Mode& mode,
                                     const std::vector<HighSpot>& spots) {
    return {{"schema_version", 1},
            {"mode", mode_json(mode)},
            {"high_spots", spot_list_json(spots)}};
}

std::string csv_xy(const std::vector<Point2>& points) {
    std::string out = "x,y\n";
    for (const Point2& p : points)
        out += g12(p.x) + "," + g12(p.y) + "\n";
    return out;
}

std::string csv_trace(const std::vector<double>& xs,
                      const std::vector<double>& us,
                      const std::vector<double>& vs) {
    std::string out = "x,u,v\n";
    for (size_t i = 0; i < xs.size(); ++i)
        out += g12(xs[i]) + "," + g12(us[i]) + "," + g12(vs[i]) + "\n";
    return out;
}

std::vector<Point2> bottom_path(const SloshingDomain& domain) {
    std::vector<Point2> path;
    for (const LevelCurve& c : domain.bottom)
        for (const Point2& p : c.vertices) {
            if (!path.empty() && path.back().x == p.x && path.back().y == p.y)
                continue;
            path.push_back(p);
        }
    return path;
}

namespace {

// Linear map from data coordinates to a screen rectangle (y flipped).
struct Axes {
    double x0, x1, y0, y1;          // data range
    double px, py, pw, ph;          // screen rectangle

    double sx(double x) const { return px + (x - x0) / (x1 - x0) * pw; }
    double sy(double y) const { return py + (y1 - y) / (y1 - y0) * ph; }
};

std::string f2(double x) { return fmt("%.2f", x); }

void span_of(const std::vector<double>& vals, double* lo, double* hi) {
    for (double v : vals) {
        *lo = std::min(*lo, v);
        *hi = std::max(*hi, v);
    }
}

void add_polyline(std::string& svg, const Axes& ax,
                  const std::vector<Point2>& pts, LineStyle style) {
    if (pts.size() < 2) return;
    const char* dash = style == LineStyle::DASHED ? " stroke-dasharray=\"6 4\""
                       : style == LineStyle::DOTTED
                           ? " stroke-dasharray=\"1.5 3\""
                           : "";
    svg += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"";
    svg += dash;
    svg += " points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) svg += ' ';
        svg += f2(ax.sx(pts[i].x)) + "," + f2(ax.sy(pts[i].y));
    }
    svg += "\"/>\n";
}

void add_series(std::string& svg, const Axes& ax,
                const std::vector<double>& xs, const std::vector<double>& ys,
                LineStyle style) {
    std::vector<Point2> pts(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) pts[i] = {xs[i], ys[i]};
    add_polyline(svg, ax, pts, style);
}

void add_frame(std::string& svg, const Axes& ax) {
    svg += "<rect fill=\"none\" stroke=\"black\" stroke-width=\"0.8\" x=\"" +
           f2(ax.px) + "\" y=\"" + f2(ax.py) + "\" width=\"" + f2(ax.pw) +
           "\" height=\"" + f2(ax.ph) + "\"/>\n";
    if (ax.y0 < 0.0 && ax.y1 > 0.0) {
        svg += "<line stroke=\"black\" stroke-width=\"0.5\" x1=\"" +
               f2(ax.px) + "\" y1=\"" + f2(ax.sy(0.0)) + "\" x2=\"" +
               f2(ax.px + ax.pw) + "\" y2=\"" + f2(ax.sy(0.0)) + "\"/>\n";
    }
}

void add_text(std::string& svg, double x, double y, const std::string& s) {
    svg += "<text x=\"" + f2(x) + "\" y=\"" + f2(y) +
           "\" font-family=\"serif\" font-size=\"13\">" + s + "</text>\n";
}

}  // namespace

std::string figure_svg(const FigureData& fig) {
    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 620\" "
        "width=\"800\" height=\"620\">\n";
    add_text(svg, 60, 22, fig.title);

    // panel (a): traces on the surface
    if (!fig.xs.empty()) {
        double xlo = fig.xs.front(), xhi = fig.xs.back();
        double ylo = 0.0, yhi = 0.0;
        span_of(fig.us, &ylo, &yhi);
        span_of(fig.vs, &ylo, &yhi);
        double pad = 0.05 * (yhi - ylo);
        Axes ax{xlo, xhi, ylo - pad, yhi + pad, 60, 40, 700, 230};
        add_frame(svg, ax);
        add_series(svg, ax, fig.xs, fig.us, LineStyle::DASHED);
        add_series(svg, ax, fig.xs, fig.vs, LineStyle::SOLID);
        add_text(svg, 20, 52, "(a)");
        add_text(svg, 66, 52, "u(x,0) dashed, v(x,0) solid");
        add_text(svg, 746, 286, "x");
    }

    // panel (b): curves in the flow region with high-spot arrows
    {
        double xlo = fig.surface_left, xhi = fig.surface_right;
        double ylo = 0.0, yhi = 0.0;
        for (const FigureCurve& c : fig.curves)
            for (const Point2& p : c.points) {
                xlo = std::min(xlo, p.x);
                xhi = std::max(xhi, p.x);
                ylo = std::min(ylo, p.y);
                yhi = std::max(yhi, p.y);
            }
        double padx = 0.05 * (xhi - xlo), pady = 0.05 * (yhi - ylo) + 1e-9;
        Axes ax{xlo - padx, xhi + padx, ylo - pady, yhi + 0.12 * (yhi - ylo) +
                                                        1e-9,
                60, 330, 700, 250};
        add_frame(svg, ax);
        // free surface segment
        add_polyline(svg, ax,
                     {{fig.surface_left, 0.0}, {fig.surface_right, 0.0}},
                     LineStyle::SOLID);
        for (const FigureCurve& c : fig.curves)
            add_polyline(svg, ax, c.points, c.style);
        for (double x : fig.arrow_xs) {
            double sx = ax.sx(x), sy = ax.sy(0.0);
            svg += "<line stroke=\"black\" stroke-width=\"1\" x1=\"" +
                   f2(sx) + "\" y1=\"" + f2(sy - 20) + "\" x2=\"" + f2(sx) +
                   "\" y2=\"" + f2(sy - 5) + "\"/>\n";
            svg += "<path fill=\"black\" d=\"M" + f2(sx - 3.5) + " " +
                   f2(sy - 9) + " L" + f2(sx) + " " + f2(sy - 2) + " L" +
                   f2(sx + 3.5) + " " + f2(sy - 9) + " Z\"/>\n";
        }
        add_text(svg, 20, 342, "(b)");
        add_text(svg, 746, 600, "x");
    }
    svg += "</svg>\n";
    return svg;
}

std::string report_table(const std::vector<ReferenceComparison>& rows) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-46s %12s %14s %10s %8s  %s\n",
                  "quantity", "reference", "computed", "abs diff", "tol",
                  "status");
    out += line;
    out += std::string(100, '-') + "\n";
    for (const ReferenceComparison& r : rows) {
        std::snprintf(line, sizeof line,
                      "%-46s %12.7f %14.9f %10.2e %8.0e  %s\n",
                      r.quantity.c_str(), r.reference_value, r.computed_value,
                      r.abs_diff, r.tolerance, r.pass() ? "pass" : "FAIL");
        out += line;
    }
    return out;
}

nlohmann::ordered_json report_json(
    const std::vector<ReferenceComparison>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    bool all = true;
    for (const ReferenceComparison& r : rows) {
        arr.push_back({{"quantity", r.quantity},
                       {"reference", r.reference_value},
                       {"computed", r.computed_value},
                       {"abs_diff", r.abs_diff},
                       {"tolerance", r.tolerance},
                       {"source", r.source},
                       {"pass", r.pass()}});
        all = all && r.pass();
    }
    return {{"schema_version", 1}, {"rows", std::move(arr)},
            {"all_pass", all}};
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw OutOfRange("cannot open output file: " + path.string());
    f.write(content.data(), (std::streamsize)content.size());
    if (!f) throw OutOfRange("failed writing output file: " + path.string());
}

}  // namespace sloshspot
