#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sloshspot/types.hpp"

namespace sloshspot {

std::string family_name(Family family);
std::string case_name(CaseTag tag);

// domain.json payload: schema_version, mode, free_surface, bottom pieces
// with their levels, corners, and the high-spot list.
nlohmann::ordered_json domain_to_json(const SloshingDomain& domain,
                                      const std::vector<HighSpot>& spots);
// highspots.json payload: the spot list alone.
nlohmann::ordered_json spots_to_json(const Mode& mode,
                                     const std::vector<HighSpot>& spots);

// Two-column CSV (header "x,y", 12 significant digits, LF endings).
std::string csv_xy(const std::vector<Point2>& points);
// Three-column CSV of the surface traces (header "x,u,v").
std::string csv_trace(const std::vector<double>& xs,
                      const std::vector<double>& us,
                      const std::vector<double>& vs);

// Concatenated bottom path with duplicate junction vertices dropped.
std::vector<Point2> bottom_path(const SloshingDomain& domain);

enum class LineStyle { SOLID, DASHED, DOTTED };

struct FigureCurve {
    std::vector<Point2> points;
    LineStyle style = LineStyle::SOLID;
};

// Everything needed to render one two-panel figure. Panel (a) shows the
// surface traces; panel (b) the curves with arrows at interior high spots.
struct FigureData {
    std::string title;
    std::vector<double> xs, us, vs;      // panel (a) grid
    std::vector<FigureCurve> curves;     // panel (b)
    std::vector<double> arrow_xs;        // interior high-spot markers
    double surface_left = 0.0, surface_right = 0.0;
};

// Deterministic SVG: fixed viewBox, fixed number formatting, no ids or
// timestamps. Identical input yields identical bytes.
std::string figure_svg(const FigureData& fig);

std::string report_table(const std::vector<ReferenceComparison>& rows);
nlohmann::ordered_json report_json(const std::vector<ReferenceComparison>& rows);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace sloshspot
