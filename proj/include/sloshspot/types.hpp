#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sloshspot {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SLOSHSPOT_ERROR(NAME)                                   \
    struct NAME : Error {                                       \
        explicit NAME(const std::string& msg) : Error(msg) {}   \
    }

SLOSHSPOT_ERROR(NonRemovableSingularity);  // (nu, family) pair leaves a pole at k = nu
SLOSHSPOT_ERROR(SingularPoint);            // evaluation inside the guard ball at (+-pi, 0)
SLOSHSPOT_ERROR(QuadratureFailure);        // adaptive integration missed its tolerance
SLOSHSPOT_ERROR(OutOfRange);               // argument outside the operation's domain
SLOSHSPOT_ERROR(NoConvergence);            // iteration exhausted without meeting tolerance
SLOSHSPOT_ERROR(NotASaddle);               // gradient zero found but Hessian determinant >= 0
SLOSHSPOT_ERROR(NoSignChange);             // bracket does not straddle a root
SLOSHSPOT_ERROR(AssemblyFailure);          // traced boundary pieces do not close
SLOSHSPOT_ERROR(NoSurfaceZero);            // u(x,0) keeps one sign on the free surface
SLOSHSPOT_ERROR(NoInteriorMinimum);        // trace minimum missing from the open interval
SLOSHSPOT_ERROR(StallAtStagnation);        // curve tracer trapped at a non-matching critical point
SLOSHSPOT_ERROR(BudgetExceeded);           // curve tracer ran past its arc-length budget
SLOSHSPOT_ERROR(LevelOutOfRange);          // requested level line does not bound a domain
SLOSHSPOT_ERROR(DegenerateGradient);       // slope undefined because v_y vanishes

#undef SLOSHSPOT_ERROR

// ---------------------------------------------------------------------------
// Core value types
// ---------------------------------------------------------------------------

// The two admissible integral families: SUM uses the cosine-sum numerator and
// requires nu to be an odd multiple of 1/2; DIFF uses the cosine-difference
// numerator and requires nu to be a positive integer.  Either constraint makes
// the trigonometric numerator vanish at k = nu, so the integrand is regular.
enum class Family { SUM, DIFF };

struct Mode {
    double nu = 0.0;
    Family family = Family::SUM;
    // Sign of the regular factor: -sin(pi*nu) for SUM, cos(pi*nu) for DIFF,
    // rounded to exactly +-1 (exact under the admissibility constraint).
    double sigma = 0.0;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;  // y <= 0: closed lower half-plane
};

struct Gradient2 {
    double dx = 0.0;
    double dy = 0.0;
};

// Symmetric 2x2 matrix of second derivatives.
struct SymMat2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    double trace() const { return xx + yy; }
    double det() const { return xx * yy - xy * xy; }
};

// How boundary traces (y = 0) are evaluated.  ROTATED uses the absolutely
// convergent contour-rotated representation; REGULARIZED damps the original
// integral with exp(-eps*k) and Richardson-extrapolates eps -> 0.  The two
// must agree; REGULARIZED exists as the independent cross-check.
enum class TraceMethod { ROTATED, REGULARIZED };

// Which interior representation to integrate.  AUTO picks the rotated route
// close to the free surface and the direct k-integral deeper down; the forced
// settings exist so tests can play the two routes against each other.
enum class EvalRoute { AUTO, DIRECT, ROTATED };

struct QuadratureConfig {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    // Split point of the k-range as a multiple of nu; panels are laid out
    // separately on [0, split_point*nu] and on the decaying tail beyond it.
    double split_point = 2.0;
    // Tail truncation policy for y < 0: cut where the integrand envelope
    // falls below abs_tol, then extend by this many extra e-foldings.
    double tail_margin = 5.0;
    TraceMethod trace_method = TraceMethod::ROTATED;
    EvalRoute route = EvalRoute::AUTO;
    // AUTO dispatch: rotated route when |y| < rotated_y_max and
    // |x| < pi - rotated_x_guard, direct route otherwise.
    double rotated_y_max = 0.25;
    double rotated_x_guard = 1e-5;
    int max_panels = 40000;

    // Throws Error on nonsense (non-positive tolerances, split at or below nu).
    void validate() const;
};

// ---------------------------------------------------------------------------
// Geometry types
// ---------------------------------------------------------------------------

enum class EndpointKind {
    ON_FREE_SURFACE,  // endpoint projected onto y = 0
    ON_Y_AXIS,        // endpoint on the x = 0 wall
    AT_STAGNATION,    // endpoint snapped to a gradient zero
    ON_BOTTOM,        // endpoint clipped against a bottom curve
    OPEN,             // tracing stopped without a recognized terminal
};

// Oriented polyline approximating {field = level}; `level` is 0 for nodal
// lines.  Residual and spacing bounds hold for every recorded vertex.
struct LevelCurve {
    double level = 0.0;
    std::vector<Point2> vertices;
    double max_residual = 0.0;
    EndpointKind begin_kind = EndpointKind::OPEN;
    EndpointKind end_kind = EndpointKind::OPEN;
    // True for straight segments laid on the x = 0 wall (where v vanishes
    // identically for the SUM family) rather than traced level lines.
    bool is_axis_segment = false;

    double length() const;
};

struct StagnationPoint {
    Point2 location;
    double level = 0.0;        // v at the location
    double hessian_det = 0.0;  // negative: transversal crossing (saddle)
};

enum class CaseTag {
    W32,             // SUM nu=3/2, nodal domain right of the y-axis
    W32_PRIME,       // its mirror image left of the y-axis
    W52,             // SUM nu=5/2, between the two curved nodal arcs
    W52_COMPANION,   // SUM nu=5/2, wall-adjacent domain (no interior spots)
    W72,             // SUM nu=7/2, saddle-level funnel
    W3,              // DIFF nu=3, saddle-level funnel
    W2,              // DIFF nu=2, saddle-level funnel
    SMOOTH_VARIANT,  // SUM nu=3/2, smooth bottom on a level -c
};

// A fluid domain: free surface interval F at y = 0, bottom pieces B (traced
// level curves plus straight wall segments) listed in boundary order from the
// right end of F around to the left end, and the corner points of B.
struct SloshingDomain {
    Mode mode;
    double fs_left = 0.0;
    double fs_right = 0.0;
    std::vector<LevelCurve> bottom;
    std::vector<Point2> corners;
    CaseTag case_tag = CaseTag::W32;
    double level = 0.0;
    std::vector<StagnationPoint> stagnation_points;
};

enum class SpotKind { MAX, MIN };

struct HighSpot {
    double x = 0.0;
    SpotKind kind = SpotKind::MAX;
    bool interior = false;
    double trace_value = 0.0;  // u(x, 0)
    bool degenerate = false;   // |u_xx| below the classification floor
};

// Per-side wall verdict: a side is bulbous when the bottom leaves the
// vertical strip over the free surface.
struct SideVerdict {
    bool bulbous = false;
    bool on_axis = false;   // side bounded by the x = 0 wall (slope unused)
    double slope = 0.0;     // boundary slope y'(x) at the surface endpoint
    double overhang = 0.0;  // how far the bottom pokes out of the strip
};

struct BulbousReport {
    SideVerdict left;
    SideVerdict right;
};

// ---------------------------------------------------------------------------
// Verification types
// ---------------------------------------------------------------------------

struct ResidualReport {
    std::string check_name;
    double max_residual = 0.0;
    int sample_count = 0;
    double tolerance = 0.0;
    bool pass = false;
};

// One row of the reference-value comparison: a quantity this library
// computes, the reference value it must reproduce, and the allowed slack.
struct ReferenceComparison {
    std::string quantity;
    double reference_value = 0.0;
    double computed_value = 0.0;
    double abs_diff = 0.0;
    double tolerance = 0.0;
    std::string source;

    bool pass() const { return abs_diff <= tolerance; }
};

}  // namespace sloshspot
