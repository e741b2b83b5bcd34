#pragma once

// Curve tracing and domain assembly on top of the field evaluator:
// stagnation points of the stream function, level/nodal curve continuation,
// free-surface root finding, and construction of the catalogued sloshing
// domains together with their high spots.

#include <vector>

#include "sloshspot/types.hpp"

namespace sloshspot {

// Rectangular scan window in the open lower half-plane.
struct ScanWindow {
    double x_min, x_max;
    double y_min, y_max;
};

// Newton iteration on grad v = 0 from `guess`. The result is certified as a
// saddle: |grad v| < 1e-9 and det(Hessian) < 0.
//
// Throws NoConvergence after 50 iterations, NotASaddle on a non-negative
// Hessian determinant.
StagnationPoint find_stagnation_point(const Mode& mode, Point2 guess,
                                      const QuadratureConfig& cfg = {});

// Coarse-grid local minima of |grad v| over `window`, returned in
// lexicographic (x, y) order as Newton seeds. May be empty.
std::vector<Point2> seed_scan(const Mode& mode, const ScanWindow& window,
                              int grid_n, const QuadratureConfig& cfg = {});

// Predictor-corrector continuation of the level set v = level starting at
// `start` (which must satisfy |v(start) - level| < 1e-8) heading along
// `direction`. Terminates on the free surface, on the y-axis, at a
// stagnation point of matching level, or on the arc-length budget.
//
// Throws StallAtStagnation if continuation stalls away from a matching-level
// stagnation point, BudgetExceeded if the arc length exceeds the budget.
LevelCurve trace_level_curve(const Mode& mode, Point2 start, double level,
                             Point2 direction,
                             const QuadratureConfig& cfg = {});

// Root of v(x, 0) - level on [lo, hi], refined to 1e-10 (bisection plus a
// Newton polish through the trace identity v_x = -nu u). Throws NoSignChange
// if the bracket does not straddle a root.
double find_surface_zero(const Mode& mode, double level, double lo, double hi,
                         const QuadratureConfig& cfg = {});

// Assembles one of the catalogued domains: traces the bounding curves for
// the tag, stitches in y-axis segments where the boundary runs along the
// axis, and validates closure and simplicity.
//
// Throws AssemblyFailure if the boundary does not close within 1e-6 or is
// not simple; OutOfRange on a tag/mode mismatch.
SloshingDomain build_domain(const Mode& mode, CaseTag tag,
                            const QuadratureConfig& cfg = {});

// All critical points of the trace u(x, 0) strictly inside F, classified by
// the second derivative, plus the one-sided extrema at both endpoints of F
// (interior = false). Sorted by x. Critical points closer than 1e-7 are
// merged; |u_xx| < 1e-9 is flagged degenerate instead of being classified
// silently.
std::vector<HighSpot> find_high_spots(const SloshingDomain& domain,
                                      const QuadratureConfig& cfg = {});

// The nodal line u = 0 inside `domain`, traced from its free-surface
// endpoint into the interior; clipped where it exits through the bottom.
// Throws NoSurfaceZero if u(x, 0) has no sign change on F.
LevelCurve trace_u_nodal_line(const SloshingDomain& domain,
                              const QuadratureConfig& cfg = {});

// Location of the global minimum of the trace v(x, 0) over x > 0, refined
// to 1e-10. Critical points of the v-trace are roots of u by the
// Cauchy-Riemann identity v_x = -nu u. SUM family only.
// Throws NoInteriorMinimum if no interior minimum exists.
double find_trace_min(const Mode& mode, const QuadratureConfig& cfg = {});

// Per-side bulbousness verdict. At each free-surface endpoint adjoining a
// curved bottom arc the boundary slope y' = -v_x/v_y decides whether the
// bottom exits the vertical strip over F (right side: y' < 0, left side:
// y' > 0); sides that run along the y-axis are confined by construction.
// A global vertex sweep records the actual overhang distance.
// Throws DegenerateGradient if v_y vanishes at an endpoint.
BulbousReport check_bulbous(const SloshingDomain& domain,
                            const QuadratureConfig& cfg = {});

// Smooth-bottom variant for SUM nu = 3/2: the domain bounded by the single
// level line v = -c, 0 < c < -min{v(x,0) : x >= 0}. The bottom is one
// smooth arc; there are no corners. Throws LevelOutOfRange for c outside
// the admissible interval.
SloshingDomain smooth_variant(const Mode& mode, double c,
                              const QuadratureConfig& cfg = {});

// Reflection x -> -x. Vertex coordinates negate bitwise; curve and piece
// orders reverse so the bottom still runs from the right end of F to the
// left. Involutive.
SloshingDomain mirror_domain(const SloshingDomain& domain);

// True if the polyline has no self-intersections (consecutive segments may
// share their common endpoint). `closed` additionally tests the closing
// segment.
bool polyline_is_simple(const std::vector<Point2>& pts, bool closed);

// True if `p` lies strictly inside the closed polygon `poly`.
bool point_in_polygon(Point2 p, const std::vector<Point2>& poly);

// Closed boundary polygon of a domain: free surface first, then the bottom
// pieces from the right end of F back to the left.
std::vector<Point2> boundary_polygon(const SloshingDomain& domain);

}  // namespace sloshspot
