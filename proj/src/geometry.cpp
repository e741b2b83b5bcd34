#include "sloshspot/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>

#include "sloshspot/kernel.hpp"

namespace sloshspot {

namespace {

struct V2 {
    double x, y;
};

V2 operator+(V2 a, V2 b) { return {a.x + b.x, a.y + b.y}; }
V2 operator-(V2 a, V2 b) { return {a.x - b.x, a.y - b.y}; }
V2 operator*(double s, V2 a) { return {s * a.x, s * a.y}; }
double dot(V2 a, V2 b) { return a.x * b.x + a.y * b.y; }
double cross(V2 a, V2 b) { return a.x * b.y - a.y * b.x; }
double norm(V2 a) { return std::hypot(a.x, a.y); }
V2 perp(V2 a) { return {-a.y, a.x}; }
V2 unit(V2 a) {
    double n = norm(a);
    return {a.x / n, a.y / n};
}
Point2 pt(V2 a) { return {a.x, a.y}; }
V2 vec(Point2 p) { return {p.x, p.y}; }

// Which conjugate-pair component a curve follows.
enum class Scalar { V, U };

struct Probe {
    double f;
    V2 g;
    SymMat2 h;  // valid only when order >= 2 was requested
};

// Scalar field adapter so the tracer works for both v-level curves and
// u-nodal lines.
struct Field {
    const Mode* mode;
    const QuadratureConfig* cfg;
    Scalar which;

    Probe operator()(V2 p, int order) const {
        FieldValues f = eval_field(*mode, {p.x, p.y}, order, *cfg);
        if (which == Scalar::V)
            return {f.v, {f.vx, f.vy}, {f.vxx, f.vxy, f.vyy}};
        return {f.u, {f.ux, f.uy}, {f.uxx, f.uxy, f.uyy}};
    }

    double trace_value(double x) const {
        TraceValues t = eval_trace(*mode, x, *cfg);
        return which == Scalar::V ? t.v : t.u;
    }
    double trace_slope(double x) const {
        TraceValues t = eval_trace(*mode, x, *cfg);
        return which == Scalar::V ? t.vx : t.ux;
    }
};

struct CriticalPoint {
    V2 location;
    double value;
    double det;
    double grad_norm;
};

// Damped Newton on grad f = 0. Returns nullopt when the iteration fails to
// reach |grad| < tol within max_iter steps.
std::optional<CriticalPoint> critical_newton(const Field& fld, V2 p,
                                             int max_iter, double tol) {
    for (int i = 0; i < max_iter; ++i) {
        Probe q = fld(p, 2);
        double det = q.h.det();
        if (norm(q.g) < tol)
            return CriticalPoint{p, q.f, det, norm(q.g)};
        if (std::abs(det) < 1e-16) return std::nullopt;
        V2 step = {(-q.g.x * q.h.yy + q.g.y * q.h.xy) / det,
                   (-q.h.xx * q.g.y + q.h.xy * q.g.x) / det};
        double sn = norm(step);
        if (sn > 0.25) step = (0.25 / sn) * step;
        p = p + step;
        if (p.y > -1e-4) p.y = -1e-4;
    }
    Probe q = fld(p, 2);
    if (norm(q.g) < tol) return CriticalPoint{p, q.f, q.h.det(), norm(q.g)};
    return std::nullopt;
}

constexpr double kStepMin = 1e-4;
constexpr double kStepMax = 4.8e-2;  // keeps vertex spacing under 5e-2
constexpr double kCorrectorTol = 1e-10;
constexpr double kSnapRadius = 4e-2;
constexpr double kGradStall = 2e-2;
constexpr double kLengthBudget = 25.0;

struct TraceJob {
    double level = 0.0;
    V2 start{};
    V2 dir{};
    EndpointKind begin_kind = EndpointKind::OPEN;
    // Saddle the curve was seeded from; suppresses an immediate re-snap.
    std::optional<V2> origin_saddle;
    // When set, the curve is clipped where it crosses these polylines
    // (endpoint kind ON_BOTTOM).
    const std::vector<const LevelCurve*>* clip = nullptr;
};

bool segment_intersection(V2 a, V2 b, V2 c, V2 d, V2* out) {
    V2 r = b - a, s = d - c;
    double den = cross(r, s);
    if (den == 0.0) return false;
    double t = cross(c - a, s) / den;
    double w = cross(c - a, r) / den;
    if (t < 0.0 || t > 1.0 || w < 0.0 || w > 1.0) return false;
    *out = a + t * r;
    return true;
}

class Tracer {
  public:
    Tracer(const Field& fld, const TraceJob& job)
        : fld_(fld), job_(job) {}

    LevelCurve run() {
        LevelCurve out;
        out.level = job_.level;
        out.begin_kind = job_.begin_kind;
        out.end_kind = EndpointKind::OPEN;
        out.is_axis_segment = false;
        out.max_residual = 0.0;

        V2 p = job_.start;
        Probe here = fld_(p, 1);
        record(out, p, here.f);

        V2 tangent = unit(job_.dir);
        double h = 1e-2;
        double length = 0.0;

        while (true) {
            V2 t_here = unit(perp(here.g));
            if (dot(t_here, tangent) < 0.0) t_here = -1.0 * t_here;

            V2 cand = p + h * t_here;
            // The surface event acts on the raw predictor: corrections
            // straddling y = 0 would fight the half-plane clamp.
            if (cand.y > -1e-6 && length > 0.0) {
                project_onto_surface(out, p, cand);
                return out;
            }
            Probe probe{};
            int used = correct(&cand, h, &probe);
            if (used < 0 || norm(cand - p) > 1.3 * h) {
                if (h > kStepMin * (1 + 1e-12)) {
                    h = std::max(0.5 * h, kStepMin);
                    continue;
                }
                if (finish_at_stagnation(out, p, length)) return out;
                char msg[128];
                std::snprintf(msg, sizeof msg,
                              "continuation stalled near (%.6f, %.6f) away "
                              "from a matching-level stagnation point",
                              p.x, p.y);
                throw StallAtStagnation(msg);
            }

            if ((p.x > 0) != (cand.x > 0) || cand.x == 0.0) {
                if (cross_axis(out, p, cand, length)) return out;
            }
            if (norm(probe.g) < kGradStall &&
                try_snap(out, cand, length)) return out;
            if (job_.clip) {
                V2 q;
                if (clip_hit(p, cand, &q)) {
                    push_endpoint(out, q, EndpointKind::ON_BOTTOM);
                    return out;
                }
            }

            length += norm(cand - p);
            if (length > kLengthBudget)
                throw BudgetExceeded("level-curve arc length exceeded budget");
            tangent = unit(cand - p);
            p = cand;
            here = probe;
            record(out, p, probe.f);

            if (used <= 2)
                h = std::min(2.0 * h, kStepMax);
            else if (used > 4)
                h = std::max(0.5 * h, kStepMin);
        }
    }

  private:
    void record(LevelCurve& out, V2 p, double value) {
        out.vertices.push_back(pt(p));
        out.max_residual =
            std::max(out.max_residual, std::abs(value - job_.level));
    }

    // Replaces trailing vertices closer than the spacing floor, then appends.
    void push_endpoint(LevelCurve& out, V2 q, EndpointKind kind) {
        while (out.vertices.size() > 1 &&
               norm(q - vec(out.vertices.back())) < kStepMin)
            out.vertices.pop_back();
        out.vertices.push_back(pt(q));
        out.end_kind = kind;
    }

    // Newton correction back onto the level set along the gradient.
    // Returns the number of iterations, or -1 on failure.
    int correct(V2* p, double h, Probe* last) {
        for (int i = 0; i <= 8; ++i) {
            if (p->y > 0.0) p->y = 0.0;
            *last = fld_(*p, 1);
            double err = last->f - job_.level;
            if (std::abs(err) < kCorrectorTol) return i;
            double g2 = dot(last->g, last->g);
            if (g2 == 0.0) return -1;
            V2 step = (-err / g2) * last->g;
            double sn = norm(step);
            if (sn > h) step = (h / sn) * step;
            *p = *p + step;
        }
        return -1;
    }

    void project_onto_surface(LevelCurve& out, V2 p, V2 cand) {
        // Root solve along x at y = 0; the trace identities give the exact
        // in-surface slope.
        double x = cand.x;
        for (int i = 0; i < 60; ++i) {
            double f = fld_.trace_value(x) - job_.level;
            double df = fld_.trace_slope(x);
            if (std::abs(df) < 1e-14) break;
            double dx = f / df;
            x -= dx;
            if (std::abs(dx) < 1e-13) break;
        }
        if (std::abs(fld_.trace_value(x) - job_.level) > 1e-8 ||
            std::abs(x - cand.x) > 0.2)
            throw AssemblyFailure(
                "surface projection failed to land on the trace level");
        (void)p;
        push_endpoint(out, {x, 0.0}, EndpointKind::ON_FREE_SURFACE);
    }

    // Handles an x-sign change. Returns true when the curve genuinely ends
    // on the axis; a degenerate solve falls through to the stagnation snap.
    bool cross_axis(LevelCurve& out, V2 p, V2 cand, double length) {
        double t = p.x / (p.x - cand.x);
        double y = p.y + t * (cand.y - p.y);
        Probe q = fld_({0.0, y}, 1);
        if (std::abs(q.f - job_.level) < 1e-12 && std::abs(q.g.y) < 1e-12) {
            // The axis itself sits on the level set: the crossing must be a
            // stagnation point, not a transversal intersection.
            if (finish_at_stagnation(out, p, length)) return true;
            throw StallAtStagnation(
                "level curve met the axis outside a stagnation point");
        }
        for (int i = 0; i < 60; ++i) {
            q = fld_({0.0, y}, 1);
            double err = q.f - job_.level;
            if (std::abs(q.g.y) < 1e-14) break;
            double dy = err / q.g.y;
            y -= dy;
            if (std::abs(dy) < 1e-13) break;
        }
        if (std::abs(fld_({0.0, y}, 1).f - job_.level) > 1e-8)
            throw AssemblyFailure("axis projection failed to converge");
        push_endpoint(out, {0.0, y}, EndpointKind::ON_Y_AXIS);
        return true;
    }

    // Attempts to locate a nearby matching-level critical point and snap the
    // endpoint onto it.
    bool try_snap(LevelCurve& out, V2 cand, double length) {
        if (!saddle_ || norm(cand - saddle_->location) > 0.3)
            saddle_ = critical_newton(fld_, cand, 50, 1e-9);
        if (!saddle_) return false;
        if (job_.origin_saddle && length < 0.1 &&
            norm(saddle_->location - *job_.origin_saddle) < 1e-3)
            return false;
        if (std::abs(saddle_->value - job_.level) > 1e-6) return false;
        if (norm(saddle_->location - cand) > kSnapRadius) return false;
        push_endpoint(out, saddle_->location, EndpointKind::AT_STAGNATION);
        return true;
    }

    bool finish_at_stagnation(LevelCurve& out, V2 p, double length) {
        saddle_.reset();
        return try_snap(out, p, length);
    }

    bool clip_hit(V2 p, V2 cand, V2* q) {
        double best = 2.0;
        for (const LevelCurve* curve : *job_.clip) {
            const auto& vs = curve->vertices;
            for (size_t i = 0; i + 1 < vs.size(); ++i) {
                V2 hit;
                if (!segment_intersection(p, cand, vec(vs[i]), vec(vs[i + 1]),
                                          &hit))
                    continue;
                double t = norm(hit - p) / (norm(cand - p) + 1e-300);
                if (t > 1e-9 && t < best) {
                    best = t;
                    *q = hit;
                }
            }
        }
        return best < 1.5;
    }

    const Field& fld_;
    const TraceJob& job_;
    std::optional<CriticalPoint> saddle_;
};

LevelCurve run_trace(const Field& fld, const TraceJob& job) {
    return Tracer(fld, job).run();
}

LevelCurve reversed(LevelCurve c) {
    std::reverse(c.vertices.begin(), c.vertices.end());
    std::swap(c.begin_kind, c.end_kind);
    return c;
}

// Straight bottom piece along the y-axis, where v vanishes identically for
// the SUM family.
LevelCurve axis_segment(double y_from, double y_to, EndpointKind from_kind,
                        EndpointKind to_kind) {
    LevelCurve seg;
    seg.level = 0.0;
    seg.max_residual = 0.0;
    seg.begin_kind = from_kind;
    seg.end_kind = to_kind;
    seg.is_axis_segment = true;
    int n = std::max(1, (int)std::ceil(std::abs(y_to - y_from) / 4e-2));
    for (int i = 0; i <= n; ++i)
        seg.vertices.push_back({0.0, y_from + (y_to - y_from) * i / n});
    return seg;
}

// Tangent of the level line at a free-surface point, oriented into the
// lower half-plane.
V2 downward_dir(const Mode& mode, double x, const QuadratureConfig& cfg) {
    TraceValues t = eval_trace(mode, x, cfg);
    V2 g{t.vx, t.vy};
    V2 d = perp(g);
    if (d.y > 0) d = -1.0 * d;
    if (d.y == 0.0)
        throw AssemblyFailure("level line tangential to the free surface");
    return unit(d);
}

// The two level-set branch directions at a saddle: directions d with
// d^T H d = 0. For a trace-free symmetric Hessian they are orthogonal.
std::array<V2, 2> saddle_branch_dirs(const SymMat2& h) {
    double phi = std::atan2(h.xy, 0.5 * (h.xx - h.yy));
    double t1 = 0.5 * phi + kPi / 4.0;
    double t2 = 0.5 * phi - kPi / 4.0;
    return {V2{std::cos(t1), std::sin(t1)}, V2{std::cos(t2), std::sin(t2)}};
}

// Seed point for a branch: offset 1e-4 from the saddle along `dir`, then
// rotated on the circle of that radius until the level residual vanishes.
V2 saddle_seed(const Field& fld, V2 s, V2 dir, double level) {
    constexpr double r0 = 1e-4;
    double a = std::atan2(dir.y, dir.x);
    for (int i = 0; i < 30; ++i) {
        V2 p = s + r0 * V2{std::cos(a), std::sin(a)};
        Probe q = fld(p, 1);
        double err = q.f - level;
        if (std::abs(err) < 1e-13) break;
        double da = dot(q.g, r0 * V2{-std::sin(a), std::cos(a)});
        if (std::abs(da) < 1e-18) break;
        a -= err / da;
    }
    return s + r0 * V2{std::cos(a), std::sin(a)};
}

void require_case_mode(const Mode& mode, Family fam, double nu) {
    if (mode.family != fam || std::abs(mode.nu - nu) > 1e-12)
        throw OutOfRange("case tag does not match the supplied mode");
}

void check_junction(Point2 a, Point2 b) {
    if (std::hypot(a.x - b.x, a.y - b.y) > 1e-6)
        throw AssemblyFailure("boundary pieces do not close within 1e-6");
}

void validate_domain(const SloshingDomain& d) {
    if (!(d.fs_left < d.fs_right) || d.fs_left < -kPi + 1e-9 ||
        d.fs_right > kPi - 1e-9)
        throw AssemblyFailure("free surface must lie inside (-pi, pi)");
    if (d.bottom.empty()) throw AssemblyFailure("domain has no bottom");
    check_junction(d.bottom.front().vertices.front(), {d.fs_right, 0.0});
    check_junction(d.bottom.back().vertices.back(), {d.fs_left, 0.0});
    for (size_t i = 0; i + 1 < d.bottom.size(); ++i)
        check_junction(d.bottom[i].vertices.back(),
                       d.bottom[i + 1].vertices.front());
    if (!polyline_is_simple(boundary_polygon(d), true))
        throw AssemblyFailure("domain boundary is not simple");
}

// Saddle-funnel assembly shared by the three level-line cases: traces the
// level-set branches through the saddle and keeps the pair enclosing the
// region with v < level that opens onto the free surface.
SloshingDomain build_funnel(const Mode& mode, CaseTag tag,
                            const ScanWindow& window,
                            const QuadratureConfig& cfg) {
    auto seeds = seed_scan(mode, window, 24, cfg);
    if (seeds.empty())
        throw AssemblyFailure("no stagnation seed found in the case window");
    StagnationPoint sp = find_stagnation_point(mode, seeds.front(), cfg);

    Field fv{&mode, &cfg, Scalar::V};
    V2 s = vec(sp.location);
    SymMat2 h = eval_hessian_v(mode, sp.location, cfg);
    auto dirs = saddle_branch_dirs(h);

    bool on_axis = std::abs(s.x) < 1e-9;
    std::vector<LevelCurve> branches;
    for (V2 d0 : {dirs[0], -1.0 * dirs[0], dirs[1], -1.0 * dirs[1]}) {
        // An on-axis saddle has mirror branches in x < 0; skip them.
        if (on_axis && d0.x <= 0.0) continue;
        TraceJob job;
        job.level = sp.level;
        job.start = saddle_seed(fv, s, d0, sp.level);
        job.dir = d0;
        job.begin_kind = EndpointKind::AT_STAGNATION;
        job.origin_saddle = s;
        try {
            LevelCurve br = run_trace(fv, job);
            if (br.end_kind == EndpointKind::ON_FREE_SURFACE) {
                br.vertices.front() = sp.location;  // pin seed to the saddle
                branches.push_back(std::move(br));
            }
        } catch (const StallAtStagnation&) {
            // A branch wandering off toward foreign critical points cannot
            // bound the funnel.
        } catch (const BudgetExceeded&) {
        } catch (const AssemblyFailure&) {
        }
    }
    if (branches.size() < 2)
        throw AssemblyFailure(
            "fewer than two saddle branches reach the free surface");
    std::sort(branches.begin(), branches.end(),
              [](const LevelCurve& a, const LevelCurve& b) {
                  return a.vertices.back().x < b.vertices.back().x;
              });

    // Funnel mouth test: between the walls' surface endpoints the trace must
    // sit strictly below the level, with no third branch ending in between.
    // Pockets left of the saddle mirror deeper structure and are not the
    // funnel this construction is after.
    auto mouth_ok = [&](double xl, double xr) {
        if (xl < s.x - 1e-9) return false;
        for (const LevelCurve& b : branches) {
            double xe = b.vertices.back().x;
            if (xe > xl + 1e-9 && xe < xr - 1e-9) return false;
        }
        for (int k = 1; k <= 5; ++k) {
            double x = xl + (xr - xl) * k / 6.0;
            if (eval_trace_v(mode, x, cfg) >= sp.level) return false;
        }
        return true;
    };

    const LevelCurve* left = nullptr;
    const LevelCurve* right = nullptr;
    for (size_t i = 0; i < branches.size(); ++i)
        for (size_t j = i + 1; j < branches.size(); ++j) {
            double xl = branches[i].vertices.back().x;
            double xr = branches[j].vertices.back().x;
            if (!(xl < xr) || !mouth_ok(xl, xr)) continue;
            if (left)
                throw AssemblyFailure(
                    "saddle branches bound more than one surface pocket");
            left = &branches[i];
            right = &branches[j];
        }
    if (!left)
        throw AssemblyFailure(
            "no pair of saddle branches encloses a below-level pocket");

    SloshingDomain d;
    d.mode = mode;
    d.case_tag = tag;
    d.level = sp.level;
    d.fs_left = left->vertices.back().x;
    d.fs_right = right->vertices.back().x;
    d.bottom.push_back(reversed(*right));
    d.bottom.push_back(*left);
    d.corners.push_back(sp.location);
    d.stagnation_points.push_back(sp);
    validate_domain(d);
    return d;
}

}  // namespace

StagnationPoint find_stagnation_point(const Mode& mode, Point2 guess,
                                      const QuadratureConfig& cfg) {
    if (guess.y >= 0.0)
        throw OutOfRange("stagnation guess must lie in the lower half-plane");
    Field fv{&mode, &cfg, Scalar::V};
    auto cp = critical_newton(fv, vec(guess), 50, 1e-9);
    if (!cp)
        throw NoConvergence(
            "stagnation Newton did not reach |grad v| < 1e-9 in 50 steps");
    if (!(cp->det < 0.0))
        throw NotASaddle("critical point has non-negative Hessian determinant");
    return {pt(cp->location), cp->value, cp->det};
}

std::vector<Point2> seed_scan(const Mode& mode, const ScanWindow& window,
                              int grid_n, const QuadratureConfig& cfg) {
    if (window.y_max >= 0.0 || window.y_min >= window.y_max ||
        window.x_min >= window.x_max || grid_n < 3)
        throw OutOfRange("seed scan window must be a box below y = 0");
    int n = grid_n;
    std::vector<double> g((n + 1) * (n + 1));
    auto at = [&](int i, int j) -> double& { return g[i * (n + 1) + j]; };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            Point2 p{window.x_min + (window.x_max - window.x_min) * i / n,
                     window.y_min + (window.y_max - window.y_min) * j / n};
            Gradient2 gr = eval_grad_v(mode, p, cfg);
            at(i, j) = std::hypot(gr.dx, gr.dy);
        }
    // |grad v| is the modulus of an analytic function, so interior local
    // minima of the grid can only hug genuine critical points.
    std::vector<Point2> seeds;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj)
                    if ((di || dj) && at(i + di, j + dj) <= at(i, j)) {
                        is_min = false;
                        break;
                    }
            if (is_min)
                seeds.push_back(
                    {window.x_min + (window.x_max - window.x_min) * i / n,
                     window.y_min + (window.y_max - window.y_min) * j / n});
        }
    std::sort(seeds.begin(), seeds.end(), [](Point2 a, Point2 b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return seeds;
}

LevelCurve trace_level_curve(const Mode& mode, Point2 start, double level,
                             Point2 direction, const QuadratureConfig& cfg) {
    Field fv{&mode, &cfg, Scalar::V};
    double v0 = start.y == 0.0 ? eval_trace_v(mode, start.x, cfg)
                               : eval_v(mode, start, cfg);
    if (std::abs(v0 - level) > 1e-8)
        throw OutOfRange("trace start point is not on the requested level");
    TraceJob job;
    job.level = level;
    job.start = vec(start);
    job.dir = unit(vec(direction));
    job.begin_kind = start.y == 0.0 ? EndpointKind::ON_FREE_SURFACE
                    : start.x == 0.0 ? EndpointKind::ON_Y_AXIS
                                     : EndpointKind::OPEN;
    if (start.y < 0.0) {
        // Starting inside a stagnation neighbourhood means the caller wants
        // the branch leaving it, not an instant snap back.
        Gradient2 g = eval_grad_v(mode, start, cfg);
        if (std::hypot(g.dx, g.dy) < kGradStall) {
            job.origin_saddle = vec(start);
            job.begin_kind = EndpointKind::AT_STAGNATION;
        }
    }
    return run_trace(fv, job);
}

double find_surface_zero(const Mode& mode, double level, double lo, double hi,
                         const QuadratureConfig& cfg) {
    auto g = [&](double x) { return eval_trace_v(mode, x, cfg) - level; };
    double glo = g(lo), ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0) == (ghi > 0))
        throw NoSignChange("no sign change of v(x,0) - level over bracket");
    while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    // Newton polish; v_x = -nu u on the trace.
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 8; ++i) {
        TraceValues t = eval_trace(mode, x, cfg);
        if (std::abs(t.vx) < 1e-14) break;
        double dx = (t.v - level) / t.vx;
        double nx = x - dx;
        if (nx < lo - 1e-8 || nx > hi + 1e-8) break;
        x = nx;
        if (std::abs(dx) < 1e-14) break;
    }
    return x;
}

SloshingDomain build_domain(const Mode& mode, CaseTag tag,
                            const QuadratureConfig& cfg) {
    switch (tag) {
        case CaseTag::W32: {
            require_case_mode(mode, Family::SUM, 1.5);
            double x0 = find_surface_zero(mode, 0.0, 0.5, 3.05, cfg);
            LevelCurve arc = trace_level_curve(
                mode, {x0, 0.0}, 0.0, pt(downward_dir(mode, x0, cfg)), cfg);
            if (arc.end_kind != EndpointKind::AT_STAGNATION)
                throw AssemblyFailure(
                    "nodal arc did not terminate at the axis stagnation point");
            Point2 s = arc.vertices.back();
            SloshingDomain d;
            d.mode = mode;
            d.case_tag = tag;
            d.level = 0.0;
            d.fs_left = 0.0;
            d.fs_right = x0;
            d.stagnation_points.push_back(
                find_stagnation_point(mode, s, cfg));
            d.corners.push_back(s);
            d.bottom.push_back(std::move(arc));
            d.bottom.push_back(axis_segment(s.y, 0.0,
                                            EndpointKind::AT_STAGNATION,
                                            EndpointKind::ON_FREE_SURFACE));
            validate_domain(d);
            return d;
        }
        case CaseTag::W32_PRIME: {
            SloshingDomain d = mirror_domain(build_domain(mode, CaseTag::W32, cfg));
            d.case_tag = CaseTag::W32_PRIME;
            return d;
        }
        case CaseTag::W52:
        case CaseTag::W52_COMPANION: {
            require_case_mode(mode, Family::SUM, 2.5);
            double z1 = find_surface_zero(mode, 0.0, 0.6, 1.8, cfg);
            LevelCurve inner = trace_level_curve(
                mode, {z1, 0.0}, 0.0, pt(downward_dir(mode, z1, cfg)), cfg);
            if (inner.end_kind != EndpointKind::AT_STAGNATION)
                throw AssemblyFailure("inner arc missed its stagnation point");
            Point2 sa = inner.vertices.back();
            SloshingDomain d;
            d.mode = mode;
            d.case_tag = tag;
            d.level = 0.0;
            if (tag == CaseTag::W52_COMPANION) {
                d.fs_left = 0.0;
                d.fs_right = z1;
                d.stagnation_points.push_back(
                    find_stagnation_point(mode, sa, cfg));
                d.corners.push_back(sa);
                d.bottom.push_back(std::move(inner));
                d.bottom.push_back(axis_segment(
                    sa.y, 0.0, EndpointKind::AT_STAGNATION,
                    EndpointKind::ON_FREE_SURFACE));
            } else {
                double z2 = find_surface_zero(mode, 0.0, 1.8, 3.05, cfg);
                LevelCurve outer = trace_level_curve(
                    mode, {z2, 0.0}, 0.0, pt(downward_dir(mode, z2, cfg)),
                    cfg);
                if (outer.end_kind != EndpointKind::AT_STAGNATION)
                    throw AssemblyFailure(
                        "outer arc missed its stagnation point");
                Point2 sb = outer.vertices.back();
                if (!(sb.y < sa.y))
                    throw AssemblyFailure(
                        "outer arc should meet the axis below the inner arc");
                d.fs_left = z1;
                d.fs_right = z2;
                d.stagnation_points.push_back(
                    find_stagnation_point(mode, sb, cfg));
                d.stagnation_points.push_back(
                    find_stagnation_point(mode, sa, cfg));
                d.corners.push_back(sb);
                d.corners.push_back(sa);
                d.bottom.push_back(std::move(outer));
                d.bottom.push_back(axis_segment(
                    sb.y, sa.y, EndpointKind::AT_STAGNATION,
                    EndpointKind::AT_STAGNATION));
                d.bottom.push_back(reversed(std::move(inner)));
            }
            validate_domain(d);
            return d;
        }
        case CaseTag::W72:
            require_case_mode(mode, Family::SUM, 3.5);
            return build_funnel(mode, tag, {0.6, 2.0, -2.6, -1.0}, cfg);
        case CaseTag::W3:
            require_case_mode(mode, Family::DIFF, 3.0);
            return build_funnel(mode, tag, {0.5, 1.8, -2.8, -1.2}, cfg);
        case CaseTag::W2:
            require_case_mode(mode, Family::DIFF, 2.0);
            return build_funnel(mode, tag, {-0.4, 0.8, -3.3, -2.0}, cfg);
        case CaseTag::SMOOTH_VARIANT:
            throw OutOfRange(
                "smooth variants carry a level parameter; use smooth_variant()");
    }
    throw OutOfRange("unknown case tag");
}

std::vector<HighSpot> find_high_spots(const SloshingDomain& domain,
                                      const QuadratureConfig& cfg) {
    const Mode& mode = domain.mode;
    double xl = domain.fs_left, xr = domain.fs_right;
    auto slope = [&](double x) { return eval_trace(mode, x, cfg); };

    std::vector<HighSpot> spots;
    auto classify = [&](double x, bool interior, double ux_hint) {
        TraceValues t = slope(x);
        HighSpot h;
        h.x = x;
        h.interior = interior;
        h.trace_value = t.u;
        h.degenerate = false;
        if (interior || std::abs(t.ux) < 1e-9) {
            if (std::abs(t.uxx) < 1e-9) {
                h.degenerate = true;
                h.kind = t.uxx <= 0 ? SpotKind::MAX : SpotKind::MIN;
            } else {
                h.kind = t.uxx < 0 ? SpotKind::MAX : SpotKind::MIN;
            }
        } else {
            // One-sided endpoint extremum.
            bool right_end = x >= 0.5 * (xl + xr);
            bool rising = ux_hint > 0;
            h.kind = (right_end == rising) ? SpotKind::MAX : SpotKind::MIN;
        }
        spots.push_back(h);
    };

    // Dense derivative scan between the endpoints.
    const int n = 1600;
    double margin = 1e-9 * std::max(1.0, std::abs(xr));
    double a = xl + margin, b = xr - margin;
    double prev_x = a, prev_ux = slope(a).ux;
    std::vector<double> roots;
    for (int i = 1; i <= n; ++i) {
        double x = a + (b - a) * i / n;
        double ux = slope(x).ux;
        if (prev_ux == 0.0) {
            roots.push_back(prev_x);
        } else if ((prev_ux > 0) != (ux > 0)) {
            double lo = prev_x, hi = x, flo = prev_ux;
            while (hi - lo > 1e-9) {
                double mid = 0.5 * (lo + hi);
                double fm = slope(mid).ux;
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm > 0) == (flo > 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            double r = 0.5 * (lo + hi);
            for (int k = 0; k < 4; ++k) {
                TraceValues t = slope(r);
                if (std::abs(t.uxx) < 1e-14) break;
                double dr = t.ux / t.uxx;
                if (std::abs(dr) > 1e-6) break;
                r -= dr;
            }
            roots.push_back(r);
        }
        prev_x = x;
        prev_ux = ux;
    }
    // Merge near-duplicates.
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double p, double q) {
                                return std::abs(p - q) < 1e-7;
                            }),
                roots.end());

    classify(xl, false, slope(xl).ux);
    for (double r : roots) classify(r, true, 0.0);
    classify(xr, false, slope(xr).ux);
    std::sort(spots.begin(), spots.end(),
              [](const HighSpot& p, const HighSpot& q) { return p.x < q.x; });
    return spots;
}

LevelCurve trace_u_nodal_line(const SloshingDomain& domain,
                              const QuadratureConfig& cfg) {
    const Mode& mode = domain.mode;
    Field fu{&mode, &cfg, Scalar::U};

    // Locate the sign change of u(x,0) on F.
    const int n = 800;
    double margin = 1e-7;
    double a = domain.fs_left + margin, b = domain.fs_right - margin;
    double x_root = 0.0;
    bool found = false;
    double prev_x = a, prev_u = eval_trace_u(mode, a, cfg);
    for (int i = 1; i <= n && !found; ++i) {
        double x = a + (b - a) * i / n;
        double u = eval_trace_u(mode, x, cfg);
        if ((prev_u > 0) != (u > 0)) {
            double lo = prev_x, hi = x, flo = prev_u;
            while (hi - lo > 1e-11) {
                double mid = 0.5 * (lo + hi);
                double fm = eval_trace_u(mode, mid, cfg);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm > 0) == (flo > 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            x_root = 0.5 * (lo + hi);
            found = true;
        }
        prev_x = x;
        prev_u = u;
    }
    if (!found)
        throw NoSurfaceZero("u(x,0) does not change sign on the free surface");

    TraceValues t = eval_trace(mode, x_root, cfg);
    V2 g{t.ux, t.uy};
    V2 dir = perp(g);
    if (dir.y > 0) dir = -1.0 * dir;

    std::vector<const LevelCurve*> clip;
    for (const LevelCurve& c : domain.bottom)
        if (!c.is_axis_segment) clip.push_back(&c);

    TraceJob job;
    job.level = 0.0;
    job.start = {x_root, 0.0};
    job.dir = unit(dir);
    job.begin_kind = EndpointKind::ON_FREE_SURFACE;
    job.clip = &clip;
    return run_trace(fu, job);
}

double find_trace_min(const Mode& mode, const QuadratureConfig& cfg) {
    if (mode.family != Family::SUM)
        throw OutOfRange("trace minimum is defined for the SUM family");
    // Critical points of v(x,0) are roots of u(x,0) since v_x = -nu u.
    const int n = 3000;
    double a = 1e-3, b = kPi - 0.05;
    double best_x = 0.0, best_v = 0.0;
    bool found = false;
    double prev_x = a, prev_u = eval_trace_u(mode, a, cfg);
    for (int i = 1; i <= n; ++i) {
        double x = a + (b - a) * i / n;
        double u = eval_trace_u(mode, x, cfg);
        if ((prev_u > 0) != (u > 0)) {
            double lo = prev_x, hi = x, flo = prev_u;
            while (hi - lo > 1e-11) {
                double mid = 0.5 * (lo + hi);
                double fm = eval_trace_u(mode, mid, cfg);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm > 0) == (flo > 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            double r = 0.5 * (lo + hi);
            TraceValues t = eval_trace(mode, r, cfg);
            // Minimum of the v-trace: v_xx = -nu u_x > 0.
            if (-mode.nu * t.ux > 0.0 && (!found || t.v < best_v)) {
                best_x = r;
                best_v = t.v;
                found = true;
            }
        }
        prev_x = x;
        prev_u = u;
    }
    if (!found)
        throw NoInteriorMinimum("v(x,0) has no interior minimum for x > 0");
    return best_x;
}

BulbousReport check_bulbous(const SloshingDomain& domain,
                            const QuadratureConfig& cfg) {
    BulbousReport rep{};
    auto side = [&](double x_end, bool right) {
        SideVerdict v{};
        // A side whose adjacent bottom piece runs down the y-axis is
        // confined to the strip by construction.
        const LevelCurve& adj = right ? domain.bottom.front() : domain.bottom.back();
        if (adj.is_axis_segment) {
            v.on_axis = true;
            v.bulbous = false;
            v.slope = 0.0;
            return v;
        }
        TraceValues t = eval_trace(domain.mode, x_end, cfg);
        if (std::abs(t.vy) < 1e-12)
            throw DegenerateGradient(
                "v_y vanishes at a free-surface endpoint");
        v.slope = -t.vx / t.vy;
        v.bulbous = right ? v.slope < 0.0 : v.slope > 0.0;
        return v;
    };
    rep.right = side(domain.fs_right, true);
    rep.left = side(domain.fs_left, false);

    double max_x = domain.fs_right, min_x = domain.fs_left;
    for (const LevelCurve& c : domain.bottom)
        for (const Point2& p : c.vertices) {
            max_x = std::max(max_x, p.x);
            min_x = std::min(min_x, p.x);
        }
    rep.right.overhang = max_x - domain.fs_right;
    rep.left.overhang = domain.fs_left - min_x;
    return rep;
}

SloshingDomain smooth_variant(const Mode& mode, double c,
                              const QuadratureConfig& cfg) {
    require_case_mode(mode, Family::SUM, 1.5);
    double x_n = find_trace_min(mode, cfg);
    double v_min = eval_trace_v(mode, x_n, cfg);
    if (!(c > 0.0) || !(c < -v_min))
        throw LevelOutOfRange(
            "smooth-variant level must satisfy 0 < c < -min v(x,0)");
    double level = -c;
    double xl = find_surface_zero(mode, level, 1e-9, x_n, cfg);
    double xr = find_surface_zero(mode, level, x_n, 3.05, cfg);
    LevelCurve arc = trace_level_curve(mode, {xr, 0.0}, level,
                                       pt(downward_dir(mode, xr, cfg)), cfg);
    if (arc.end_kind != EndpointKind::ON_FREE_SURFACE ||
        std::abs(arc.vertices.back().x - xl) > 1e-6)
        throw AssemblyFailure(
            "smooth-variant level line did not return to the left endpoint");
    SloshingDomain d;
    d.mode = mode;
    d.case_tag = CaseTag::SMOOTH_VARIANT;
    d.level = level;
    d.fs_left = arc.vertices.back().x;
    d.fs_right = xr;
    d.bottom.push_back(std::move(arc));
    validate_domain(d);
    return d;
}

SloshingDomain mirror_domain(const SloshingDomain& domain) {
    SloshingDomain m;
    m.mode = domain.mode;
    m.case_tag = domain.case_tag;
    m.level = domain.level;
    m.fs_left = -domain.fs_right;
    m.fs_right = -domain.fs_left;
    for (auto it = domain.bottom.rbegin(); it != domain.bottom.rend(); ++it) {
        LevelCurve c = reversed(*it);
        for (Point2& p : c.vertices) p.x = -p.x;
        m.bottom.push_back(std::move(c));
    }
    m.corners = domain.corners;
    for (Point2& p : m.corners) p.x = -p.x;
    std::reverse(m.corners.begin(), m.corners.end());
    m.stagnation_points = domain.stagnation_points;
    for (StagnationPoint& s : m.stagnation_points) s.location.x = -s.location.x;
    std::reverse(m.stagnation_points.begin(), m.stagnation_points.end());
    return m;
}

bool polyline_is_simple(const std::vector<Point2>& pts, bool closed) {
    size_t n = pts.size();
    if (n < 3) return true;
    size_t m = closed ? n : n - 1;  // segment i spans pts[i], pts[(i+1)%n]
    auto seg = [&](size_t i, V2* a, V2* b) {
        *a = vec(pts[i]);
        *b = vec(pts[(i + 1) % n]);
    };
    for (size_t i = 0; i < m; ++i) {
        V2 a, b;
        seg(i, &a, &b);
        for (size_t j = i + 2; j < m; ++j) {
            if (i == 0 && closed && j == m - 1) continue;  // shared endpoint
            V2 c, d;
            seg(j, &c, &d);
            // Cheap reject before the exact test.
            if (std::max(c.x, d.x) < std::min(a.x, b.x) - 1e-12 ||
                std::max(a.x, b.x) < std::min(c.x, d.x) - 1e-12 ||
                std::max(c.y, d.y) < std::min(a.y, b.y) - 1e-12 ||
                std::max(a.y, b.y) < std::min(c.y, d.y) - 1e-12)
                continue;
            V2 q;
            if (segment_intersection(a, b, c, d, &q)) return false;
        }
    }
    return true;
}

bool point_in_polygon(Point2 p, const std::vector<Point2>& poly) {
    bool inside = false;
    size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        double yi = poly[i].y, yj = poly[j].y;
        if ((yi > p.y) == (yj > p.y)) continue;
        double x_cross =
            poly[j].x + (p.y - yj) / (yi - yj) * (poly[i].x - poly[j].x);
        if (p.x < x_cross) inside = !inside;
    }
    return inside;
}

std::vector<Point2> boundary_polygon(const SloshingDomain& domain) {
    std::vector<Point2> poly;
    poly.push_back({domain.fs_left, 0.0});
    poly.push_back({domain.fs_right, 0.0});
    for (const LevelCurve& c : domain.bottom)
        for (size_t i = 1; i < c.vertices.size(); ++i)
            poly.push_back(c.vertices[i]);
    // The last bottom vertex coincides with the free-surface left endpoint.
    if (!poly.empty() &&
        std::hypot(poly.back().x - domain.fs_left, poly.back().y) < 1e-9)
        poly.pop_back();
    return poly;
}

}  // namespace sloshspot
