#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sloshspot/geometry.hpp"
#include "sloshspot/kernel.hpp"

using namespace sloshspot;

namespace {

const Mode kSum32 = make_mode(1.5, Family::SUM);
const Mode kSum52 = make_mode(2.5, Family::SUM);
const Mode kSum72 = make_mode(3.5, Family::SUM);
const Mode kDiff3 = make_mode(3.0, Family::DIFF);
const Mode kDiff2 = make_mode(2.0, Family::DIFF);

double spacing_max(const LevelCurve& c) {
    double worst = 0.0;
    for (std::size_t i = 1; i < c.vertices.size(); ++i) {
        double dx = c.vertices[i].x - c.vertices[i - 1].x;
        double dy = c.vertices[i].y - c.vertices[i - 1].y;
        worst = std::max(worst, std::hypot(dx, dy));
    }
    return worst;
}

const HighSpot* interior_spot(const std::vector<HighSpot>& spots,
                              SpotKind kind) {
    for (const HighSpot& h : spots)
        if (h.interior && h.kind == kind) return &h;
    return nullptr;
}

}  // namespace

TEST_CASE("polyline simplicity predicate") {
    std::vector<Point2> square = {{0, 0}, {1, 0}, {1, -1}, {0, -1}};
    CHECK(polyline_is_simple(square, false));
    CHECK(polyline_is_simple(square, true));
    std::vector<Point2> bowtie = {{0, 0}, {1, -1}, {1, 0}, {0, -1}};
    CHECK_FALSE(polyline_is_simple(bowtie, false));
    CHECK_FALSE(polyline_is_simple(bowtie, true));
    // open zigzag is simple, but the closing edge cuts across it
    std::vector<Point2> zigzag = {{0, 0}, {1, -1}, {2, 0}, {3, -1}};
    CHECK(polyline_is_simple(zigzag, false));
    CHECK_FALSE(polyline_is_simple(zigzag, true));
}

TEST_CASE("point-in-polygon on a unit box") {
    std::vector<Point2> box = {{0, 0}, {1, 0}, {1, -1}, {0, -1}};
    CHECK(point_in_polygon({0.5, -0.5}, box));
    CHECK_FALSE(point_in_polygon({1.5, -0.5}, box));
    CHECK_FALSE(point_in_polygon({0.5, 0.5}, box));
}

TEST_CASE("free-surface root bracketing") {
    double x0 = find_surface_zero(kSum32, 0.0, 0.5, 3.05);
    CHECK(x0 == doctest::Approx(2.132704154).epsilon(1e-8));
    CHECK(std::abs(eval_trace_v(kSum32, x0)) < 1e-9);
    CHECK_THROWS_AS(find_surface_zero(kSum32, 0.0, 2.5, 3.0), NoSignChange);
}

TEST_CASE("stagnation point search certifies a saddle") {
    StagnationPoint sp = find_stagnation_point(kSum72, {1.2, -1.8});
    CHECK(sp.location.x == doctest::Approx(1.173016570).epsilon(1e-7));
    CHECK(sp.location.y == doctest::Approx(-1.783781601).epsilon(1e-7));
    CHECK(sp.level == doctest::Approx(-0.023145297).epsilon(1e-6));
    CHECK(sp.hessian_det < 0.0);
    Gradient2 g = eval_grad_v(kSum72, sp.location);
    CHECK(std::hypot(g.dx, g.dy) < 1e-8);
    CHECK_THROWS_AS(find_stagnation_point(kSum72, {0.3, 0.5}, {}), Error);
}

TEST_CASE("seed scan flags the known saddle") {
    std::vector<Point2> seeds =
        seed_scan(kSum72, {0.6, 2.0, -2.6, -1.0}, 24);
    REQUIRE(!seeds.empty());
    bool near = false;
    for (Point2 s : seeds)
        near = near || std::hypot(s.x - 1.173, s.y + 1.784) < 0.2;
    CHECK(near);
}

TEST_CASE("level-curve tracing from the surface to the axis saddle") {
    double x0 = find_surface_zero(kSum32, 0.0, 0.5, 3.05);
    LevelCurve arc = trace_level_curve(kSum32, {x0, 0.0}, 0.0, {0.0, -1.0});
    CHECK(arc.begin_kind == EndpointKind::ON_FREE_SURFACE);
    CHECK(arc.end_kind == EndpointKind::AT_STAGNATION);
    CHECK(arc.max_residual < 1e-8);
    // corrector motion and terminal snaps can stretch a step slightly past
    // the predictor cap
    CHECK(spacing_max(arc) < 0.12);
    // the arc lands on the axis stagnation point below the surface
    Point2 tail = arc.vertices.back();
    CHECK(std::abs(tail.x) < 1e-6);
    CHECK(tail.y == doctest::Approx(-4.646097027).epsilon(1e-6));
    for (Point2 p : arc.vertices) CHECK(p.y <= 0.0);
    // every fifth vertex re-checked against the field directly
    for (std::size_t i = 0; i < arc.vertices.size(); i += 5) {
        if (std::abs(arc.vertices[i].y) < 1e-12) continue;
        CHECK(std::abs(eval_v(kSum32, arc.vertices[i])) < 1e-8);
    }
}

TEST_CASE("tracing rejects a start point off the level set") {
    CHECK_THROWS_AS(
        trace_level_curve(kSum32, {1.0, -1.0}, 0.0, {0.0, -1.0}, {}), Error);
}

TEST_CASE("w32 nodal domain") {
    SloshingDomain d = build_domain(kSum32, CaseTag::W32);
    CHECK(d.case_tag == CaseTag::W32);
    CHECK(d.fs_left == 0.0);
    CHECK(d.fs_right == doctest::Approx(2.132704154).epsilon(1e-8));
    CHECK(d.level == 0.0);
    REQUIRE(d.bottom.size() == 2);
    CHECK_FALSE(d.bottom[0].is_axis_segment);
    CHECK(d.bottom[1].is_axis_segment);
    for (Point2 p : d.bottom[1].vertices) CHECK(p.x == 0.0);
    // the nodal arc meets the axis wall at the stagnation point; the
    // separatrices cross there, so the bottom has one genuine corner
    REQUIRE(d.corners.size() == 1);
    CHECK(std::abs(d.corners[0].x) < 1e-6);
    CHECK(d.corners[0].y == doctest::Approx(-4.646097027).epsilon(1e-6));
    REQUIRE(d.stagnation_points.size() == 1);
    CHECK(d.stagnation_points[0].location.y ==
          doctest::Approx(-4.646097027).epsilon(1e-6));

    std::vector<HighSpot> spots = find_high_spots(d);
    REQUIRE(spots.size() == 3);
    const HighSpot* hs = interior_spot(spots, SpotKind::MIN);
    REQUIRE(hs != nullptr);
    CHECK(hs->x == doctest::Approx(2.077836536).epsilon(1e-7));
    CHECK(hs->trace_value < 0.0);
    CHECK_FALSE(hs->degenerate);
    // spots come back sorted and the endpoints are flagged non-interior
    CHECK(spots.front().x == 0.0);
    CHECK_FALSE(spots.front().interior);
    CHECK(spots.back().x == doctest::Approx(d.fs_right).epsilon(1e-12));
    CHECK_FALSE(spots.back().interior);
}

TEST_CASE("w32 mirror image") {
    SloshingDomain d = build_domain(kSum32, CaseTag::W32);
    SloshingDomain m = build_domain(kSum32, CaseTag::W32_PRIME);
    CHECK(m.fs_left == doctest::Approx(-d.fs_right).epsilon(1e-12));
    CHECK(m.fs_right == 0.0);
    SloshingDomain mm = mirror_domain(m);
    CHECK(mm.fs_right == doctest::Approx(d.fs_right).epsilon(1e-15));
    REQUIRE(mm.bottom.size() == d.bottom.size());
    CHECK(mm.bottom[0].vertices.size() == d.bottom[0].vertices.size());
    // mirroring is involutive bitwise
    SloshingDomain back = mirror_domain(mirror_domain(d));
    CHECK(back.fs_left == d.fs_left);
    CHECK(back.fs_right == d.fs_right);
    CHECK(back.bottom[0].vertices[5].x == d.bottom[0].vertices[5].x);
    CHECK(back.bottom[0].vertices[5].y == d.bottom[0].vertices[5].y);
}

TEST_CASE("w52 domain between the two nodal arcs") {
    SloshingDomain d = build_domain(kSum52, CaseTag::W52);
    CHECK(d.fs_left == doctest::Approx(1.249757220).epsilon(1e-8));
    CHECK(d.fs_right == doctest::Approx(2.539769077).epsilon(1e-8));
    REQUIRE(d.bottom.size() == 3);
    CHECK(d.bottom[1].is_axis_segment);
    CHECK(d.corners.size() == 2);
    std::vector<HighSpot> spots = find_high_spots(d);
    const HighSpot* mx = interior_spot(spots, SpotKind::MAX);
    const HighSpot* mn = interior_spot(spots, SpotKind::MIN);
    REQUIRE(mx != nullptr);
    REQUIRE(mn != nullptr);
    CHECK(mx->x == doctest::Approx(1.257428561).epsilon(1e-7));
    CHECK(mn->x == doctest::Approx(2.503159365).epsilon(1e-7));
    CHECK(mx->trace_value > 0.0);
    CHECK(mn->trace_value < 0.0);
}

TEST_CASE("w52 companion domain has boundary-only spots") {
    SloshingDomain d = build_domain(kSum52, CaseTag::W52_COMPANION);
    CHECK(d.fs_left == 0.0);
    CHECK(d.fs_right == doctest::Approx(1.249757220).epsilon(1e-8));
    std::vector<HighSpot> spots = find_high_spots(d);
    for (const HighSpot& h : spots) CHECK_FALSE(h.interior);
    REQUIRE(spots.size() == 2);
    CHECK(spots[0].kind == SpotKind::MIN);
    CHECK(spots[1].kind == SpotKind::MAX);
}

TEST_CASE("saddle-level funnel domains") {
    struct Want {
        const Mode* mode;
        CaseTag tag;
        double level, xl, xr, sx, sy;
    };
    const Want wants[] = {
        {&kSum72, CaseTag::W72, -0.023145297, 1.789875057, 2.711624918,
         1.173016570, -1.783781601},
        {&kDiff3, CaseTag::W3, -0.150898989, 1.564590667, 2.638760520,
         1.037867088, -1.946623142},
        {&kDiff2, CaseTag::W2, -0.185124858, 0.774529606, 2.387142646, 0.0,
         -2.664680882},
    };
    for (const Want& w : wants) {
        CAPTURE(static_cast<int>(w.tag));
        SloshingDomain d = build_domain(*w.mode, w.tag);
        CHECK(d.level == doctest::Approx(w.level).epsilon(1e-6));
        CHECK(d.fs_left == doctest::Approx(w.xl).epsilon(1e-7));
        CHECK(d.fs_right == doctest::Approx(w.xr).epsilon(1e-7));
        REQUIRE(d.stagnation_points.size() == 1);
        CHECK(d.stagnation_points[0].location.x ==
              doctest::Approx(w.sx).epsilon(1e-6).scale(1.0));
        CHECK(d.stagnation_points[0].location.y ==
              doctest::Approx(w.sy).epsilon(1e-6));
        // the funnel bottom closes at the saddle corner
        REQUIRE(d.corners.size() == 1);
        CHECK(d.corners[0].x ==
              doctest::Approx(w.sx).epsilon(1e-6).scale(1.0));
        REQUIRE(d.bottom.size() == 2);
        Point2 join_a = d.bottom[0].vertices.back();
        Point2 join_b = d.bottom[1].vertices.front();
        CHECK(std::hypot(join_a.x - join_b.x, join_a.y - join_b.y) < 1e-6);
        // boundary polygon is simple and contains an obvious interior point
        std::vector<Point2> poly = boundary_polygon(d);
        CHECK(polyline_is_simple(poly, true));
        CHECK(point_in_polygon({0.5 * (w.xl + w.xr), -0.2}, poly));
    }
}

TEST_CASE("case tag and mode must agree") {
    CHECK_THROWS_AS(build_domain(kSum52, CaseTag::W32), OutOfRange);
    CHECK_THROWS_AS(build_domain(kSum32, CaseTag::W2), OutOfRange);
    CHECK_THROWS_AS(build_domain(kSum32, CaseTag::SMOOTH_VARIANT), OutOfRange);
}

TEST_CASE("u-nodal lines") {
    SloshingDomain w32 = build_domain(kSum32, CaseTag::W32);
    LevelCurve n32 = trace_u_nodal_line(w32);
    CHECK(n32.begin_kind == EndpointKind::ON_FREE_SURFACE);
    CHECK(n32.end_kind == EndpointKind::ON_Y_AXIS);
    CHECK(n32.vertices.front().y == 0.0);
    CHECK(std::abs(n32.vertices.back().x) < 1e-6);
    CHECK(n32.vertices.back().y == doctest::Approx(-2.410721).epsilon(1e-4));
    for (std::size_t i = 0; i < n32.vertices.size(); i += 7) {
        Point2 p = n32.vertices[i];
        if (p.y < -1e-6)
            CHECK(std::abs(eval_u(kSum32, p)) < 1e-7);
    }

    SloshingDomain w2 = build_domain(kDiff2, CaseTag::W2);
    LevelCurve n2 = trace_u_nodal_line(w2);
    CHECK(n2.begin_kind == EndpointKind::ON_FREE_SURFACE);
    CHECK(n2.end_kind == EndpointKind::AT_STAGNATION);
    Point2 sp = w2.stagnation_points[0].location;
    CHECK(std::hypot(n2.vertices.back().x - sp.x,
                     n2.vertices.back().y - sp.y) < 1e-4);

    SloshingDomain w52 = build_domain(kSum52, CaseTag::W52);
    LevelCurve n52 = trace_u_nodal_line(w52);
    CHECK(n52.begin_kind == EndpointKind::ON_FREE_SURFACE);
    CHECK(n52.end_kind == EndpointKind::ON_BOTTOM);
}

TEST_CASE("trace minimum of v for the SUM family") {
    double xn = find_trace_min(kSum32);
    CHECK(xn == doctest::Approx(1.057458578).epsilon(1e-7));
    CHECK(eval_trace_v(kSum32, xn) ==
          doctest::Approx(-6.412421811).epsilon(1e-7));
    // critical points of the v-trace are u-roots
    CHECK(std::abs(eval_trace_u(kSum32, xn)) < 1e-8);
}

TEST_CASE("bulbous verdicts per side") {
    SloshingDomain w32 = build_domain(kSum32, CaseTag::W32);
    BulbousReport b32 = check_bulbous(w32);
    CHECK(b32.left.on_axis);
    CHECK_FALSE(b32.left.bulbous);
    CHECK(b32.right.bulbous);
    CHECK(b32.right.slope == doctest::Approx(-11.317879).epsilon(1e-4));
    CHECK(b32.right.overhang > 0.0);

    SloshingDomain w2 = build_domain(kDiff2, CaseTag::W2);
    BulbousReport b2 = check_bulbous(w2);
    CHECK(b2.left.bulbous);
    CHECK(b2.right.bulbous);
    CHECK(b2.left.slope > 0.0);
    CHECK(b2.right.slope < 0.0);

    SloshingDomain w52c = build_domain(kSum52, CaseTag::W52_COMPANION);
    BulbousReport bc = check_bulbous(w52c);
    CHECK(bc.left.on_axis);
    CHECK_FALSE(bc.right.bulbous);
    CHECK(bc.right.slope > 0.0);
}

TEST_CASE("smooth-bottom variant") {
    SloshingDomain d = smooth_variant(kSum32, 0.1);
    CHECK(d.case_tag == CaseTag::SMOOTH_VARIANT);
    CHECK(d.level == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(d.corners.empty());
    REQUIRE(d.bottom.size() == 1);
    CHECK(d.bottom[0].begin_kind == EndpointKind::ON_FREE_SURFACE);
    CHECK(d.bottom[0].end_kind == EndpointKind::ON_FREE_SURFACE);
    CHECK(d.fs_left > 0.0);
    CHECK(d.fs_right > d.fs_left);
    // bottom stays strictly below the surface away from its endpoints
    for (std::size_t i = 2; i + 2 < d.bottom[0].vertices.size(); ++i)
        CHECK(d.bottom[0].vertices[i].y < 0.0);
    // for small c the domain tracks the nodal one, so the interior
    // extremum survives just inside the shortened surface
    std::vector<HighSpot> spots = find_high_spots(d);
    const HighSpot* hs = interior_spot(spots, SpotKind::MIN);
    REQUIRE(hs != nullptr);
    CHECK(hs->x == doctest::Approx(2.077836536).epsilon(2e-2));
    CHECK(hs->x < d.fs_right);

    CHECK_THROWS_AS(smooth_variant(kSum32, 7.0), LevelOutOfRange);
    CHECK_THROWS_AS(smooth_variant(kSum32, -0.1), LevelOutOfRange);
    CHECK_THROWS_AS(smooth_variant(kSum32, 0.0), LevelOutOfRange);
}

TEST_CASE("domain assembly is deterministic") {
    SloshingDomain a = build_domain(kSum72, CaseTag::W72);
    SloshingDomain b = build_domain(kSum72, CaseTag::W72);
    CHECK(a.fs_left == b.fs_left);
    CHECK(a.fs_right == b.fs_right);
    REQUIRE(a.bottom.size() == b.bottom.size());
    for (std::size_t i = 0; i < a.bottom.size(); ++i) {
        REQUIRE(a.bottom[i].vertices.size() == b.bottom[i].vertices.size());
        for (std::size_t j = 0; j < a.bottom[i].vertices.size(); ++j) {
            CHECK(a.bottom[i].vertices[j].x == b.bottom[i].vertices[j].x);
            CHECK(a.bottom[i].vertices[j].y == b.bottom[i].vertices[j].y);
        }
    }
}
