#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sloshspot/geometry.hpp"
#include "sloshspot/kernel.hpp"
#include "sloshspot/serialize.hpp"
#include "sloshspot/verify.hpp"

namespace py = pybind11;
using namespace sloshspot;

PYBIND11_MODULE(_core, m) {
    m.doc() = "harmonic sloshing modes with interior high spots";

    py::enum_<Family>(m, "Family")
        .value("SUM", Family::SUM)
        .value("DIFF", Family::DIFF);

    py::enum_<CaseTag>(m, "CaseTag")
        .value("W32", CaseTag::W32)
        .value("W32_PRIME", CaseTag::W32_PRIME)
        .value("W52", CaseTag::W52)
        .value("W52_COMPANION", CaseTag::W52_COMPANION)
        .value("W72", CaseTag::W72)
        .value("W3", CaseTag::W3)
        .value("W2", CaseTag::W2)
        .value("SMOOTH_VARIANT", CaseTag::SMOOTH_VARIANT);

    py::enum_<EndpointKind>(m, "EndpointKind")
        .value("ON_FREE_SURFACE", EndpointKind::ON_FREE_SURFACE)
        .value("ON_Y_AXIS", EndpointKind::ON_Y_AXIS)
        .value("AT_STAGNATION", EndpointKind::AT_STAGNATION)
        .value("ON_BOTTOM", EndpointKind::ON_BOTTOM)
        .value("OPEN", EndpointKind::OPEN);

    py::enum_<SpotKind>(m, "SpotKind")
        .value("MAX", SpotKind::MAX)
        .value("MIN", SpotKind::MIN);

    py::class_<Mode>(m, "Mode")
        .def_readonly("nu", &Mode::nu)
        .def_readonly("family", &Mode::family)
        .def_readonly("sigma", &Mode::sigma);

    py::class_<Point2>(m, "Point2")
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readonly("x", &Point2::x)
        .def_readonly("y", &Point2::y)
        .def("__repr__", [](const Point2& p) {
            return "Point2(" + std::to_string(p.x) + ", " +
                   std::to_string(p.y) + ")";
        });

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
        .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
        .def_readwrite("max_panels", &QuadratureConfig::max_panels);

    py::class_<FieldValues>(m, "FieldValues")
        .def_readonly("u", &FieldValues::u)
        .def_readonly("v", &FieldValues::v)
        .def_readonly("ux", &FieldValues::ux)
        .def_readonly("uy", &FieldValues::uy)
        .def_readonly("vx", &FieldValues::vx)
        .def_readonly("vy", &FieldValues::vy)
        .def_readonly("uxx", &FieldValues::uxx)
        .def_readonly("uxy", &FieldValues::uxy)
        .def_readonly("uyy", &FieldValues::uyy);

    py::class_<TraceValues>(m, "TraceValues")
        .def_readonly("u", &TraceValues::u)
        .def_readonly("v", &TraceValues::v)
        .def_readonly("ux", &TraceValues::ux)
        .def_readonly("uy", &TraceValues::uy)
        .def_readonly("vx", &TraceValues::vx)
        .def_readonly("vy", &TraceValues::vy)
        .def_readonly("uxx", &TraceValues::uxx);

    py::class_<LevelCurve>(m, "LevelCurve")
        .def_readonly("level", &LevelCurve::level)
        .def_readonly("max_residual", &LevelCurve::max_residual)
        .def_readonly("begin_kind", &LevelCurve::begin_kind)
        .def_readonly("end_kind", &LevelCurve::end_kind)
        .def_readonly("is_axis_segment", &LevelCurve::is_axis_segment)
        .def("length", &LevelCurve::length)
        .def_property_readonly("vertices", [](const LevelCurve& c) {
            py::list out;
            for (const Point2& p : c.vertices)
                out.append(py::make_tuple(p.x, p.y));
            return out;
        });

    py::class_<StagnationPoint>(m, "StagnationPoint")
        .def_readonly("location", &StagnationPoint::location)
        .def_readonly("level", &StagnationPoint::level)
        .def_readonly("hessian_det", &StagnationPoint::hessian_det);

    py::class_<SloshingDomain>(m, "SloshingDomain")
        .def_readonly("mode", &SloshingDomain::mode)
        .def_readonly("fs_left", &SloshingDomain::fs_left)
        .def_readonly("fs_right", &SloshingDomain::fs_right)
        .def_readonly("bottom", &SloshingDomain::bottom)
        .def_readonly("corners", &SloshingDomain::corners)
        .def_readonly("case_tag", &SloshingDomain::case_tag)
        .def_readonly("level", &SloshingDomain::level)
        .def_readonly("stagnation_points", &SloshingDomain::stagnation_points);

    py::class_<HighSpot>(m, "HighSpot")
        .def_readonly("x", &HighSpot::x)
        .def_readonly("kind", &HighSpot::kind)
        .def_readonly("interior", &HighSpot::interior)
        .def_readonly("trace_value", &HighSpot::trace_value)
        .def_readonly("degenerate", &HighSpot::degenerate);

    py::class_<SideVerdict>(m, "SideVerdict")
        .def_readonly("bulbous", &SideVerdict::bulbous)
        .def_readonly("on_axis", &SideVerdict::on_axis)
        .def_readonly("slope", &SideVerdict::slope)
        .def_readonly("overhang", &SideVerdict::overhang);

    py::class_<BulbousReport>(m, "BulbousReport")
        .def_readonly("left", &BulbousReport::left)
        .def_readonly("right", &BulbousReport::right);

    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("check_name", &ResidualReport::check_name)
        .def_readonly("max_residual", &ResidualReport::max_residual)
        .def_readonly("sample_count", &ResidualReport::sample_count)
        .def_readonly("tolerance", &ResidualReport::tolerance)
        .def_readonly("pass_", &ResidualReport::pass);

    py::class_<ReferenceComparison>(m, "ReferenceComparison")
        .def_readonly("quantity", &ReferenceComparison::quantity)
        .def_readonly("reference_value", &ReferenceComparison::reference_value)
        .def_readonly("computed_value", &ReferenceComparison::computed_value)
        .def_readonly("abs_diff", &ReferenceComparison::abs_diff)
        .def_readonly("tolerance", &ReferenceComparison::tolerance)
        .def_readonly("source", &ReferenceComparison::source)
        .def("passed", &ReferenceComparison::pass);

    m.def("make_mode", &make_mode, py::arg("nu"), py::arg("family"));
    m.def(
        "eval_field",
        [](const Mode& mode, double x, double y, int order,
           const QuadratureConfig& cfg) {
            return eval_field(mode, {x, y}, order, cfg);
        },
        py::arg("mode"), py::arg("x"), py::arg("y"), py::arg("order") = 1,
        py::arg("cfg") = QuadratureConfig{});
    m.def("eval_trace", &eval_trace, py::arg("mode"), py::arg("x"),
          py::arg("cfg") = QuadratureConfig{});
    m.def("build_domain", &build_domain, py::arg("mode"), py::arg("tag"),
          py::arg("cfg") = QuadratureConfig{});
    m.def("smooth_variant", &smooth_variant, py::arg("mode"), py::arg("c"),
          py::arg("cfg") = QuadratureConfig{});
    m.def("mirror_domain", &mirror_domain, py::arg("domain"));
    m.def("find_high_spots", &find_high_spots, py::arg("domain"),
          py::arg("cfg") = QuadratureConfig{});
    m.def("trace_u_nodal_line", &trace_u_nodal_line, py::arg("domain"),
          py::arg("cfg") = QuadratureConfig{});
    m.def("check_bulbous", &check_bulbous, py::arg("domain"),
          py::arg("cfg") = QuadratureConfig{});
    m.def("find_trace_min", &find_trace_min, py::arg("mode"),
          py::arg("cfg") = QuadratureConfig{});
    m.def(
        "trace_level_curve",
        [](const Mode& mode, double x, double y, double level, double dx,
           double dy, const QuadratureConfig& cfg) {
            return trace_level_curve(mode, {x, y}, level, {dx, dy}, cfg);
        },
        py::arg("mode"), py::arg("x"), py::arg("y"), py::arg("level"),
        py::arg("dx"), py::arg("dy"), py::arg("cfg") = QuadratureConfig{});
    m.def(
        "find_stagnation_point",
        [](const Mode& mode, double x, double y, const QuadratureConfig& cfg) {
            return find_stagnation_point(mode, {x, y}, cfg);
        },
        py::arg("mode"), py::arg("x"), py::arg("y"),
        py::arg("cfg") = QuadratureConfig{});
    m.def("verify_domain", &verify_domain, py::arg("domain"),
          py::arg("cfg") = QuadratureConfig{});
    m.def("reference_report", &reference_report,
          py::arg("cases") = std::vector<CaseTag>{},
          py::arg("cfg") = QuadratureConfig{});
    m.def(
        "domain_json",
        [](const SloshingDomain& domain, const QuadratureConfig& cfg) {
            return domain_to_json(domain, find_high_spots(domain, cfg))
                .dump(2);
        },
        py::arg("domain"), py::arg("cfg") = QuadratureConfig{});
    m.def("case_name", &case_name, py::arg("tag"));

    py::register_exception<Error>(m, "SloshspotError");
}
