// Command-line front end: evaluates the conjugate pair, assembles the
// example domains, emits figure SVG/CSV artifacts, and prints the
// reference-comparison report.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 computation failure.
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sloshspot/geometry.hpp"
#include "sloshspot/kernel.hpp"
#include "sloshspot/serialize.hpp"
#include "sloshspot/verify.hpp"

namespace fs = std::filesystem;
using namespace sloshspot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCompute = 3;

struct CaseSpec {
    CaseTag tag;
    double nu;
    Family family;
};

const std::map<std::string, CaseSpec>& case_table() {
    static const std::map<std::string, CaseSpec> table = {
        {"w32", {CaseTag::W32, 1.5, Family::SUM}},
        {"w32p", {CaseTag::W32_PRIME, 1.5, Family::SUM}},
        {"w32_prime", {CaseTag::W32_PRIME, 1.5, Family::SUM}},
        {"w52", {CaseTag::W52, 2.5, Family::SUM}},
        {"w52c", {CaseTag::W52_COMPANION, 2.5, Family::SUM}},
        {"w72", {CaseTag::W72, 3.5, Family::SUM}},
        {"w3", {CaseTag::W3, 3.0, Family::DIFF}},
        {"w2", {CaseTag::W2, 2.0, Family::DIFF}},
    };
    return table;
}

Family parse_family(const std::string& name) {
    if (name == "sum") return Family::SUM;
    if (name == "diff") return Family::DIFF;
    throw CLI::ValidationError("--family must be 'sum' or 'diff'");
}

std::string default_out_dir() {
    const char* env = std::getenv("SLOSHSPOT_OUT");
    return env && *env ? env : "out";
}

// Uniform trace grid for panel (a) / trace.csv; mirrored cases get the
// mirrored grid.
void trace_grid(const Mode& mode, bool mirrored, const QuadratureConfig& cfg,
                std::vector<double>* xs, std::vector<double>* us,
                std::vector<double>* vs) {
    const double step = 1e-3, xmax = 3.1;
    int n = (int)std::lround(xmax / step);
    for (int i = 0; i <= n; ++i) {
        double x = mirrored ? -xmax + step * i : step * i;
        TraceValues t = eval_trace(mode, x, cfg);
        xs->push_back(x);
        us->push_back(t.u);
        vs->push_back(t.v);
    }
}

void write_case_outputs(const SloshingDomain& domain, const fs::path& dir,
                        const QuadratureConfig& cfg, bool want_json,
                        bool want_csv) {
    fs::create_directories(dir);
    std::vector<HighSpot> spots = find_high_spots(domain, cfg);
    if (want_json) {
        write_text_file(dir / "domain.json",
                        domain_to_json(domain, spots).dump(2) + "\n");
        write_text_file(dir / "highspots.json",
                        spots_to_json(domain.mode, spots).dump(2) + "\n");
    }
    if (want_csv) {
        write_text_file(dir / "bottom.csv", csv_xy(bottom_path(domain)));
        std::vector<double> xs, us, vs;
        trace_grid(domain.mode, domain.fs_right <= 0.0, cfg, &xs, &us, &vs);
        write_text_file(dir / "trace.csv", csv_trace(xs, us, vs));
    }
}

SloshingDomain make_case_domain(const CaseSpec& spec,
                                std::optional<double> smooth_c,
                                const QuadratureConfig& cfg) {
    Mode mode = make_mode(spec.nu, spec.family);
    if (smooth_c) return smooth_variant(mode, *smooth_c, cfg);
    return build_domain(mode, spec.tag, cfg);
}

int cmd_eval(double nu, const std::string& family, double x, double y,
             const QuadratureConfig& cfg) {
    try {
        Mode mode = make_mode(nu, parse_family(family));
        double u, v, vx, vy;
        if (y == 0.0) {
            TraceValues t = eval_trace(mode, x, cfg);
            u = t.u;
            v = t.v;
            vx = t.vx;
            vy = t.vy;
        } else {
            FieldValues f = eval_field(mode, {x, y}, 1, cfg);
            u = f.u;
            v = f.v;
            vx = f.vx;
            vy = f.vy;
        }
        std::printf("u = %.12g\nv = %.12g\ngrad_v = (%.12g, %.12g)\n", u, v,
                    vx, vy);
        return kExitOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}

int cmd_case(const std::vector<std::string>& names,
             std::optional<double> smooth_c, const std::string& out_dir,
             int jobs, bool want_json, bool want_csv,
             const QuadratureConfig& cfg) {
    struct Job {
        std::string name;
        CaseSpec spec;
        std::string error;
        double fs_left = 0, fs_right = 0;
        int n_spots = 0;
    };
    std::vector<Job> work;
    for (const std::string& name : names) {
        auto it = case_table().find(name);
        if (it == case_table().end()) {
            std::fprintf(stderr, "error: unknown case '%s'\n", name.c_str());
            return kExitUsage;
        }
        if (smooth_c && it->second.tag != CaseTag::W32) {
            std::fprintf(stderr,
                         "error: --smooth-c applies to the w32 mode only\n");
            return kExitUsage;
        }
        work.push_back({name, it->second, "", 0, 0, 0});
    }

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < work.size();
             i = next.fetch_add(1)) {
            Job& job = work[i];
            try {
                SloshingDomain d = make_case_domain(job.spec, smooth_c, cfg);
                write_case_outputs(d, fs::path(out_dir) / job.name, cfg,
                                   want_json, want_csv);
                job.fs_left = d.fs_left;
                job.fs_right = d.fs_right;
                job.n_spots = (int)find_high_spots(d, cfg).size();
            } catch (const std::exception& e) {
                job.error = e.what();
            }
        }
    };
    int n_threads = std::max(1, std::min<int>(jobs, (int)work.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    int rc = kExitOk;
    for (const Job& job : work) {
        if (!job.error.empty()) {
            std::fprintf(stderr, "case %s failed: %s\n", job.name.c_str(),
                         job.error.c_str());
            rc = kExitCompute;
        } else {
            std::printf("case %s: F = (%.9g, %.9g), %d high spots -> %s/%s\n",
                        job.name.c_str(), job.fs_left, job.fs_right,
                        job.n_spots, out_dir.c_str(), job.name.c_str());
        }
    }
    return rc;
}

void append_domain_curves(FigureData* fig, const SloshingDomain& d,
                          const QuadratureConfig& cfg) {
    for (const LevelCurve& c : d.bottom)
        fig->curves.push_back({c.vertices, LineStyle::SOLID});
    LevelCurve nodal = trace_u_nodal_line(d, cfg);
    fig->curves.push_back({nodal.vertices, LineStyle::DASHED});
    for (const HighSpot& h : find_high_spots(d, cfg))
        if (h.interior) fig->arrow_xs.push_back(h.x);
}

// The two level-set branches through the W3 saddle that do not bound the
// domain, drawn dotted in that figure.
void append_extra_branches(FigureData* fig, const SloshingDomain& d,
                           const QuadratureConfig& cfg) {
    const StagnationPoint& sp = d.stagnation_points.at(0);
    SymMat2 h = eval_hessian_v(d.mode, sp.location, cfg);
    double phi = std::atan2(h.xy, 0.5 * (h.xx - h.yy));
    for (int k = 0; k < 4; ++k) {
        double th = 0.5 * phi + kPi / 4.0 + k * kPi / 2.0;
        Point2 dir{std::cos(th), std::sin(th)};
        Point2 seed{sp.location.x + 1e-4 * dir.x,
                    sp.location.y + 1e-4 * dir.y};
        try {
            LevelCurve br = trace_level_curve(d.mode, seed, sp.level, dir, cfg);
            double xe = br.vertices.back().x;
            bool is_wall = br.end_kind == EndpointKind::ON_FREE_SURFACE &&
                           (std::abs(xe - d.fs_left) < 1e-6 ||
                            std::abs(xe - d.fs_right) < 1e-6);
            if (!is_wall)
                fig->curves.push_back({br.vertices, LineStyle::DOTTED});
        } catch (const std::exception&) {
            // branches wandering off the chart are simply not drawn
        }
    }
}

int cmd_figure(const std::string& fig_id, const std::string& out_dir,
               const QuadratureConfig& cfg) {
    try {
        FigureData fig;
        Mode mode{};
        if (fig_id == "fig1") {
            mode = make_mode(1.5, Family::SUM);
            SloshingDomain d = build_domain(mode, CaseTag::W32, cfg);
            SloshingDomain m = build_domain(mode, CaseTag::W32_PRIME, cfg);
            fig.surface_left = m.fs_left;
            fig.surface_right = d.fs_right;
            append_domain_curves(&fig, d, cfg);
            append_domain_curves(&fig, m, cfg);
            fig.title = "nu = 3/2: symmetric pair of nodal-line domains";
        } else if (fig_id == "fig2") {
            mode = make_mode(2.5, Family::SUM);
            SloshingDomain d = build_domain(mode, CaseTag::W52, cfg);
            fig.surface_left = d.fs_left;
            fig.surface_right = d.fs_right;
            append_domain_curves(&fig, d, cfg);
            fig.title = "nu = 5/2: nodal-line domain with two interior spots";
        } else if (fig_id == "fig3") {
            mode = make_mode(3.5, Family::SUM);
            SloshingDomain d = build_domain(mode, CaseTag::W72, cfg);
            fig.surface_left = d.fs_left;
            fig.surface_right = d.fs_right;
            append_domain_curves(&fig, d, cfg);
            fig.title = "nu = 7/2: level-line domain";
        } else if (fig_id == "fig4") {
            mode = make_mode(3.0, Family::DIFF);
            SloshingDomain d = build_domain(mode, CaseTag::W3, cfg);
            fig.surface_left = d.fs_left;
            fig.surface_right = d.fs_right;
            append_domain_curves(&fig, d, cfg);
            append_extra_branches(&fig, d, cfg);
            fig.title = "nu = 3: level-line domain with auxiliary branches";
        } else if (fig_id == "fig5") {
            mode = make_mode(2.0, Family::DIFF);
            SloshingDomain d = build_domain(mode, CaseTag::W2, cfg);
            fig.surface_left = d.fs_left;
            fig.surface_right = d.fs_right;
            append_domain_curves(&fig, d, cfg);
            fig.title = "nu = 2: level-line domain over an axis saddle";
        } else {
            std::fprintf(stderr, "error: unknown figure '%s'\n",
                         fig_id.c_str());
            return kExitUsage;
        }
        trace_grid(mode, false, cfg, &fig.xs, &fig.us, &fig.vs);
        fs::create_directories(out_dir);
        write_text_file(fs::path(out_dir) / (fig_id + ".svg"),
                        figure_svg(fig));
        write_text_file(fs::path(out_dir) / (fig_id + ".csv"),
                        csv_trace(fig.xs, fig.us, fig.vs));
        std::printf("wrote %s/%s.svg and %s/%s.csv\n", out_dir.c_str(),
                    fig_id.c_str(), out_dir.c_str(), fig_id.c_str());
        return kExitOk;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "figure %s failed: %s\n", fig_id.c_str(),
                     e.what());
        return kExitCompute;
    }
}

std::string feature_summary(const std::vector<CaseTag>& tags,
                            const QuadratureConfig& cfg) {
    std::string out = "\ncase features\n" + std::string(100, '-') + "\n";
    char line[256];
    for (CaseTag tag : tags) {
        CaseSpec spec{};
        for (const auto& [name, s] : case_table())
            if (s.tag == tag) spec = s;
        Mode mode = make_mode(spec.nu, spec.family);
        SloshingDomain d = build_domain(mode, tag, cfg);
        std::vector<HighSpot> spots = find_high_spots(d, cfg);
        BulbousReport br = check_bulbous(d, cfg);
        LevelCurve nodal = trace_u_nodal_line(d, cfg);

        int interior = 0;
        std::string gaps;
        for (const HighSpot& h : spots)
            if (h.interior) {
                ++interior;
                double gap = std::min(h.x - d.fs_left, d.fs_right - h.x);
                char g[48];
                std::snprintf(g, sizeof g, "%s%.6f", gaps.empty() ? "" : ", ",
                              gap);
                gaps += g;
            }
        const char* end_kind =
            nodal.end_kind == EndpointKind::AT_STAGNATION ? "stagnation point"
            : nodal.end_kind == EndpointKind::ON_Y_AXIS   ? "axis part of B"
                                                          : "bottom curve";
        std::snprintf(
            line, sizeof line,
            "%-5s interior spots: %d  bulbous L/R: %s/%s  corners: %zu  "
            "u-nodal line: F -> %s  spot-endpoint gaps: %s\n",
            case_name(tag).c_str(), interior,
            br.left.on_axis ? "axis" : (br.left.bulbous ? "yes" : "no"),
            br.right.on_axis ? "axis" : (br.right.bulbous ? "yes" : "no"),
            d.corners.size(), end_kind, gaps.empty() ? "-" : gaps.c_str());
        out += line;
    }
    return out;
}

int cmd_report(const std::vector<std::string>& case_names,
               const std::string& format, const QuadratureConfig& cfg) {
    std::vector<CaseTag> tags;
    for (const std::string& name : case_names) {
        auto it = case_table().find(name);
        if (it == case_table().end() || it->second.tag == CaseTag::W32_PRIME ||
            it->second.tag == CaseTag::W52_COMPANION) {
            std::fprintf(stderr,
                         "error: no reference values for case '%s'\n",
                         name.c_str());
            return kExitUsage;
        }
        tags.push_back(it->second.tag);
    }
    try {
        std::vector<ReferenceComparison> rows = reference_report(tags, cfg);
        bool all = true;
        for (const ReferenceComparison& r : rows) all = all && r.pass();
        if (format == "json") {
            std::printf("%s\n", report_json(rows).dump(2).c_str());
        } else {
            std::printf("%s", report_table(rows).c_str());
            std::vector<CaseTag> feat = tags;
            if (feat.empty())
                feat = {CaseTag::W32, CaseTag::W52, CaseTag::W72, CaseTag::W3,
                        CaseTag::W2};
            std::printf("%s", feature_summary(feat, cfg).c_str());
        }
        return all ? kExitOk : kExitVerify;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "report failed: %s\n", e.what());
        return kExitCompute;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sloshing domains with interior high spots"};
    app.require_subcommand(1);

    QuadratureConfig cfg;
    app.add_option("--abs-tol", cfg.abs_tol, "quadrature absolute tolerance");
    app.add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");

    // eval
    double nu = 0.0, x = 0.0, y = 0.0;
    std::string family;
    CLI::App* eval = app.add_subcommand("eval", "evaluate u, v, grad v");
    eval->add_option("--nu", nu, "frequency parameter")->required();
    eval->add_option("--family", family, "sum | diff")->required();
    eval->add_option("--x", x, "x coordinate")->required();
    eval->add_option("--y", y, "y coordinate (<= 0)")->required();

    // case
    std::vector<std::string> case_names;
    std::string out_dir = default_out_dir();
    std::string formats = "json,csv";
    double smooth_c = 0.0;
    int jobs = 1;
    CLI::App* case_cmd =
        app.add_subcommand("case", "assemble domains and write artifacts");
    case_cmd->add_option("names", case_names,
                         "case names (w32 w32p w52 w52c w72 w3 w2)");
    case_cmd->add_option("--case", case_names, "case names (flag form)");
    case_cmd->add_option("--out", out_dir, "output directory");
    CLI::Option* sc =
        case_cmd->add_option("--smooth-c", smooth_c,
                             "smooth-bottom variant level (w32 only)");
    case_cmd->add_option("--jobs", jobs, "concurrent case workers");
    case_cmd->add_option("--format", formats, "comma list of json,csv");

    // figure
    std::string fig_id, fig_out = default_out_dir();
    CLI::App* figure =
        app.add_subcommand("figure", "emit figure SVG and trace CSV");
    figure->add_option("id", fig_id, "fig1 .. fig5")->required();
    figure->add_option("--out", fig_out, "output directory");

    // report
    std::vector<std::string> report_cases;
    std::string report_format = "table";
    CLI::App* report =
        app.add_subcommand("report", "compare against reference values");
    report->add_option("--cases", report_cases,
                       "subset of w32 w52 w72 w3 w2 (default all)");
    report->add_option("--format", report_format, "table | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        cfg.validate();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }

    if (eval->parsed()) return cmd_eval(nu, family, x, y, cfg);
    if (case_cmd->parsed()) {
        if (case_names.empty()) {
            std::fprintf(stderr,
                         "error: no cases given (positional or --case)\n");
            return kExitUsage;
        }
        bool want_json = formats.find("json") != std::string::npos;
        bool want_csv = formats.find("csv") != std::string::npos;
        if (!want_json && !want_csv) {
            std::fprintf(stderr, "error: --format must include json or csv\n");
            return kExitUsage;
        }
        return cmd_case(case_names,
                        sc->count() ? std::optional<double>(smooth_c)
                                    : std::nullopt,
                        out_dir, jobs, want_json, want_csv, cfg);
    }
    if (figure->parsed()) return cmd_figure(fig_id, fig_out, cfg);
    if (report->parsed()) return cmd_report(report_cases, report_format, cfg);
    return kExitUsage;
}
