#include "sloshspot/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "sloshspot/quadrature.hpp"

namespace sloshspot {

namespace {

using cplx = std::complex<double>;
constexpr cplx kImag{0.0, 1.0};
constexpr double kSingularGuard = 1e-9;

// sin(s)/s with the removable point filled by its Taylor series; the series
// truncation stays below 1e-16 on |s| < 1/2.
double shifted_sinc(double s) {
    if (std::abs(s) < 0.5) {
        const double s2 = s * s;
        return 1.0 +
               s2 * (-1.0 / 6.0 +
                     s2 * (1.0 / 120.0 +
                           s2 * (-1.0 / 5040.0 +
                                 s2 * (1.0 / 362880.0 +
                                       s2 * (-1.0 / 39916800.0 +
                                             s2 * (1.0 / 6227020800.0))))));
    }
    return std::sin(s) / s;
}

// Regular factor of both integrands: the numerator's trigonometric factor
// divided by (k - nu).  SUM: cos(k*pi)/(k-nu); DIFF: sin(k*pi)/(k-nu).  Under
// the admissibility constraint both equal sigma*sin(pi*(k-nu))/(k-nu), which
// is what we evaluate: no cancellation anywhere near k = nu.
double regular_factor(const Mode& mode, double k) {
    return mode.sigma * kPi * shifted_sinc(kPi * (k - mode.nu));
}

void sort_unique(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [](double a, double b) { return b - a < 1e-12; }),
            v.end());
}

// f0 and its first two z-derivatives, where
//   f0(z) = \int_0^\infty T(k) e^{-ikz} dk,   z = x + iy,  y <= 0,
// and the full complex field is F = u + iv = 2*f0 (SUM) or 2i*f0 (DIFF).
struct F0Set {
    cplx f0{0.0, 0.0};
    cplx f1{0.0, 0.0};  // f0'
    cplx f2{0.0, 0.0};  // f0''
};

double log_guarded(double x) { return std::log(std::max(x, 2.72)); }

// Truncation point for the direct k-integral: beyond it the envelope
// k^m e^{ky}/(k-nu) contributes less than a fraction of abs_tol.
double direct_cutoff(const Mode& mode, double y, int m, const QuadratureConfig& cfg) {
    const double ay = -y;
    const double tol = std::max(cfg.abs_tol * 1e-2, 1e-16);
    const double L = std::log(1.0 / tol);
    double K = (L + 5.0) / ay;
    for (int i = 0; i < 3; ++i) K = (L + m * log_guarded(K) + 1.0) / ay;
    K += cfg.tail_margin / ay;
    return std::max(K, cfg.split_point * mode.nu + 1.0);
}

cplx integrate_or_throw(const std::vector<double>& bps,
                        const std::function<cplx(double)>& f, double abs_tol,
                        double rel_tol, int max_panels, const char* what) {
    quad::Result r = quad::integrate(f, bps, abs_tol, rel_tol, max_panels);
    if (!r.converged) {
        throw QuadratureFailure(std::string(what) +
                                ": adaptive integration did not reach tolerance");
    }
    return r.value;
}

// Direct evaluation of the k-integrals; valid for y < 0, any x.  The range is
// pre-chunked by the fastest oscillation period so each Gauss-Kronrod panel
// sees at most one period, with the split point and the k = nu node inserted.
F0Set direct_f0(const Mode& mode, double x, double y, int order,
                const QuadratureConfig& cfg) {
    F0Set out;
    const double split = cfg.split_point * mode.nu;
    const double period = 2.0 * kPi / (std::abs(x) + kPi);
    for (int m = 0; m <= order; ++m) {
        const double K = direct_cutoff(mode, y, m, cfg);
        std::vector<double> bps{0.0, K, mode.nu, std::min(split, K)};
        bps.reserve(static_cast<std::size_t>(K / period) + 8);
        for (double t = period; t < K; t += period) bps.push_back(t);
        sort_unique(bps);
        auto f = [&](double k) -> cplx {
            const cplx osc = std::exp(k * y) *
                             cplx(std::cos(k * x), -std::sin(k * x));
            cplx val = regular_factor(mode, k) * osc;
            if (m == 1) val *= cplx(0.0, -k);
            if (m == 2) val *= -k * k;
            return val;
        };
        const cplx v = integrate_or_throw(bps, f, 0.5 * cfg.abs_tol, cfg.rel_tol,
                                          cfg.max_panels, "direct field integral");
        if (m == 0) out.f0 = v;
        if (m == 1) out.f1 = v;
        if (m == 2) out.f2 = v;
    }
    return out;
}

// Laplace-type moment over the rotated contour:
//   I_m(w, s) = \int_0^\infty t^m e^{-tw} / (t + s*i*nu) dt,   Re w > 0.
// Non-oscillatory in t up to the e^{-i t Im(w)} factor; chunked geometrically
// from the smallest feature scale, capped by that oscillation period.
cplx laplace_moment(double nu, cplx w, int m, double s,
                    const QuadratureConfig& cfg) {
    const double r = w.real();
    const double im = std::abs(w.imag());
    const double tol = std::max(cfg.abs_tol * 1e-2, 1e-16);
    const double L = std::log(1.0 / tol);
    double tc = (L + 5.0) / r;
    for (int i = 0; i < 3; ++i) tc = (L + m * log_guarded(tc) + 1.0) / r;
    tc += cfg.tail_margin / r;

    const double cap = im > 1e-12 ? 2.0 * kPi / im
                                  : std::numeric_limits<double>::infinity();
    std::vector<double> bps{0.0};
    double h = std::min({0.5 * nu, 0.25 * tc, cap});
    double t = 0.0;
    while (t < tc && static_cast<int>(bps.size()) <= cfg.max_panels) {
        t = std::min(t + h, tc);
        bps.push_back(t);
        h = std::min(h * 2.0, cap);
    }
    auto f = [&](double t_) -> cplx {
        const cplx decay = std::exp(-t_ * r) *
                           cplx(std::cos(t_ * w.imag()), -std::sin(t_ * w.imag()));
        double tm = 1.0;
        if (m == 1) tm = t_;
        if (m == 2) tm = t_ * t_;
        // 1/(t + s*i*nu) = (t - s*i*nu)/(t^2 + nu^2)
        const cplx inv = cplx(t_, -s * nu) / (t_ * t_ + nu * nu);
        return tm * decay * inv;
    };
    return integrate_or_throw(bps, f, 0.25 * cfg.abs_tol, cfg.rel_tol,
                              cfg.max_panels, "rotated-contour integral");
}

// Rotated-contour evaluation; valid for y <= 0 and |x| < pi.  Rotating the
// two exponential pieces of sin(pi*(k-nu)) onto the imaginary k-axis picks up
// the residue term sigma*pi*e^{-i*nu*z} and leaves two absolutely convergent
// Laplace moments with arguments pi -+ z:
//   f0  = sigma*pi*e^{-i nu z} + (sigma/2i) [E- I0(pi-z,+) - E+ I0(pi+z,-)]
//   f0' = -i nu sigma*pi*e^{-i nu z} + (sigma/2i) [E- I1(pi-z,+) + E+ I1(pi+z,-)]
//   f0''= -nu^2 sigma*pi*e^{-i nu z} + (sigma/2i) [E- I2(pi-z,+) - E+ I2(pi+z,-)]
// with E-+ = e^{-+i pi nu}, known exactly from sigma for admissible modes.
F0Set rotated_f0(const Mode& mode, double x, double y, int order,
                 const QuadratureConfig& cfg) {
    const double nu = mode.nu;
    const double sg = mode.sigma;
    const cplx w1(kPi - x, -y);  // pi - z
    const cplx w2(kPi + x, y);   // pi + z
    cplx em, ep;                 // e^{-i pi nu}, e^{+i pi nu}
    if (mode.family == Family::SUM) {
        em = cplx(0.0, sg);   // cos(pi nu) = 0, sin(pi nu) = -sigma
        ep = cplx(0.0, -sg);
    } else {
        em = cplx(sg, 0.0);   // sin(pi nu) = 0, cos(pi nu) = sigma
        ep = cplx(sg, 0.0);
    }
    const cplx half_over_i = sg * cplx(0.0, -0.5);  // sigma/(2i)
    const cplx ez = std::exp(nu * y) * cplx(std::cos(nu * x), -std::sin(nu * x));

    F0Set out;
    {
        const cplx a = laplace_moment(nu, w1, 0, +1.0, cfg);
        const cplx b = laplace_moment(nu, w2, 0, -1.0, cfg);
        out.f0 = sg * kPi * ez + half_over_i * (em * a - ep * b);
    }
    if (order >= 1) {
        const cplx a = laplace_moment(nu, w1, 1, +1.0, cfg);
        const cplx b = laplace_moment(nu, w2, 1, -1.0, cfg);
        out.f1 = -kImag * nu * sg * kPi * ez + half_over_i * (em * a + ep * b);
    }
    if (order >= 2) {
        const cplx a = laplace_moment(nu, w1, 2, +1.0, cfg);
        const cplx b = laplace_moment(nu, w2, 2, -1.0, cfg);
        out.f2 = -nu * nu * sg * kPi * ez + half_over_i * (em * a - ep * b);
    }
    return out;
}

cplx family_multiplier(const Mode& mode) {
    return mode.family == Family::SUM ? cplx(2.0, 0.0) : cplx(0.0, 2.0);
}

struct ComplexField {
    cplx F{0.0, 0.0};    // u + iv
    cplx dF{0.0, 0.0};   // u_x + i v_x
    cplx d2F{0.0, 0.0};  // u_xx + i v_xx
};

// Interior evaluation at canonical x >= 0, y < 0.
ComplexField eval_interior_canonical(const Mode& mode, double x, double y,
                                     int order, const QuadratureConfig& cfg) {
    EvalRoute route = cfg.route;
    if (route == EvalRoute::AUTO) {
        const bool shallow = -y < cfg.rotated_y_max;
        const bool inside = x < kPi - cfg.rotated_x_guard;
        // Oscillatory panel count the rotated route would need; fall back to
        // the direct integral when it outgrows the budget.
        const double est = inside ? (40.0 / (kPi - x)) * (-y / (2.0 * kPi)) : 0.0;
        route = (shallow && inside && est < 2500.0) ? EvalRoute::ROTATED
                                                    : EvalRoute::DIRECT;
    }
    const F0Set s = route == EvalRoute::ROTATED
                         ? rotated_f0(mode, x, y, order, cfg)
                         : direct_f0(mode, x, y, order, cfg);
    const cplx mult = family_multiplier(mode);
    return ComplexField{mult * s.f0, mult * s.f1, mult * s.f2};
}

// Mirror x -> -x at the complex-field level.  From f0(-conj z) = conj f0(z):
// SUM (F = 2 f0):   F -> conj F,  F' -> -conj F',  F'' -> conj F''
// DIFF (F = 2i f0): F -> -conj F, F' -> conj F',   F'' -> -conj F''
ComplexField mirror_field(const Mode& mode, const ComplexField& c) {
    if (mode.family == Family::SUM) {
        return ComplexField{std::conj(c.F), -std::conj(c.dF), std::conj(c.d2F)};
    }
    return ComplexField{-std::conj(c.F), std::conj(c.dF), -std::conj(c.d2F)};
}

void reject_singular(double x, double y) {
    if (std::hypot(x - kPi, y) <= kSingularGuard ||
        std::hypot(x + kPi, y) <= kSingularGuard) {
        throw SingularPoint("evaluation within the guard radius of (+-pi, 0)");
    }
}

// Abel-regularized boundary value: damp the integrand with e^{-eps k} (which
// is exactly evaluation at y = -eps) on a shrinking ladder and extrapolate
// eps -> 0 by Neville's scheme.
cplx regularized_trace_F(const Mode& mode, double x, const QuadratureConfig& cfg) {
    QuadratureConfig dcfg = cfg;
    dcfg.route = EvalRoute::DIRECT;
    constexpr double eps[5] = {3.2e-2, 1.6e-2, 8e-3, 4e-3, 2e-3};
    cplx tab[5];
    const cplx mult = family_multiplier(mode);
    for (int i = 0; i < 5; ++i) {
        tab[i] = mult * direct_f0(mode, x, -eps[i], 0, dcfg).f0;
    }
    for (int j = 1; j < 5; ++j) {
        for (int i = 4; i >= j; --i) {
            tab[i] = (eps[i - j] * tab[i] - eps[i] * tab[i - 1]) /
                     (eps[i - j] - eps[i]);
        }
    }
    return tab[4];
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw Error("quadrature tolerances must be positive");
    }
    if (!(split_point > 1.0)) {
        throw Error("split_point (multiple of nu) must exceed 1 so the split lies beyond nu");
    }
    if (!(tail_margin >= 0.0)) throw Error("tail_margin must be non-negative");
    if (!(rotated_y_max > 0.0)) throw Error("rotated_y_max must be positive");
    if (!(rotated_x_guard >= 0.0)) throw Error("rotated_x_guard must be non-negative");
    if (max_panels < 16) throw Error("max_panels too small to do anything useful");
}

Mode make_mode(double nu, Family family) {
    if (!(nu > 0.0)) throw Error("nu must be positive");
    const double residue_factor = family == Family::SUM ? std::cos(kPi * nu)
                                                        : std::sin(kPi * nu);
    if (std::abs(residue_factor) >= 1e-12) {
        throw NonRemovableSingularity(
            family == Family::SUM
                ? "non-removable singularity at k = nu: SUM family requires "
                  "cos(pi*nu) = 0 (nu an odd multiple of 1/2)"
                : "non-removable singularity at k = nu: DIFF family requires "
                  "sin(pi*nu) = 0 (nu a positive integer)");
    }
    Mode m;
    m.nu = nu;
    m.family = family;
    const double sg = family == Family::SUM ? -std::sin(kPi * nu)
                                            : std::cos(kPi * nu);
    m.sigma = sg > 0.0 ? 1.0 : -1.0;
    return m;
}

double trace_source(const Mode& mode, double x) {
    const double d = kPi * kPi - x * x;
    return mode.family == Family::SUM ? 2.0 * x / d : 2.0 * kPi / d;
}

double trace_source_dx(const Mode& mode, double x) {
    const double d = kPi * kPi - x * x;
    return mode.family == Family::SUM ? 2.0 * (kPi * kPi + x * x) / (d * d)
                                      : 4.0 * kPi * x / (d * d);
}

TraceValues eval_trace(const Mode& mode, double x, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(std::abs(x) < kPi)) {
        throw OutOfRange("boundary trace is defined for |x| < pi only");
    }
    reject_singular(x, 0.0);
    const double ax = std::abs(x);
    cplx F;
    if (cfg.trace_method == TraceMethod::ROTATED) {
        F = family_multiplier(mode) * rotated_f0(mode, ax, 0.0, 0, cfg).f0;
    } else {
        F = regularized_trace_F(mode, ax, cfg);
    }
    if (x < 0.0) {
        F = mode.family == Family::SUM ? std::conj(F) : -std::conj(F);
    }
    TraceValues t;
    t.u = F.real();
    t.v = F.imag();
    const double nu = mode.nu;
    t.uy = nu * t.u;                             // free-surface condition
    t.vx = -nu * t.u;                            // Cauchy-Riemann on the trace
    t.ux = nu * t.v + trace_source(mode, x);     // u_x = v_y on y = 0
    t.vy = t.ux;
    t.uxx = -nu * nu * t.u + trace_source_dx(mode, x);
    return t;
}

double eval_trace_u(const Mode& mode, double x, const QuadratureConfig& cfg) {
    return eval_trace(mode, x, cfg).u;
}

double eval_trace_v(const Mode& mode, double x, const QuadratureConfig& cfg) {
    return eval_trace(mode, x, cfg).v;
}

FieldValues eval_field(const Mode& mode, Point2 p, int order,
                       const QuadratureConfig& cfg) {
    cfg.validate();
    if (p.y > 0.0) throw OutOfRange("evaluation point above the free surface");
    reject_singular(p.x, p.y);
    FieldValues f;
    if (p.y == 0.0) {
        if (!(std::abs(p.x) < kPi)) {
            throw OutOfRange("surface evaluation requires |x| < pi");
        }
        const TraceValues t = eval_trace(mode, p.x, cfg);
        const double nu = mode.nu;
        f.u = t.u;
        f.v = t.v;
        f.ux = t.ux;
        f.uy = t.uy;
        f.vx = t.vx;
        f.vy = t.vy;
        f.uxx = t.uxx;
        f.uyy = -t.uxx;
        f.uxy = nu * t.ux;
        f.vxx = -nu * t.ux;
        f.vyy = nu * t.ux;
        f.vxy = t.uxx;
        return f;
    }
    ComplexField c = eval_interior_canonical(mode, std::abs(p.x), p.y, order, cfg);
    if (p.x < 0.0) c = mirror_field(mode, c);
    f.u = c.F.real();
    f.v = c.F.imag();
    if (order >= 1) {
        f.ux = c.dF.real();
        f.vx = c.dF.imag();
        f.uy = -c.dF.imag();
        f.vy = c.dF.real();
    }
    if (order >= 2) {
        f.uxx = c.d2F.real();
        f.vxx = c.d2F.imag();
        f.uxy = -c.d2F.imag();
        f.vxy = c.d2F.real();
        f.uyy = -c.d2F.real();
        f.vyy = -c.d2F.imag();
    }
    return f;
}

double eval_u(const Mode& mode, Point2 p, const QuadratureConfig& cfg) {
    return eval_field(mode, p, 0, cfg).u;
}

double eval_v(const Mode& mode, Point2 p, const QuadratureConfig& cfg) {
    return eval_field(mode, p, 0, cfg).v;
}

Gradient2 eval_grad_v(const Mode& mode, Point2 p, const QuadratureConfig& cfg) {
    const FieldValues f = eval_field(mode, p, 1, cfg);
    return Gradient2{f.vx, f.vy};
}

Gradient2 eval_grad_u(const Mode& mode, Point2 p, const QuadratureConfig& cfg) {
    const FieldValues f = eval_field(mode, p, 1, cfg);
    return Gradient2{f.ux, f.uy};
}

SymMat2 eval_hessian_v(const Mode& mode, Point2 p, const QuadratureConfig& cfg) {
    const FieldValues f = eval_field(mode, p, 2, cfg);
    return SymMat2{f.vxx, f.vxy, f.vyy};
}

double eval_v_split(const Mode& mode, double x, double y,
                    const QuadratureConfig& cfg) {
    cfg.validate();
    if (mode.family != Family::SUM) {
        throw OutOfRange("split representation applies to the SUM family");
    }
    if (!(y < 0.0)) throw OutOfRange("split representation requires y < 0");
    if (!(std::abs(x) < kPi)) throw OutOfRange("split representation requires |x| < pi");
    const double v0 = eval_trace_v(mode, x, cfg);
    const double am = (kPi - x) * (kPi - x);
    const double ap = (kPi + x) * (kPi + x);
    auto f = [&](double k) -> cplx {
        const double k2 = k * k;
        const double num = k2 - (kPi * kPi - x * x);
        return cplx(num / ((k2 + am) * (k2 + ap)) * std::exp(-k * mode.nu), 0.0);
    };
    const std::vector<double> bps{y, 0.75 * y, 0.5 * y, 0.25 * y, 0.0};
    const cplx integral = integrate_or_throw(bps, f, 0.5 * cfg.abs_tol, cfg.rel_tol,
                                             cfg.max_panels, "split representation integral");
    return std::exp(mode.nu * y) * (v0 + 2.0 * x * integral.real());
}

double LevelCurve::length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        len += std::hypot(vertices[i].x - vertices[i - 1].x,
                          vertices[i].y - vertices[i - 1].y);
    }
    return len;
}

}  // namespace sloshspot
