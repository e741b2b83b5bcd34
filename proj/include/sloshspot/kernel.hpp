#pragma once

#include "sloshspot/types.hpp"

namespace sloshspot {

// Validates the (nu, family) pair.  Throws NonRemovableSingularity unless the
// family's trigonometric numerator vanishes at k = nu (SUM: cos(pi*nu) = 0,
// DIFF: sin(pi*nu) = 0, both to 1e-12), which is what makes the k-integrals
// ordinary convergent integrals.
Mode make_mode(double nu, Family family);

// All field values an evaluation point can yield: the potential u, the stream
// function v, their first derivatives (consistent with the Cauchy-Riemann
// pairing u_x = v_y, u_y = -v_x), and the second derivatives of both.
struct FieldValues {
    double u = 0.0, v = 0.0;
    double ux = 0.0, uy = 0.0, vx = 0.0, vy = 0.0;
    double uxx = 0.0, uxy = 0.0, uyy = 0.0;
    double vxx = 0.0, vxy = 0.0, vyy = 0.0;
};

// Evaluates the field at p with derivatives up to `order` (0, 1 or 2); higher
// entries of the result are left zero.  p.y == 0 is served by the boundary
// trace (requires |p.x| < pi); p.y < 0 by the interior representation chosen
// per cfg.route.  Throws SingularPoint within 1e-9 of (+-pi, 0), OutOfRange
// above the surface, QuadratureFailure if tolerances cannot be met.
FieldValues eval_field(const Mode& mode, Point2 p, int order,
                       const QuadratureConfig& cfg = {});

double eval_u(const Mode& mode, Point2 p, const QuadratureConfig& cfg = {});
double eval_v(const Mode& mode, Point2 p, const QuadratureConfig& cfg = {});

// Gradients of the stream function and the potential (analytic
// differentiation under the integral sign, not finite differences).
Gradient2 eval_grad_v(const Mode& mode, Point2 p, const QuadratureConfig& cfg = {});
Gradient2 eval_grad_u(const Mode& mode, Point2 p, const QuadratureConfig& cfg = {});

// Second derivatives of v; trace(H) vanishes up to quadrature error.
SymMat2 eval_hessian_v(const Mode& mode, Point2 p, const QuadratureConfig& cfg = {});

// Boundary trace values at (x, 0), |x| < pi.  The direct k-integrals only
// converge conditionally on y = 0, so these use either the rotated-contour
// representation or the damped/extrapolated one, per cfg.trace_method.
// First and second derivatives come from exact boundary identities:
//   u_y = nu*u,   v_x = -nu*u,   u_x = v_y = nu*v + r(x),
//   u_xx = -nu^2*u + r'(x),
// with r(x) = 2x/(pi^2-x^2) for SUM and r(x) = 2pi/(pi^2-x^2) for DIFF.
struct TraceValues {
    double u = 0.0, v = 0.0;
    double ux = 0.0, uy = 0.0, vx = 0.0, vy = 0.0;
    double uxx = 0.0;
};

TraceValues eval_trace(const Mode& mode, double x, const QuadratureConfig& cfg = {});

double eval_trace_u(const Mode& mode, double x, const QuadratureConfig& cfg = {});
double eval_trace_v(const Mode& mode, double x, const QuadratureConfig& cfg = {});

// The boundary source term r(x) in u_x(x,0) = nu*v(x,0) + r(x) and its x
// derivative; exposed because root-finding and verification reuse them.
double trace_source(const Mode& mode, double x);
double trace_source_dx(const Mode& mode, double x);

// Split representation of v for the SUM family, |x| < pi, y < 0:
//   v(x,y) = e^{nu*y} [ v(x,0) + 2x * I(x,y) ]
// with I a finite integral over (y, 0); must agree with eval_v.
double eval_v_split(const Mode& mode, double x, double y,
                    const QuadratureConfig& cfg = {});

}  // namespace sloshspot
