#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sloshspot/geometry.hpp"
#include "sloshspot/types.hpp"

namespace sloshspot {

// 5-point Laplacian stencil residual of an arbitrary scalar field over a
// rectangular grid. Exposed so tests can run deliberately corrupted fields
// through the same code path as the real checks.
ResidualReport stencil_laplace(const std::function<double(Point2)>& field,
                               const ScanWindow& grid, int nx, int ny,
                               std::string check_name, double h = 1e-3);

// max 5-point Laplacian residual of u and v on an interior grid;
// tolerance 1e-4 times the largest field magnitude seen.
ResidualReport residual_laplace(const Mode& mode, const ScanWindow& grid,
                                int nx, int ny,
                                const QuadratureConfig& cfg = {});

// |u_y(x,0) - nu u(x,0)| with u_y formed from one-sided differences below
// the surface, Richardson-extrapolated over steps 1e-3 .. 1.25e-4.
// Residuals are normalized by (1 + |u|); tolerance 1e-4.
ResidualReport surface_condition(const std::function<double(Point2)>& u,
                                 double nu, const std::vector<double>& xs,
                                 std::string check_name);
ResidualReport residual_free_surface(const Mode& mode,
                                     const std::vector<double>& xs,
                                     const QuadratureConfig& cfg = {});

// max |v - level| over every bottom vertex; tolerance 1e-8.
ResidualReport residual_bottom(const SloshingDomain& domain,
                               const QuadratureConfig& cfg = {});

// |∫_F u dx| by adaptive quadrature; tolerance 1e-6 |F| max|u|.
ResidualReport check_orthogonality(const SloshingDomain& domain,
                                   const QuadratureConfig& cfg = {});

// Structural assertions: exactly one root of u on F, v - level of one sign
// on an interior sample grid, and a single interior extremum of the v-trace
// with no interior sign change. Violations add 1 to the residual; the
// wrong-sign magnitude enters directly.
ResidualReport nodal_structure_check(const SloshingDomain& domain,
                                     const QuadratureConfig& cfg = {});

// Full residual suite for one domain, aggregated in a fixed order.
std::vector<ResidualReport> verify_domain(const SloshingDomain& domain,
                                          const QuadratureConfig& cfg = {});

// Comparison of every tabulated reference value for the requested cases
// (all five modes when empty) against freshly computed ones.
std::vector<ReferenceComparison> reference_report(
    const std::vector<CaseTag>& cases = {}, const QuadratureConfig& cfg = {});

}  // namespace sloshspot
