#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmclab/metric.hpp"

namespace cmclab {

// Root finding and bound checking for the CMC sphere family.

struct HmaxResult {
    double h_max = 0.0;
    double r_star = 0.0;                  // innermost maximizer
    std::vector<double> all_maximizers;   // every radius within tie tolerance
};

// Radii whose H agrees with h_max to this relative tolerance count as
// maximizers; ties resolve to the innermost radius.
inline constexpr double kTieRelTol = 1e-8;

struct BoundReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;   // rhs - lhs
    double tol = 0.0;      // pass slack used for this check
    bool passed = false;   // lhs <= rhs + tol
    bool sharp = false;    // |margin| <= 1e-6 * max(1, |rhs|)
    bool skipped = false;  // precondition not met; passed is meaningless
    std::string note;
    std::map<std::string, double> extras;
};

BoundReport make_bound_report(std::string name, double lhs, double rhs, double tol);
BoundReport make_skipped_report(std::string name, std::string why);

// Facts about the exterior region that every bound check consumes; compute
// once per metric.
struct ExteriorContext {
    double r_horizon = 0.0;
    double horizon_area = 0.0;
    double c_lower = 0.0;
    bool nonneg_scalar = false;
};

ExteriorContext exterior_context(const Metric& metric, std::size_t grid_n = 10000);

// Every H = 0 crossing on [r_min, r_cutoff], ascending. Sign changes are
// bracketed directly; grid-local extrema get polished so a dip narrower
// than the grid step still surfaces its root pair.
std::vector<double> minimal_sphere_radii(const Metric& metric, std::size_t grid_n = 10000);

// Largest root of H on [r_min, r_cutoff]: log-spaced grid scan, then
// bisection to 1e-10 relative. Throws NoHorizon when H has no zero.
double find_horizon(const Metric& metric, std::size_t grid_n = 10000);

// Bisection for H(r) = h between barrier radii. Requires h between H(r_in)
// and H(r_out); among several roots returns the leftmost bracket on the
// scan grid (deterministic). Throws BarrierViolation otherwise.
double find_cmc_between(const Metric& metric, double r_in, double r_out, double h);

// Global maximum of H over [r_horizon, r_cutoff]: grid scan, golden-section
// refinement of every local maximum, then a derivative-bisection polish.
// Also verifies H is decreasing on the asymptotic tail so no maximizer can
// hide beyond the grid.
HmaxResult find_hmax(const Metric& metric, std::optional<double> r_horizon = std::nullopt,
                     std::size_t grid_n = 10000);

// The two CMC upper bounds at S_r: the area-normalized form
//   H^2 <= 16 pi / (3 A_horizon) + (2/3) C
// enforced at every r >= r_horizon, and the raw form
//   H^2 |S_r| <= 16 pi / 3 + (2/3) C |S_r|
// enforced only where S_r is strongly stable (skipped elsewhere; the raw
// form genuinely fails on large unstable spheres). Requires
// |S_r| >= horizon area within tolerance, which is the homology
// precondition; violation throws OutOfRange.
std::pair<BoundReport, BoundReport> check_cmc_upper_bound(const Metric& metric,
                                                          const ExteriorContext& ctx, double r);
std::pair<BoundReport, BoundReport> check_cmc_upper_bound(const Metric& metric, double r);

// pi R <= 2 pi / (sqrt(3) H) on strongly stable spheres of metrics with
// non-negative scalar curvature. The report also carries the stricter
// constant 2 pi / (3 H) as an extra, which the maximizing sphere violates;
// it is displayed, never asserted.
BoundReport check_diameter_bound(const Metric& metric, const ExteriorContext& ctx, double r);
BoundReport check_diameter_bound(const Metric& metric, double r);

// R <= 3 m_H on strongly stable spheres, nonneg scalar curvature required.
BoundReport check_area_radius_hawking(const Metric& metric, const ExteriorContext& ctx, double r);
BoundReport check_area_radius_hawking(const Metric& metric, double r);

struct InnerFoliation {
    std::vector<std::pair<double, double>> samples;  // (r, H) on [r_h, r_h + delta]
    double delta = 0.0;      // largest interval with H strictly increasing
    bool consistent = true;  // H > 0 immediately outside the horizon
};

// Samples the CMC leaves hugging the horizon: H increases from 0 up to the
// first interior maximum of H.
InnerFoliation inner_foliation_profile(const Metric& metric, std::size_t n_steps);

}  // namespace cmclab
