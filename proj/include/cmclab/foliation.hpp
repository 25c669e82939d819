#pragma once

#include <cstddef>
#include <vector>

#include "cmclab/solver.hpp"

namespace cmclab {

// Weak CMC foliation of the interior annulus (r_horizon, r_star): the
// outermost CMC radius function r(h), the level-set function u, and the
// variational functionals whose minimizers the CMC spheres are.

struct InteriorRegion {
    double r_horizon = 0.0;
    double r_star = 0.0;
    double h_max = 0.0;
};

InteriorRegion interior_region(const Metric& metric);

// r(h) = largest radius in [r_horizon, r_star] with H(r) = h, scanned from
// the right. Throws OutOfRange unless 0 < h <= h_max; at h = h_max (to
// 1e-12 relative) returns r_star, the boundary resolution of the open
// interval in the definition.
double outermost_cmc_radius(const Metric& metric, const InteriorRegion& region, double h);
double outermost_cmc_radius(const Metric& metric, double h);

struct Plateau {
    double r_lo = 0.0;
    double r_hi = 0.0;
    double u_const = 0.0;
};

struct FoliationProfile {
    std::vector<double> r_grid;    // ascending, spans [r_horizon, r_star]
    std::vector<double> h_values;  // H on the grid
    std::vector<double> u_values;  // level-set function on the grid
    std::vector<double> h_table;   // h samples for the radius table below
    std::vector<double> r_of_h;    // outermost CMC radius at each h sample
    std::vector<Plateau> plateaus;
    InteriorRegion region;
};

// u(r) = min of H over [r, r_star]: a single reverse sweep. u < H marks the
// annuli every outermost CMC sphere jumps over; those are the plateaus.
FoliationProfile level_set_function(const Metric& metric, std::size_t grid_n = 10000,
                                    std::size_t h_table_n = 1024);

// Annulus (r_horizon, outer_radius); the spherically symmetric competitor
// class for the variational checks.
struct RadialSet {
    double outer_radius = 0.0;
};

double radial_volume(const Metric& metric, double r_inner, double r_outer);

// J_h(F) = perimeter - h * volume.
double j_h(const Metric& metric, const InteriorRegion& region, double h, const RadialSet& f);
double j_h(const Metric& metric, double h, const RadialSet& f);

// Brute-force minimizer of J_h over outer radii in [r(h), r_star]. This is
// the independent check on r(h): the minimizer must land within one grid
// step of it or OracleMismatch is thrown.
RadialSet minimize_j_h_outside(const Metric& metric, const InteriorRegion& region, double h,
                               std::size_t grid_n);
RadialSet minimize_j_h_outside(const Metric& metric, double h, std::size_t grid_n);

// area(r(h)) <= area(rho) for every grid rho in [r(h), r_star].
BoundReport check_outward_area_minimizing(const Metric& metric, const InteriorRegion& region,
                                          double h, std::size_t grid_n);

// Along a decreasing h sequence: r(h) non-increasing, and the right limit
// at the final h matches r(final h) within 1e-6.
BoundReport check_family_properties(const Metric& metric, const InteriorRegion& region,
                                    const std::vector<double>& h_sequence);

// J_u(F) = perimeter - integral of u over F, u taken from the profile.
double j_u(const Metric& metric, const FoliationProfile& profile, const RadialSet& f);

// J_u(annulus up to r(h)) <= J_u(competitor) + 1e-6 for competitors with
// outer radius spread over [r(h), r_star].
BoundReport check_subsolution(const Metric& metric, const FoliationProfile& profile, double h,
                              std::size_t n_competitors);

// Total variation of u in the 3-dimensional sense, integral of A(r)|u'(r)|,
// bounded by area(r_star) * h_max; also checks u stays continuous under
// grid refinement (the largest grid jump must shrink).
BoundReport bv_norm_check(const Metric& metric, const FoliationProfile& profile);

}  // namespace cmclab
