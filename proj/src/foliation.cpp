#include "cmclab/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cmclab/error.hpp"
#include "cmclab/sphere.hpp"

namespace cmclab {

namespace {

constexpr double kPi = std::numbers::pi;

// Volume density of the conformal metric on a coordinate sphere shell.
double volume_density(const Metric& metric, double s) {
    const double p = metric.phi(s);
    const double p2 = p * p;
    return 4.0 * kPi * p2 * p2 * p2 * s * s;
}

}  // namespace

InteriorRegion interior_region(const Metric& metric) {
    InteriorRegion region;
    region.r_horizon = find_horizon(metric);
    const HmaxResult hm = find_hmax(metric, region.r_horizon);
    region.r_star = hm.r_star;
    region.h_max = hm.h_max;
    return region;
}

double outermost_cmc_radius(const Metric& metric, const InteriorRegion& region, double h) {
    if (!(h > 0.0) || h > region.h_max * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "h = " << h << " outside (0, h_max = " << region.h_max << "]";
        throw Error(ErrorKind::OutOfRange, os.str());
    }
    // Boundary resolution: the top value maps to the maximizing sphere.
    if (h >= region.h_max * (1.0 - 1e-12)) return region.r_star;

    const auto g = [&](double r) { return mean_curvature(metric, r) - h; };
    const auto grid = log_grid(region.r_horizon, region.r_star, 10000);
    // Scan from the right: the first node at or below h brackets the
    // outermost root.
    for (std::size_t i = grid.size() - 1; i-- > 0;) {
        const double gi = g(grid[i]);
        if (gi == 0.0) return grid[i];
        if (gi < 0.0) return bisect(g, grid[i], grid[i + 1], 1e-12);
    }
    // H never reached h above the horizon, so h sits below the rounded zero
    // at the computed horizon radius; the limit surface is the horizon.
    return region.r_horizon;
}

double outermost_cmc_radius(const Metric& metric, double h) {
    return outermost_cmc_radius(metric, interior_region(metric), h);
}

namespace {

struct UGrid {
    std::vector<double> r;
    std::vector<double> h;
    std::vector<double> u;
};

UGrid build_u(const Metric& metric, const InteriorRegion& region, std::size_t grid_n) {
    UGrid g;
    g.r = log_grid(region.r_horizon, region.r_star, std::max<std::size_t>(grid_n, 2));
    g.h.resize(g.r.size());
    for (std::size_t i = 0; i < g.r.size(); ++i) g.h[i] = mean_curvature(metric, g.r[i]);
    g.u.resize(g.r.size());
    double running = g.h.back();
    for (std::size_t i = g.r.size(); i-- > 0;) {
        running = std::min(running, g.h[i]);
        g.u[i] = std::max(0.0, running);  // H(r_horizon) is a rounded zero
    }
    return g;
}

}  // namespace

FoliationProfile level_set_function(const Metric& metric, std::size_t grid_n,
                                    std::size_t h_table_n) {
    FoliationProfile profile;
    profile.region = interior_region(metric);
    UGrid g = build_u(metric, profile.region, grid_n);
    profile.r_grid = std::move(g.r);
    profile.h_values = std::move(g.h);
    profile.u_values = std::move(g.u);

    // Plateaus: maximal runs where u sits strictly below H.
    constexpr double kPlateauTol = 1e-8;
    const std::size_t n = profile.r_grid.size();
    std::size_t i = 0;
    while (i < n) {
        if (profile.u_values[i] < profile.h_values[i] - kPlateauTol) {
            std::size_t j = i;
            while (j + 1 < n &&
                   profile.u_values[j + 1] < profile.h_values[j + 1] - kPlateauTol)
                ++j;
            profile.plateaus.push_back(
                {profile.r_grid[i], profile.r_grid[j], profile.u_values[j]});
            i = j + 1;
        } else {
            ++i;
        }
    }

    profile.h_table.reserve(h_table_n);
    profile.r_of_h.reserve(h_table_n);
    for (std::size_t k = 1; k <= h_table_n; ++k) {
        const double h =
            profile.region.h_max * static_cast<double>(k) / static_cast<double>(h_table_n);
        profile.h_table.push_back(h);
        profile.r_of_h.push_back(outermost_cmc_radius(metric, profile.region, h));
    }
    return profile;
}

double radial_volume(const Metric& metric, double r_inner, double r_outer) {
    if (r_outer <= r_inner) return 0.0;
    return integrate([&](double s) { return volume_density(metric, s); }, r_inner, r_outer,
                     1e-9);
}

double j_h(const Metric& metric, const InteriorRegion& region, double h, const RadialSet& f) {
    return area(metric, f.outer_radius) -
           h * radial_volume(metric, region.r_horizon, f.outer_radius);
}

double j_h(const Metric& metric, double h, const RadialSet& f) {
    return j_h(metric, interior_region(metric), h, f);
}

RadialSet minimize_j_h_outside(const Metric& metric, const InteriorRegion& region, double h,
                               std::size_t grid_n) {
    const double r_h_of = outermost_cmc_radius(metric, region, h);
    if (r_h_of >= region.r_star) return {region.r_star};

    const auto grid = log_grid(r_h_of, region.r_star, std::max<std::size_t>(grid_n, 2));
    // Cumulative volume by per-cell Simpson; relative comparisons across the
    // grid are all that matters here.
    double vol = radial_volume(metric, region.r_horizon, r_h_of);
    double best_j = area(metric, grid.front()) - h * vol;
    std::size_t best_i = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double a = grid[i - 1], b = grid[i], m = 0.5 * (a + b);
        vol += (b - a) / 6.0 *
               (volume_density(metric, a) + 4.0 * volume_density(metric, m) +
                volume_density(metric, b));
        const double j = area(metric, b) - h * vol;
        if (j < best_j) {
            best_j = j;
            best_i = i;
        }
    }
    const double step = (best_i + 1 < grid.size() ? grid[best_i + 1] : grid[best_i]) -
                        (best_i > 0 ? grid[best_i - 1] : grid[best_i]);
    if (std::abs(grid[best_i] - r_h_of) > step) {
        std::ostringstream os;
        os << "J_h minimizer at rho = " << grid[best_i] << " but outermost CMC radius is "
           << r_h_of << " (h = " << h << ")";
        throw Error(ErrorKind::OracleMismatch, os.str());
    }
    return {grid[best_i]};
}

RadialSet minimize_j_h_outside(const Metric& metric, double h, std::size_t grid_n) {
    return minimize_j_h_outside(metric, interior_region(metric), h, grid_n);
}

BoundReport check_outward_area_minimizing(const Metric& metric, const InteriorRegion& region,
                                          double h, std::size_t grid_n) {
    const double r_h_of = outermost_cmc_radius(metric, region, h);
    const double base = area(metric, r_h_of);
    const auto grid = log_grid(r_h_of, region.r_star, std::max<std::size_t>(grid_n, 2));
    double lowest = base;
    double at = r_h_of;
    for (double rho : grid) {
        const double a = area(metric, rho);
        if (a < lowest) {
            lowest = a;
            at = rho;
        }
    }
    BoundReport rep = make_bound_report("outward_minimizing", base, lowest,
                                        1e-9 * std::max(1.0, base));
    rep.extras["h"] = h;
    rep.extras["rho_at_min"] = at;
    return rep;
}

BoundReport check_family_properties(const Metric& metric, const InteriorRegion& region,
                                    const std::vector<double>& h_sequence) {
    BoundReport rep;
    rep.name = "family_properties";
    if (h_sequence.size() < 2) {
        rep.passed = true;
        rep.note = "sequence too short to constrain anything";
        return rep;
    }
    for (std::size_t i = 1; i < h_sequence.size(); ++i) {
        if (h_sequence[i] > h_sequence[i - 1]) {
            rep.passed = false;
            rep.note = "h sequence is not non-increasing";
            return rep;
        }
    }
    std::vector<double> radii(h_sequence.size());
    for (std::size_t i = 0; i < h_sequence.size(); ++i)
        radii[i] = outermost_cmc_radius(metric, region, h_sequence[i]);

    double worst_increase = 0.0;
    for (std::size_t i = 1; i < radii.size(); ++i)
        worst_increase = std::max(worst_increase, radii[i] - radii[i - 1]);

    const double limit_gap = std::abs(radii[radii.size() - 2] - radii.back());
    rep.lhs = limit_gap;
    rep.rhs = 1e-6;
    rep.tol = 0.0;
    rep.margin = rep.rhs - rep.lhs;
    const bool monotone = worst_increase <= 1e-9;
    rep.passed = monotone && limit_gap <= 1e-6;
    rep.extras["worst_monotonicity_violation"] = worst_increase;
    rep.extras["right_limit_gap"] = limit_gap;
    rep.note = monotone ? "r(h) non-increasing along the sequence"
                        : "r(h) increased along a decreasing h sequence";
    return rep;
}

namespace {

// Prefix integrals of u * volume density over the profile grid, with u
// interpolated linearly; evaluated at arbitrary outer radii.
class UVolumePrefix {
public:
    UVolumePrefix(const Metric& metric, const FoliationProfile& profile)
        : metric_(metric), profile_(profile) {
        const auto& r = profile.r_grid;
        prefix_.assign(r.size(), 0.0);
        for (std::size_t i = 1; i < r.size(); ++i)
            prefix_[i] = prefix_[i - 1] + cell(r[i - 1], profile.u_values[i - 1], r[i],
                                               profile.u_values[i]);
    }

    double up_to(double rho) const {
        const auto& r = profile_.r_grid;
        if (rho <= r.front()) return 0.0;
        if (rho >= r.back()) return prefix_.back();
        const auto it = std::upper_bound(r.begin(), r.end(), rho);
        const std::size_t i = static_cast<std::size_t>(it - r.begin()) - 1;
        const double t = (rho - r[i]) / (r[i + 1] - r[i]);
        const double u_rho =
            profile_.u_values[i] + t * (profile_.u_values[i + 1] - profile_.u_values[i]);
        return prefix_[i] + cell(r[i], profile_.u_values[i], rho, u_rho);
    }

private:
    double cell(double a, double ua, double b, double ub) const {
        if (b <= a) return 0.0;
        const double m = 0.5 * (a + b);
        const double um = 0.5 * (ua + ub);
        return (b - a) / 6.0 *
               (ua * volume_density(metric_, a) + 4.0 * um * volume_density(metric_, m) +
                ub * volume_density(metric_, b));
    }

    const Metric& metric_;
    const FoliationProfile& profile_;
    std::vector<double> prefix_;
};

}  // namespace

double j_u(const Metric& metric, const FoliationProfile& profile, const RadialSet& f) {
    const UVolumePrefix prefix(metric, profile);
    return area(metric, f.outer_radius) - prefix.up_to(f.outer_radius);
}

BoundReport check_subsolution(const Metric& metric, const FoliationProfile& profile, double h,
                              std::size_t n_competitors) {
    const InteriorRegion& region = profile.region;
    const double r_h_of = outermost_cmc_radius(metric, region, h);
    const UVolumePrefix prefix(metric, profile);
    const auto value = [&](double rho) { return area(metric, rho) - prefix.up_to(rho); };
    const double base = value(r_h_of);

    double worst = 0.0;
    double worst_rho = r_h_of;
    const std::size_t n = std::max<std::size_t>(n_competitors, 2);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(n - 1);
        const double rho = r_h_of + t * (region.r_star - r_h_of);
        const double excess = base - value(rho);
        if (excess > worst) {
            worst = excess;
            worst_rho = rho;
        }
    }
    BoundReport rep = make_bound_report("subsolution", worst, 0.0, 1e-6);
    rep.extras["h"] = h;
    rep.extras["worst_competitor_rho"] = worst_rho;
    rep.note = "largest J_u(outermost set) - J_u(competitor) over the sample";
    return rep;
}

BoundReport bv_norm_check(const Metric& metric, const FoliationProfile& profile) {
    const auto tv_and_jump = [&](const std::vector<double>& r, const std::vector<double>& u) {
        double tv = 0.0, jump = 0.0;
        for (std::size_t i = 1; i < r.size(); ++i) {
            const double du = u[i] - u[i - 1];  // u is non-decreasing
            tv += 0.5 * (area(metric, r[i - 1]) + area(metric, r[i])) * du;
            jump = std::max(jump, du);
        }
        return std::pair{tv, jump};
    };
    const auto [tv, jump] = tv_and_jump(profile.r_grid, profile.u_values);
    const double bound = area(metric, profile.region.r_star) * profile.region.h_max;
    BoundReport rep =
        make_bound_report("bv_norm", tv, bound, 1e-6 * std::max(1.0, bound));

    // Continuity: the largest grid jump of u must shrink under refinement.
    const UGrid fine = build_u(metric, profile.region, 2 * profile.r_grid.size());
    const auto [tv_fine, jump_fine] = tv_and_jump(fine.r, fine.u);
    const bool continuous = jump_fine <= 0.75 * jump + 1e-12;
    rep.passed = rep.passed && continuous;
    rep.extras["total_variation"] = tv;
    rep.extras["total_variation_refined"] = tv_fine;
    rep.extras["max_grid_jump"] = jump;
    rep.extras["max_grid_jump_refined"] = jump_fine;
    if (!continuous) rep.note = "largest grid jump of u did not shrink under refinement";
    return rep;
}

}  // namespace cmclab
