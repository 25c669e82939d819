#include "cmclab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cmclab/error.hpp"
#include "cmclab/sphere.hpp"

namespace cmclab {

namespace {

constexpr double kPi = std::numbers::pi;

// 12 significant digits; floats keep a decimal marker so their type
// survives a parse -> dump round trip.
std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos && s.find_first_of("0123456789") != std::string::npos)
        s += ".0";
    return s;
}

void write_json(std::ostream& os, const nlohmann::json& v, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
    const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
    switch (v.type()) {
        case nlohmann::json::value_t::object: {
            if (v.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            std::size_t i = 0;
            for (const auto& [key, value] : v.items()) {
                os << pad_in << nlohmann::json(key).dump() << ": ";
                write_json(os, value, depth + 1);
                if (++i != v.size()) os << ',';
                os << '\n';
            }
            os << pad << '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (v.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                os << pad_in;
                write_json(os, v[i], depth + 1);
                if (i + 1 != v.size()) os << ',';
                os << '\n';
            }
            os << pad << ']';
            return;
        }
        case nlohmann::json::value_t::number_float:
            os << format_double(v.get<double>());
            return;
        default:
            os << v.dump();
            return;
    }
}

}  // namespace

std::string canonical_json(const nlohmann::json& value) {
    std::ostringstream os;
    write_json(os, value, 0);
    os << '\n';
    return os.str();
}

nlohmann::json bound_report_json(const BoundReport& report) {
    nlohmann::json j;
    j["name"] = report.name;
    j["lhs"] = report.lhs;
    j["rhs"] = report.rhs;
    j["margin"] = report.margin;
    j["tol"] = report.tol;
    j["passed"] = report.passed;
    j["sharp"] = report.sharp;
    j["skipped"] = report.skipped;
    j["note"] = report.note;
    nlohmann::json extras = nlohmann::json::object();
    for (const auto& [key, value] : report.extras) extras[key] = value;
    j["extras"] = extras;
    return j;
}

namespace {

struct SweepAccumulator {
    explicit SweepAccumulator(std::string key = "worst_r") : key_(std::move(key)) {}

    void feed(const BoundReport& rep, double at) {
        all_passed_ = all_passed_ && rep.passed;
        if (!any || rep.margin < worst.margin) {
            worst = rep;
            worst.extras[key_] = at;
            any = true;
        }
        worst.passed = all_passed_;
    }

    BoundReport worst;
    bool any = false;

private:
    std::string key_;
    bool all_passed_ = true;
};

std::vector<double> h_ladder(double h_max, const std::vector<double>& extra_h,
                             std::size_t count) {
    std::vector<double> ladder;
    // Log-spaced across (0, h_max); endpoints pulled inside the open range.
    const double lo = 1e-3 * h_max, hi = 0.999 * h_max;
    for (double h : log_grid(lo, hi, count)) ladder.push_back(h);
    for (double h : extra_h)
        if (h > 0.0 && h <= h_max) ladder.push_back(h);
    std::sort(ladder.begin(), ladder.end());
    return ladder;
}

}  // namespace

SuiteResult run_verify_suite(const Metric& metric, std::size_t grid_n,
                             const std::vector<double>& extra_h) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult suite;
    suite.metric_id = metric.id();
    suite.grid_n = grid_n;

    const ExteriorContext ctx = exterior_context(metric, grid_n);
    const double adm = adm_mass(metric);
    const HmaxResult hm = find_hmax(metric, ctx.r_horizon, grid_n);

    {
        const HorizonStability hs = horizon_stability_check(metric);
        BoundReport rep =
            make_bound_report("horizon_stability", -hs.lambda_0, 0.0, kDegenerateTol);
        rep.note = hs.note;
        rep.extras["lambda_0"] = hs.lambda_0;
        rep.extras["degenerate"] = hs.degenerate ? 1.0 : 0.0;
        suite.reports.push_back(rep);
    }

    // Pointwise bound sweeps over the exterior grid; each aggregate keeps
    // the worst-margin instance.
    {
        const auto grid = log_grid(ctx.r_horizon, metric.r_cutoff(), grid_n);
        SweepAccumulator normalized, raw, enclosing, diameter, hawking_radius;
        std::size_t raw_evaluated = 0, stable_count = 0;
        double worst_step = 0.0, worst_step_r = ctx.r_horizon;
        double prev_mass = hawking_mass(metric, grid.front());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double r = grid[i];
            const auto [norm_rep, raw_rep] = check_cmc_upper_bound(metric, ctx, r);
            normalized.feed(norm_rep, r);
            if (!raw_rep.skipped) {
                raw.feed(raw_rep, r);
                ++raw_evaluated;
            }
            const double a_r = area(metric, r);
            enclosing.feed(make_bound_report("enclosing_area", ctx.horizon_area, a_r,
                                             1e-9 * std::max(1.0, a_r)),
                           r);
            const BoundReport diam = check_diameter_bound(metric, ctx, r);
            if (!diam.skipped) diameter.feed(diam, r);
            const BoundReport rh = check_area_radius_hawking(metric, ctx, r);
            if (!rh.skipped) {
                hawking_radius.feed(rh, r);
                ++stable_count;
            }
            if (i > 0 && ctx.nonneg_scalar) {
                const double cur_mass = hawking_mass(metric, r);
                const double step = prev_mass - cur_mass;
                if (step > worst_step) {
                    worst_step = step;
                    worst_step_r = r;
                }
                prev_mass = cur_mass;
            }
        }

        normalized.worst.name = "cmc_bound_normalized_sweep";
        suite.reports.push_back(normalized.worst);
        if (raw.any) {
            raw.worst.name = "cmc_bound_raw_sweep";
            raw.worst.extras["evaluated_count"] = static_cast<double>(raw_evaluated);
            suite.reports.push_back(raw.worst);
        } else {
            suite.reports.push_back(
                make_skipped_report("cmc_bound_raw_sweep", "no strongly stable spheres"));
        }
        enclosing.worst.name = "enclosing_area_sweep";
        suite.reports.push_back(enclosing.worst);
        if (diameter.any) {
            diameter.worst.name = "diameter_sweep";
            suite.reports.push_back(diameter.worst);
        } else {
            suite.reports.push_back(make_skipped_report(
                "diameter_sweep", ctx.nonneg_scalar ? "no strongly stable spheres"
                                                    : "scalar curvature dips negative"));
        }
        if (hawking_radius.any) {
            hawking_radius.worst.name = "hawking_radius_sweep";
            hawking_radius.worst.extras["evaluated_count"] = static_cast<double>(stable_count);
            suite.reports.push_back(hawking_radius.worst);
        } else {
            suite.reports.push_back(make_skipped_report(
                "hawking_radius_sweep", ctx.nonneg_scalar ? "no strongly stable spheres"
                                                          : "scalar curvature dips negative"));
        }
        if (ctx.nonneg_scalar) {
            BoundReport geroch = make_bound_report("hawking_monotone", worst_step, 0.0, 1e-8);
            geroch.extras["worst_r"] = worst_step_r;
            geroch.note = "largest decrease of Hawking mass along the sphere family";
            suite.reports.push_back(geroch);
        } else {
            suite.reports.push_back(
                make_skipped_report("hawking_monotone", "scalar curvature dips negative"));
        }
    }

    if (ctx.nonneg_scalar) {
        const double lhs = std::sqrt(ctx.horizon_area / (16.0 * kPi));
        BoundReport penrose =
            make_bound_report("penrose", lhs, adm, 1e-8 * std::max(1.0, std::abs(adm)));
        suite.reports.push_back(penrose);
    } else {
        BoundReport penrose =
            make_skipped_report("penrose", "scalar curvature dips negative");
        penrose.lhs = std::sqrt(ctx.horizon_area / (16.0 * kPi));
        penrose.rhs = adm;
        penrose.margin = penrose.rhs - penrose.lhs;
        suite.reports.push_back(penrose);
    }

    const InteriorRegion region{ctx.r_horizon, hm.r_star, hm.h_max};
    const auto ladder = h_ladder(hm.h_max, extra_h, 20);

    {
        double worst_err = 0.0, worst_h = ladder.front();
        for (double h : ladder) {
            const double r = outermost_cmc_radius(metric, region, h);
            const double err = std::abs(mean_curvature(metric, r) - h);
            if (err > worst_err) {
                worst_err = err;
                worst_h = h;
            }
        }
        BoundReport rep = make_bound_report("stationarity", worst_err, 0.0, 1e-9);
        rep.extras["worst_h"] = worst_h;
        rep.note = "largest |H(r(h)) - h| over the h ladder";
        suite.reports.push_back(rep);
    }

    {
        double worst_ratio = 0.0, worst_h = ladder.front();
        bool ok = true;
        std::string note = "J_h minimizer within one grid step of r(h) for the h ladder";
        for (double h : ladder) {
            try {
                const double r_h_of = outermost_cmc_radius(metric, region, h);
                const RadialSet best = minimize_j_h_outside(metric, region, h, 10000);
                const double step =
                    (region.r_star - r_h_of) / 10000.0 * 3.0 + 1e-12;  // log-grid slack
                const double ratio = std::abs(best.outer_radius - r_h_of) / step;
                if (ratio > worst_ratio) {
                    worst_ratio = ratio;
                    worst_h = h;
                }
            } catch (const Error& e) {
                ok = false;
                note = e.what();
            }
        }
        BoundReport rep = make_bound_report("jh_minimizer", worst_ratio, 1.0, 0.0);
        rep.passed = rep.passed && ok;
        rep.extras["worst_h"] = worst_h;
        rep.note = note;
        suite.reports.push_back(rep);
    }

    {
        SweepAccumulator outward("worst_h");
        for (double h : ladder)
            outward.feed(check_outward_area_minimizing(metric, region, h, 2048), h);
        outward.worst.name = "outward_minimizing_sweep";
        suite.reports.push_back(outward.worst);
    }

    for (double h_limit_frac : {0.35, 0.75}) {
        const double h_limit = h_limit_frac * hm.h_max;
        std::vector<double> seq;
        const double start = std::min(hm.h_max * 0.999, h_limit * 1.4);
        for (int k = 0; k <= 44; ++k) seq.push_back(h_limit + (start - h_limit) * std::pow(0.5, k));
        seq.push_back(h_limit);
        BoundReport rep = check_family_properties(metric, region, seq);
        rep.extras["h_limit"] = h_limit;
        suite.reports.push_back(rep);
    }

    {
        const FoliationProfile profile = level_set_function(metric, grid_n, 1024);
        SweepAccumulator sub("worst_h");
        for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9})
            sub.feed(check_subsolution(metric, profile, frac * hm.h_max, 256), frac * hm.h_max);
        for (double h : extra_h)
            if (h > 0.0 && h < hm.h_max) sub.feed(check_subsolution(metric, profile, h, 256), h);
        sub.worst.name = "subsolution_sweep";
        suite.reports.push_back(sub.worst);

        suite.reports.push_back(bv_norm_check(metric, profile));
    }

    suite.overall = true;
    for (const auto& rep : suite.reports)
        if (!rep.skipped && !rep.passed) suite.overall = false;

    suite.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    return suite;
}

nlohmann::json suite_json(const SuiteResult& suite) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = "verify";
    j["metric"] = suite.metric_id;
    j["grid_n"] = suite.grid_n;
    j["overall"] = suite.overall;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& rep : suite.reports) checks.push_back(bound_report_json(rep));
    j["checks"] = checks;
    return j;
}

void print_suite_table(std::ostream& os, const SuiteResult& suite) {
    os << "metric: " << suite.metric_id << "  grid: " << suite.grid_n << "  wall: "
       << format_double(suite.wall_ms) << " ms\n";
    for (const auto& rep : suite.reports) {
        os << "  " << (rep.skipped ? "SKIP" : (rep.passed ? "ok  " : "FAIL")) << "  "
           << rep.name;
        if (!rep.skipped)
            os << "  margin=" << format_double(rep.margin)
               << (rep.sharp ? " (sharp)" : "");
        if (!rep.note.empty()) os << "  [" << rep.note << "]";
        os << '\n';
    }
    os << (suite.overall ? "overall: pass" : "overall: FAIL") << '\n';
}

AnalyzeSummary analyze_metric(const Metric& metric, std::size_t grid_n) {
    AnalyzeSummary s;
    s.metric_id = metric.id();
    const ExteriorContext ctx = exterior_context(metric, grid_n);
    s.r_horizon = ctx.r_horizon;
    s.horizon_area = ctx.horizon_area;
    s.c_lower = ctx.c_lower;
    s.nonneg_scalar = ctx.nonneg_scalar;
    s.adm_mass = adm_mass(metric);
    const HmaxResult hm = find_hmax(metric, ctx.r_horizon, grid_n);
    s.h_max = hm.h_max;
    s.r_star = hm.r_star;
    const double lhs = std::sqrt(ctx.horizon_area / (16.0 * kPi));
    if (ctx.nonneg_scalar) {
        s.penrose = make_bound_report("penrose", lhs, s.adm_mass,
                                      1e-8 * std::max(1.0, std::abs(s.adm_mass)));
    } else {
        s.penrose = make_skipped_report("penrose", "scalar curvature dips negative");
        s.penrose.lhs = lhs;
        s.penrose.rhs = s.adm_mass;
        s.penrose.margin = s.penrose.rhs - s.penrose.lhs;
    }
    s.horizon_stability = horizon_stability_check(metric);
    return s;
}

nlohmann::json analyze_json(const AnalyzeSummary& s) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = "analyze";
    j["metric"] = s.metric_id;
    j["r_horizon"] = s.r_horizon;
    j["horizon_area"] = s.horizon_area;
    j["adm_mass"] = s.adm_mass;
    j["c_lower"] = s.c_lower;
    j["nonneg_scalar"] = s.nonneg_scalar;
    j["h_max"] = s.h_max;
    j["r_star"] = s.r_star;
    j["penrose"] = bound_report_json(s.penrose);
    nlohmann::json hs;
    hs["r_horizon"] = s.horizon_stability.r_horizon;
    hs["lambda_0"] = s.horizon_stability.lambda_0;
    hs["degenerate"] = s.horizon_stability.degenerate;
    hs["consistent"] = s.horizon_stability.consistent;
    hs["note"] = s.horizon_stability.note;
    j["horizon_stability"] = hs;
    return j;
}

void print_analyze_table(std::ostream& os, const AnalyzeSummary& s) {
    os << "metric:        " << s.metric_id << '\n'
       << "r_horizon:     " << format_double(s.r_horizon) << '\n'
       << "horizon_area:  " << format_double(s.horizon_area) << '\n'
       << "adm_mass:      " << format_double(s.adm_mass) << '\n'
       << "c_lower:       " << format_double(s.c_lower) << '\n'
       << "nonneg_scalar: " << (s.nonneg_scalar ? "yes" : "no") << '\n'
       << "h_max:         " << format_double(s.h_max) << '\n'
       << "r_star:        " << format_double(s.r_star) << '\n';
    if (s.penrose.skipped) {
        os << "penrose:       skipped [" << s.penrose.note << "]\n";
    } else {
        os << "penrose:       " << (s.penrose.passed ? "ok" : "FAIL") << "  sqrt(A/16pi)="
           << format_double(s.penrose.lhs) << " vs adm=" << format_double(s.penrose.rhs)
           << (s.penrose.sharp ? " (sharp)" : "") << '\n';
    }
    os << "horizon:       " << s.horizon_stability.note << '\n';
}

void write_profile_csv(std::ostream& os, const FoliationProfile& profile) {
    os << "r,H,u,plateau_flag\n";
    for (std::size_t i = 0; i < profile.r_grid.size(); ++i) {
        const bool plateau = profile.u_values[i] < profile.h_values[i] - 1e-8;
        os << format_double(profile.r_grid[i]) << ',' << format_double(profile.h_values[i])
           << ',' << format_double(profile.u_values[i]) << ',' << (plateau ? 1 : 0) << '\n';
    }
}

nlohmann::json foliate_json(const Metric& metric, const FoliationProfile& profile,
                            const std::vector<BoundReport>& checks) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = "foliate";
    j["metric"] = metric.id();
    j["r_horizon"] = profile.region.r_horizon;
    j["r_star"] = profile.region.r_star;
    j["h_max"] = profile.region.h_max;
    j["grid_n"] = profile.r_grid.size();
    nlohmann::json plateaus = nlohmann::json::array();
    for (const auto& p : profile.plateaus) {
        nlohmann::json e;
        e["r_lo"] = p.r_lo;
        e["r_hi"] = p.r_hi;
        e["u_const"] = p.u_const;
        plateaus.push_back(e);
    }
    j["plateaus"] = plateaus;
    double tv = 0.0;
    for (std::size_t i = 1; i < profile.r_grid.size(); ++i)
        tv += 0.5 *
              (area(metric, profile.r_grid[i - 1]) + area(metric, profile.r_grid[i])) *
              (profile.u_values[i] - profile.u_values[i - 1]);
    j["total_variation"] = tv;
    nlohmann::json check_arr = nlohmann::json::array();
    for (const auto& rep : checks) check_arr.push_back(bound_report_json(rep));
    j["checks"] = check_arr;
    return j;
}

}  // namespace cmclab
