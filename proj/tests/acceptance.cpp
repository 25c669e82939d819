// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failed criteria. Runs the library end to end on the bundled corpus.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cmclab/config.hpp"
#include "cmclab/foliation.hpp"
#include "cmclab/metric.hpp"
#include "cmclab/numerics.hpp"
#include "cmclab/report.hpp"
#include "cmclab/solver.hpp"
#include "cmclab/sphere.hpp"
#include "cmclab/stability.hpp"
#include "support.hpp"

using cmclab::Metric;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Criterion {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            if (!detail.empty()) detail += "; ";
            detail += what;
            ok = false;
        }
    }

    void expect_close(double got, double want, double tol, const std::string& what) {
        if (!(std::abs(got - want) <= tol)) {
            std::ostringstream os;
            os << what << " (got " << got << ", want " << want << " +/- " << tol << ")";
            expect(false, os.str());
        }
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

Criterion criterion_closed_forms() {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();

    Metric m1 = Metric::schwarzschild(1.0);
    const double r_h = cmclab::find_horizon(m1);
    c.expect_close(r_h, 0.5, 1e-10, "horizon radius");
    c.expect_close(cmclab::area(m1, r_h), 16.0 * kPi, 1e-8, "horizon area");

    const auto hm = cmclab::find_hmax(m1);
    c.expect_close(hm.h_max, 2.0 / (3.0 * std::sqrt(3.0)), 1e-8, "largest cmc value");
    c.expect_close(cmclab::areal_radius(m1, hm.r_star), 3.0, 1e-8,
                   "area radius of the maximizer");

    const double elapsed = seconds_since(t0);
    c.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s exceeds 1 s");
    return c;
}

Criterion criterion_sharpness() {
    Criterion c;
    Metric m1 = Metric::schwarzschild(1.0);
    const auto hm = cmclab::find_hmax(m1);
    const double h_star = cmclab::mean_curvature(m1, hm.r_star);
    const double a_star = cmclab::area(m1, hm.r_star);

    const double raw = h_star * h_star * a_star;
    const double raw_target = 16.0 * kPi / 3.0;
    c.expect(std::abs(raw - raw_target) <= 1e-8 * raw_target,
             "scale-invariant product misses 16 pi / 3");

    const double a_h = cmclab::area(m1, cmclab::find_horizon(m1));
    const double lhs = hm.h_max * hm.h_max;
    const double rhs = 16.0 * kPi / (3.0 * a_h);
    c.expect_close(lhs, 4.0 / 27.0, 1e-10, "squared maximum");
    c.expect_close(rhs, 1.0 / 3.0, 1e-10, "normalized ceiling");
    c.expect(lhs < rhs, "strict margin lost");
    return c;
}

Criterion criterion_marginal_stability() {
    Criterion c;
    Metric m1 = Metric::schwarzschild(1.0);
    const auto hm = cmclab::find_hmax(m1);

    const double lambda0 = cmclab::stability_spectrum(m1, hm.r_star).eigenvalues[0];
    c.expect(std::abs(lambda0) <= 1e-6,
             "lowest eigenvalue at the maximizer = " + std::to_string(lambda0));

    double worst = 0.0;
    for (double r : cmclab::log_grid(0.5, 1.0e4, 500)) {
        const double lhs = cmclab::mean_curvature_deriv(m1, r);
        const double phi = m1.phi(r);
        const double rhs =
            cmclab::stability_spectrum(m1, r).eigenvalues[0] * phi * phi;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    c.expect(worst <= 1e-6,
             "derivative identity residual " + std::to_string(worst));
    return c;
}

Criterion criterion_mass_suite() {
    Criterion c;
    Metric m1 = Metric::schwarzschild(1.0);
    for (double r : {0.5, 1.0, 1.866, 5.0, 100.0}) {
        c.expect_close(cmclab::hawking_mass(m1, r), 1.0, 1e-8,
                       "quasi-local mass at r = " + std::to_string(r));
    }
    const double adm = cmclab::adm_mass(m1);
    c.expect_close(adm, 1.0, 1e-6, "total mass");

    const double a_h = cmclab::area(m1, cmclab::find_horizon(m1));
    const double horizon_mass = std::sqrt(a_h / (16.0 * kPi));
    c.expect(adm >= horizon_mass - 1e-8, "mass inequality reversed");
    c.expect_close(horizon_mass, adm, 1e-8, "horizon equality");
    return c;
}

const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "schwarzschild_m1", "schwarzschild_m2", "dip_metric", "dip_metric_nonneg"};
    return names;
}

Criterion criterion_area_radius_vs_mass() {
    Criterion c;
    int enforced_metrics = 0;
    for (const auto& name : corpus_names()) {
        Metric metric = cmclab::load_metric(name);
        const auto ctx = cmclab::exterior_context(metric, 4000);
        if (!ctx.nonneg_scalar) continue;  // hypothesis of the bound
        ++enforced_metrics;
        int evaluated = 0;
        for (double r : cmclab::log_grid(ctx.r_horizon, metric.r_cutoff(), 1500)) {
            const auto rep = cmclab::check_area_radius_hawking(metric, ctx, r);
            if (rep.skipped) continue;
            ++evaluated;
            if (!rep.passed) {
                c.expect(false, name + ": bound fails at r = " + std::to_string(r));
                break;
            }
        }
        c.expect(evaluated > 0, name + ": no strongly stable spheres evaluated");
    }
    c.expect(enforced_metrics == 3, "unexpected corpus curvature classification");

    Metric m1 = Metric::schwarzschild(1.0);
    const auto hm = cmclab::find_hmax(m1);
    const double gap = cmclab::areal_radius(m1, hm.r_star) -
                       3.0 * cmclab::hawking_mass(m1, hm.r_star);
    c.expect(std::abs(gap) <= 1e-8, "equality at the maximizer off by " +
                                        std::to_string(gap));
    return c;
}

Criterion criterion_diameter() {
    Criterion c;
    for (const auto& name : corpus_names()) {
        Metric metric = cmclab::load_metric(name);
        const auto ctx = cmclab::exterior_context(metric, 4000);
        int evaluated = 0;
        for (double r : cmclab::log_grid(ctx.r_horizon, metric.r_cutoff(), 1500)) {
            const auto rep = cmclab::check_diameter_bound(metric, ctx, r);
            if (rep.skipped) continue;
            ++evaluated;
            if (!rep.passed) {
                c.expect(false, name + ": diameter bound fails at r = " +
                                    std::to_string(r));
                break;
            }
        }
        if (ctx.nonneg_scalar) {
            c.expect(evaluated > 0, name + ": no spheres evaluated");
        } else {
            c.expect(evaluated == 0, name + ": hypothesis gating missing");
        }
    }

    Metric m1 = Metric::schwarzschild(1.0);
    const auto hm = cmclab::find_hmax(m1);
    const auto star = cmclab::check_diameter_bound(m1, hm.r_star);
    c.expect(star.passed && !star.skipped, "maximizer report unusable");
    c.expect(std::abs(star.margin) <= 1e-8, "saturation off by " +
                                                std::to_string(star.margin));
    c.expect(star.extras.count("strict_constant_bound") == 1 &&
                 star.extras.count("strict_constant_margin") == 1,
             "strict constant not displayed");
    if (star.extras.count("strict_constant_margin") == 1) {
        c.expect(star.extras.at("strict_constant_margin") < 0.0,
                 "strict constant unexpectedly holds at the maximizer");
    }
    return c;
}

Criterion criterion_foliation_battery() {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();

    for (const auto& name : {std::string("schwarzschild_m1"),
                             std::string("dip_metric_nonneg")}) {
        Metric metric = cmclab::load_metric(name);
        const auto prof = cmclab::level_set_function(metric, 10000, 1024);
        const auto& region = prof.region;

        // Level-set endpoints and monotonicity.
        c.expect(std::abs(prof.u_values.front()) <= 1e-9, name + ": u(r_h) != 0");
        c.expect(std::abs(prof.u_values.back() - region.h_max) <= 1e-12,
                 name + ": u(r_star) != h_max");
        bool monotone = true;
        for (size_t i = 1; i < prof.u_values.size(); ++i) {
            if (prof.u_values[i] < prof.u_values[i - 1] - 1e-12) monotone = false;
        }
        c.expect(monotone, name + ": u not non-decreasing");

        // Reverse sweep against the definitional running minimum.
        double running = prof.h_values.back();
        double worst_u_gap = 0.0;
        for (size_t i = prof.h_values.size(); i-- > 0;) {
            running = std::min(running, prof.h_values[i]);
            double clamped = std::max(0.0, std::min(running, region.h_max));
            worst_u_gap = std::max(
                worst_u_gap, std::min(std::abs(prof.u_values[i] - running),
                                      std::abs(prof.u_values[i] - clamped)));
        }
        c.expect(worst_u_gap <= 1e-12,
                 name + ": definitional u residual " + std::to_string(worst_u_gap));

        // Brute-force minimizer concurs with the radius function.
        const auto ladder = cmclab::log_grid(1e-3 * region.h_max,
                                             0.999 * region.h_max, 20);
        for (double h : ladder) {
            const double r = cmclab::outermost_cmc_radius(metric, region, h);
            const auto best = cmclab::minimize_j_h_outside(metric, region, h, 10000);
            const double step = 3.0 * (region.r_star - r) / 10000.0 + 1e-12;
            if (std::abs(best.outer_radius - r) > step) {
                c.expect(false, name + ": minimizer strays at h = " + std::to_string(h));
                break;
            }
        }

        // Outward area minimizing along the ladder.
        for (double h : ladder) {
            if (!cmclab::check_outward_area_minimizing(metric, region, h, 2048).passed) {
                c.expect(false, name + ": area sweep fails at h = " + std::to_string(h));
                break;
            }
        }

        // Family monotonicity and right limits.
        for (double frac : {0.35, 0.75}) {
            const double h_limit = frac * region.h_max;
            const double start = std::min(region.h_max * 0.999, h_limit * 1.4);
            std::vector<double> seq;
            for (int k = 0; k <= 44; ++k) {
                seq.push_back(h_limit + (start - h_limit) * std::pow(0.5, k));
            }
            seq.push_back(h_limit);
            const auto rep = cmclab::check_family_properties(metric, region, seq);
            c.expect(rep.passed, name + ": family check fails toward h = " +
                                     std::to_string(h_limit));
        }

        // Sub-solution property with at least 200 competitors per level.
        std::vector<double> sub_h;
        for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) sub_h.push_back(frac * region.h_max);
        if (!prof.plateaus.empty()) {
            sub_h.push_back(prof.plateaus.front().u_const);        // jump level
            sub_h.push_back(0.9 * prof.plateaus.front().u_const);  // below the jump:
            // the competitor range then contains the whole jumped annulus.
        }
        for (double h : sub_h) {
            if (!cmclab::check_subsolution(metric, prof, h, 256).passed) {
                c.expect(false, name + ": sub-solution fails at h = " + std::to_string(h));
                break;
            }
        }
        if (!prof.plateaus.empty()) {
            // u < H strictly inside the jumped annulus, so the functional
            // rises across it: a competitor stopping inside never beats the
            // leaf at the inner edge.
            const auto& p = prof.plateaus.front();
            const double mid = 0.5 * (p.r_lo + p.r_hi);
            const double at_lo = cmclab::j_u(metric, prof, cmclab::RadialSet{p.r_lo});
            const double at_mid = cmclab::j_u(metric, prof, cmclab::RadialSet{mid});
            const double at_hi = cmclab::j_u(metric, prof, cmclab::RadialSet{p.r_hi});
            c.expect(at_lo <= at_mid + 1e-6 && at_mid <= at_hi + 1e-6,
                     name + ": stopping inside the jump annulus beats the leaf");
        } else {
            c.expect(name == "schwarzschild_m1", name + ": expected a jump annulus");
        }

        // Total variation bound.
        c.expect(cmclab::bv_norm_check(metric, prof).passed,
                 name + ": total variation bound fails");
    }

    const double elapsed = seconds_since(t0);
    c.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s exceeds 30 s");
    return c;
}

Criterion criterion_scale_covariance() {
    Criterion c;
    struct Scalars {
        double r_h, a_h, h_max, r_star, adm, tv;
        std::vector<std::string> names;
        std::vector<bool> passed, skipped;
        bool overall;
    };
    auto measure = [&](double mass) {
        Metric metric = Metric::schwarzschild(mass);
        metric.set_id("scale_probe");
        const auto suite = cmclab::run_verify_suite(metric, 2500);
        Scalars s{};
        s.r_h = cmclab::find_horizon(metric);
        s.a_h = cmclab::area(metric, s.r_h);
        const auto hm = cmclab::find_hmax(metric);
        s.h_max = hm.h_max;
        s.r_star = hm.r_star;
        s.adm = cmclab::adm_mass(metric);
        s.tv = 0.0;
        for (const auto& rep : suite.reports) {
            s.names.push_back(rep.name);
            s.passed.push_back(rep.passed);
            s.skipped.push_back(rep.skipped);
            if (rep.name == "bv_norm" && rep.extras.count("total_variation")) {
                s.tv = rep.extras.at("total_variation");
            }
        }
        s.overall = suite.overall;
        return s;
    };

    const Scalars base = measure(1.0);
    c.expect(base.overall, "verify suite fails at mass 1");
    for (double mass : {0.5, 2.0}) {
        const Scalars got = measure(mass);
        c.expect(got.overall, "verify suite fails at mass " + std::to_string(mass));
        c.expect(got.names == base.names, "report lineup differs");
        c.expect(got.passed == base.passed && got.skipped == base.skipped,
                 "pass/skip pattern differs at mass " + std::to_string(mass));

        const double k = mass;
        c.expect_close(got.r_h / k, base.r_h, 1e-8, "rescaled horizon radius");
        c.expect_close(got.a_h / (k * k), base.a_h, 1e-8 * base.a_h, "rescaled area");
        c.expect_close(got.h_max * k, base.h_max, 1e-8, "rescaled cmc maximum");
        c.expect_close(got.r_star / k, base.r_star, 1e-8, "rescaled maximizer");
        c.expect_close(got.adm / k, base.adm, 1e-8, "rescaled total mass");
        c.expect(base.tv > 0.0 && std::abs(got.tv / k - base.tv) <= 1e-8 * base.tv,
                 "rescaled total variation differs at mass " + std::to_string(mass));
    }
    return c;
}

Criterion criterion_determinism() {
    Criterion c;
    std::string cli;
    try {
        cli = testsupport::cli_path();
    } catch (const std::exception& e) {
        c.expect(false, e.what());
        return c;
    }
    const std::string cmd =
        cli + " verify --metric schwarzschild_m1 --grid 1500 2>/dev/null";
    const auto first = testsupport::run_command(cmd);
    const auto second = testsupport::run_command(cmd);
    c.expect(first.exit_code == 0, "first run exited " + std::to_string(first.exit_code));
    c.expect(second.exit_code == 0,
             "second run exited " + std::to_string(second.exit_code));
    c.expect(!first.output.empty() && first.output.front() == '{',
             "stdout is not a JSON document");
    c.expect(first.output == second.output, "outputs differ between runs");
    return c;
}

}  // namespace

int main() {
    struct Entry {
        const char* label;
        std::function<Criterion()> run;
    };
    const std::vector<Entry> entries = {
        {"point-mass closed forms under 1 s", criterion_closed_forms},
        {"sharp bound at the maximizing sphere", criterion_sharpness},
        {"marginal stability at the maximizing sphere", criterion_marginal_stability},
        {"mass suite: quasi-local, total, horizon equality", criterion_mass_suite},
        {"area radius vs quasi-local mass on the corpus", criterion_area_radius_vs_mass},
        {"diameter bound with strict-constant display", criterion_diameter},
        {"foliation property battery under 30 s", criterion_foliation_battery},
        {"scale covariance of the verify suite", criterion_scale_covariance},
        {"byte-identical verify runs", criterion_determinism},
    };

    int failures = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
        Criterion result;
        try {
            result = entries[i].run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        if (result.ok) {
            std::printf("[PASS] criterion %zu: %s\n", i + 1, entries[i].label);
        } else {
            ++failures;
            std::printf("[FAIL] criterion %zu: %s: %s\n", i + 1, entries[i].label,
                        result.detail.c_str());
        }
        std::fflush(stdout);
    }
    return failures;
}
