#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cmclab/numerics.hpp"

namespace cmclab {

// Conformally flat metric g = phi(r)^4 * delta on the coordinate annulus
// [r_min, r_cutoff]. All geometry downstream is a function of phi and its
// first two radial derivatives.

enum class MetricKind { Schwarzschild, Analytic, Tabulated };

// Gaussian perturbation of phi: amplitude * exp(-(r-center)^2 / (2 width^2)).
// Amplitude may be negative; large |amplitude| can destroy positivity or
// create extra minimal spheres, which validation rejects.
struct BumpTerm {
    double amplitude = 0.0;
    double center = 1.0;
    double width = 0.1;
};

// Smoothed-shell perturbation, expressed through w = r*phi:
//   w += -strength * softness * softplus((radius - r) / softness)
// so w' gains strength * sigmoid((radius - r) / softness) and w'' stays
// concave. Keeps scalar curvature contributions non-negative, decays faster
// than any power above `radius`, and leaves the ADM mass unchanged.
struct ShellTerm {
    double strength = 0.0;
    double radius = 1.0;
    double softness = 0.05;
};

struct PhiJet {
    double phi = 1.0;
    double dphi = 0.0;
    double d2phi = 0.0;
};

struct MetricInvariants {
    double c_lower = 0.0;      // sup of max(0, -R_M) over the domain
    double adm_mass = 0.0;
    bool nonneg_scalar = true;  // R_M >= 0 everywhere (within tolerance)
};

struct ValidationReport {
    bool valid = false;
    double r_horizon = 0.0;
    std::vector<double> minimal_radii;  // every H = 0 crossing found
    std::vector<double> offending_radii;  // where H <= 0 above the horizon
    std::string note;
};

class Metric {
public:
    static Metric schwarzschild(double mass, double r_min = 0.0, double r_cutoff = 0.0);
    static Metric analytic(std::vector<double> masses, std::vector<BumpTerm> bumps,
                           std::vector<ShellTerm> shells, double r_min, double r_cutoff);
    static Metric tabulated(std::vector<double> r, std::vector<double> phi,
                            double r_min = 0.0, double r_cutoff = 0.0);

    PhiJet conformal_factor(double r) const;
    double phi(double r) const { return conformal_factor(r).phi; }

    // R_M = -8 phi^-5 (phi'' + (2/r) phi'), the scalar curvature of g.
    double scalar_curvature(double r) const;

    MetricKind kind() const { return kind_; }
    double r_min() const { return r_min_; }
    double r_cutoff() const { return r_cutoff_; }

    // Finite-difference step for kinds without closed-form derivatives.
    // Every analytic term family here has closed forms, so this is only a
    // config passthrough; tabulated metrics differentiate their spline.
    double deriv_step() const { return deriv_step_; }
    void set_deriv_step(double s) { deriv_step_ = s; }

    double asym_tol() const { return asym_tol_; }
    void set_asym_tol(double t) { asym_tol_ = t; }

    const std::string& id() const { return id_; }
    void set_id(std::string id) { id_ = std::move(id); }

private:
    Metric() = default;
    PhiJet eval_analytic(double r) const;

    MetricKind kind_ = MetricKind::Schwarzschild;
    std::vector<double> masses_;
    std::vector<BumpTerm> bumps_;
    std::vector<ShellTerm> shells_;
    CubicSpline table_;
    double r_min_ = 0.0;
    double r_cutoff_ = 0.0;
    double deriv_step_ = 1e-5;
    double asym_tol_ = 1e-3;
    std::string id_ = "metric";
};

// C = sup max(0, -R_M) over a dense log-spaced grid, polished by golden
// section around the grid minimum of R_M.
double curvature_lower_bound(const Metric& metric, std::size_t grid_n = 10000);

// ADM mass from the decay of phi: m = -2 lim r^2 phi'(r), evaluated with
// one Richardson step in 1/r at r_cutoff. Throws BadMetric when the
// estimates at r_cutoff and r_cutoff/2 disagree beyond tolerance.
double adm_mass(const Metric& metric);

MetricInvariants metric_invariants(const Metric& metric, std::size_t grid_n = 10000);

// Checks |phi(r_cutoff) - 1| <= asym_tol and phi > 0 on a dense grid.
// Throws BadMetric on failure.
void check_asymptotics(const Metric& metric);

// Locates every minimal sphere and demands the domain be an exterior region:
// exactly one H = 0 crossing, H > 0 on a dense grid above it. A non-valid
// report carries the evidence; callers that must not proceed use
// require_exterior_region instead.
ValidationReport validate_exterior_region(const Metric& metric);

// Throws NoHorizon / NotOutermost / BadMetric unless the report is valid.
double require_exterior_region(const Metric& metric);

}  // namespace cmclab
