#include "cmclab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cmclab/error.hpp"
#include "cmclab/solver.hpp"
#include "cmclab/sphere.hpp"

namespace cmclab {

namespace {

// Overflow-stable log(1 + e^x) and its derivative.
double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace

Metric Metric::schwarzschild(double mass, double r_min, double r_cutoff) {
    if (!(mass > 0.0)) throw Error(ErrorKind::BadConfig, "schwarzschild mass must be positive");
    if (r_min == 0.0) r_min = 0.25 * mass;
    if (r_cutoff == 0.0) r_cutoff = 1e4 * mass;
    Metric m;
    m.kind_ = MetricKind::Schwarzschild;
    m.masses_ = {mass};
    m.r_min_ = r_min;
    m.r_cutoff_ = r_cutoff;
    if (!(r_min > 0.0) || !(r_cutoff > r_min))
        throw Error(ErrorKind::BadConfig, "need 0 < r_min < r_cutoff");
    m.id_ = "schwarzschild";
    return m;
}

Metric Metric::analytic(std::vector<double> masses, std::vector<BumpTerm> bumps,
                        std::vector<ShellTerm> shells, double r_min, double r_cutoff) {
    if (!(r_min > 0.0) || !(r_cutoff > r_min))
        throw Error(ErrorKind::BadConfig, "need 0 < r_min < r_cutoff");
    for (double m : masses)
        if (!(m > 0.0)) throw Error(ErrorKind::BadConfig, "mass terms must be positive");
    for (const auto& b : bumps)
        if (!(b.width > 0.0)) throw Error(ErrorKind::BadConfig, "bump width must be positive");
    for (const auto& s : shells)
        if (!(s.softness > 0.0) || !(s.radius > 0.0))
            throw Error(ErrorKind::BadConfig, "shell radius and softness must be positive");
    Metric m;
    m.kind_ = MetricKind::Analytic;
    m.masses_ = std::move(masses);
    m.bumps_ = std::move(bumps);
    m.shells_ = std::move(shells);
    m.r_min_ = r_min;
    m.r_cutoff_ = r_cutoff;
    m.id_ = "analytic";
    return m;
}

Metric Metric::tabulated(std::vector<double> r, std::vector<double> phi, double r_min,
                         double r_cutoff) {
    if (r.size() < 4 || r.size() != phi.size())
        throw Error(ErrorKind::BadConfig, "tabulated metric needs >= 4 matching samples");
    Metric m;
    m.kind_ = MetricKind::Tabulated;
    m.r_min_ = (r_min == 0.0) ? r.front() : r_min;
    m.r_cutoff_ = (r_cutoff == 0.0) ? r.back() : r_cutoff;
    if (m.r_min_ < r.front() || m.r_cutoff_ > r.back())
        throw Error(ErrorKind::BadConfig, "domain exceeds the tabulated range");
    if (!(m.r_min_ > 0.0) || !(m.r_cutoff_ > m.r_min_))
        throw Error(ErrorKind::BadConfig, "need 0 < r_min < r_cutoff");
    try {
        m.table_ = CubicSpline(std::move(r), std::move(phi));
    } catch (const std::exception& e) {
        throw Error(ErrorKind::BadConfig, std::string("tabulated metric: ") + e.what());
    }
    m.id_ = "tabulated";
    return m;
}

PhiJet Metric::eval_analytic(double r) const {
    PhiJet j;
    j.phi = 1.0;
    j.dphi = 0.0;
    j.d2phi = 0.0;
    for (double m : masses_) {
        j.phi += 0.5 * m / r;
        j.dphi += -0.5 * m / (r * r);
        j.d2phi += m / (r * r * r);
    }
    for (const auto& b : bumps_) {
        const double z = (r - b.center) / b.width;
        const double g = b.amplitude * std::exp(-0.5 * z * z);
        j.phi += g;
        j.dphi += -z / b.width * g;
        j.d2phi += (z * z - 1.0) / (b.width * b.width) * g;
    }
    for (const auto& s : shells_) {
        const double x = (s.radius - r) / s.softness;
        const double sg = sigmoid(x);
        const double t = -s.strength * s.softness * softplus(x);  // contribution to w = r phi
        const double dt = s.strength * sg;
        const double d2t = -(s.strength / s.softness) * sg * (1.0 - sg);
        j.phi += t / r;
        j.dphi += dt / r - t / (r * r);
        j.d2phi += d2t / r - 2.0 * dt / (r * r) + 2.0 * t / (r * r * r);
    }
    return j;
}

PhiJet Metric::conformal_factor(double r) const {
    if (!(r >= r_min_) || !(r <= r_cutoff_)) {
        std::ostringstream os;
        os << "radius " << r << " outside [" << r_min_ << ", " << r_cutoff_ << "]";
        throw Error(ErrorKind::OutOfRange, os.str());
    }
    PhiJet j;
    if (kind_ == MetricKind::Tabulated) {
        j.phi = table_(r);
        j.dphi = table_.deriv(r);
        j.d2phi = table_.deriv2(r);
    } else {
        j = eval_analytic(r);
    }
    if (!(j.phi > 0.0)) {
        std::ostringstream os;
        os << "conformal factor not positive at r = " << r;
        throw Error(ErrorKind::BadMetric, os.str());
    }
    return j;
}

double Metric::scalar_curvature(double r) const {
    const PhiJet j = conformal_factor(r);
    const double p5 = j.phi * j.phi * j.phi * j.phi * j.phi;
    return -8.0 / p5 * (j.d2phi + 2.0 * j.dphi / r);
}

double curvature_lower_bound(const Metric& metric, std::size_t grid_n) {
    const auto grid = log_grid(metric.r_min(), metric.r_cutoff(), grid_n);
    std::vector<double> rm(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) rm[i] = metric.scalar_curvature(grid[i]);
    double lowest = *std::min_element(rm.begin(), rm.end());
    const auto f = [&](double r) { return metric.scalar_curvature(r); };
    // Polish every grid-local minimum; bump metrics can have several dips.
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (rm[i] <= rm[i - 1] && rm[i] <= rm[i + 1]) {
            const Extremum e = golden_min(f, grid[i - 1], grid[i + 1]);
            lowest = std::min(lowest, e.value);
        }
    }
    return std::max(0.0, -lowest);
}

double adm_mass(const Metric& metric) {
    const auto estimate = [&](double r) {
        const auto flux = [&](double s) { return -2.0 * s * s * metric.conformal_factor(s).dphi; };
        return 2.0 * flux(r) - flux(0.5 * r);  // Richardson step in 1/r
    };
    const double m1 = estimate(metric.r_cutoff());
    const double m2 = estimate(0.5 * metric.r_cutoff());
    const double tol = 1e-6 * std::max(1.0, std::abs(m1));
    if (std::abs(m1 - m2) > tol) {
        std::ostringstream os;
        os << "ADM mass not converged: " << m1 << " vs " << m2 << " at half cutoff";
        throw Error(ErrorKind::BadMetric, os.str());
    }
    return m1;
}

MetricInvariants metric_invariants(const Metric& metric, std::size_t grid_n) {
    MetricInvariants inv;
    inv.c_lower = curvature_lower_bound(metric, grid_n);
    inv.adm_mass = adm_mass(metric);
    inv.nonneg_scalar = inv.c_lower <= 1e-9;
    return inv;
}

void check_asymptotics(const Metric& metric) {
    const double tail = std::abs(metric.phi(metric.r_cutoff()) - 1.0);
    if (tail > metric.asym_tol()) {
        std::ostringstream os;
        os << "not asymptotically flat: |phi - 1| = " << tail << " at the cutoff";
        throw Error(ErrorKind::BadMetric, os.str());
    }
    for (double r : log_grid(metric.r_min(), metric.r_cutoff(), 4096))
        metric.conformal_factor(r);  // throws on positivity failure
}

ValidationReport validate_exterior_region(const Metric& metric) {
    ValidationReport rep;
    check_asymptotics(metric);
    rep.minimal_radii = minimal_sphere_radii(metric, 10000);
    if (rep.minimal_radii.empty()) {
        rep.note = "no minimal sphere in the domain";
        return rep;
    }
    if (rep.minimal_radii.size() > 1) {
        std::ostringstream os;
        os << "multiple minimal spheres:";
        for (double r : rep.minimal_radii) os << ' ' << r;
        rep.note = os.str();
        return rep;
    }
    rep.r_horizon = rep.minimal_radii.front();
    for (double r : log_grid(rep.r_horizon * (1.0 + 1e-7), metric.r_cutoff(), 10000)) {
        if (mean_curvature(metric, r) <= 0.0) rep.offending_radii.push_back(r);
    }
    if (!rep.offending_radii.empty()) {
        std::ostringstream os;
        os << "H <= 0 above the horizon at";
        for (std::size_t i = 0; i < std::min<std::size_t>(5, rep.offending_radii.size()); ++i)
            os << ' ' << rep.offending_radii[i];
        rep.note = os.str();
        return rep;
    }
    rep.valid = true;
    rep.note = "exterior region";
    return rep;
}

double require_exterior_region(const Metric& metric) {
    const ValidationReport rep = validate_exterior_region(metric);
    if (rep.valid) return rep.r_horizon;
    if (rep.minimal_radii.empty()) throw Error(ErrorKind::NoHorizon, rep.note);
    throw Error(ErrorKind::NotOutermost, rep.note);
}

}  // namespace cmclab
