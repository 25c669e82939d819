#include "cmclab/sphere.hpp"

#include <cmath>
#include <numbers>

namespace cmclab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double area(const Metric& metric, double r) {
    const double p = metric.phi(r);
    return 4.0 * kPi * p * p * p * p * r * r;
}

double areal_radius(const Metric& metric, double r) {
    const double p = metric.phi(r);
    return p * p * r;
}

double mean_curvature(const Metric& metric, double r) {
    const PhiJet j = metric.conformal_factor(r);
    return 2.0 / (r * j.phi * j.phi) * (1.0 + 2.0 * r * j.dphi / j.phi);
}

double mean_curvature_deriv(const Metric& metric, double r) {
    const PhiJet j = metric.conformal_factor(r);
    const double p = j.phi;
    return -2.0 / (r * r * p * p) - 4.0 * j.dphi / (r * p * p * p) +
           4.0 * j.d2phi / (p * p * p) - 12.0 * j.dphi * j.dphi / (p * p * p * p);
}

double hawking_mass(const Metric& metric, double r) {
    const double a = area(metric, r);
    const double h = mean_curvature(metric, r);
    // Flux term in closed form: H is constant on the sphere.
    return std::sqrt(a / (16.0 * kPi)) * (1.0 - h * h * a / (16.0 * kPi));
}

double intrinsic_diameter(const Metric& metric, double r) {
    return kPi * areal_radius(metric, r);
}

SphereRecord sphere_record(const Metric& metric, double r) {
    SphereRecord rec;
    rec.r = r;
    rec.area = area(metric, r);
    rec.area_radius = areal_radius(metric, r);
    rec.mean_curvature = mean_curvature(metric, r);
    rec.hawking_mass = hawking_mass(metric, r);
    rec.intrinsic_diameter = intrinsic_diameter(metric, r);
    return rec;
}

}  // namespace cmclab
