#pragma once

#include "cmclab/metric.hpp"

namespace cmclab {

// Geometry of the centered coordinate sphere S_r. Spheres are umbilic in
// this symmetry class (traceless second fundamental form vanishes), and the
// induced metric is round, so closed forms apply throughout.

struct SphereRecord {
    double r = 0.0;
    double area = 0.0;
    double area_radius = 0.0;        // R = sqrt(area / 4 pi) = phi^2 r
    double mean_curvature = 0.0;     // outward H
    double hawking_mass = 0.0;
    double intrinsic_diameter = 0.0;  // pi R for the round induced metric
};

double area(const Metric& metric, double r);
double areal_radius(const Metric& metric, double r);

// H = (2 / (r phi^2)) (1 + 2 r phi'/phi) with respect to the outward normal.
double mean_curvature(const Metric& metric, double r);

// Closed-form dH/dr; feeds the stability identity and root polishing.
double mean_curvature_deriv(const Metric& metric, double r);

// m_H = sqrt(area/16pi) * (1 - H^2 area / 16 pi); the flux integral
// collapses because H is constant on S_r.
double hawking_mass(const Metric& metric, double r);

double intrinsic_diameter(const Metric& metric, double r);

SphereRecord sphere_record(const Metric& metric, double r);

}  // namespace cmclab
