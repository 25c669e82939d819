#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cmclab/metric.hpp"

namespace cmclab {

// Spectrum of the stability (Jacobi) operator on a centered sphere. The
// operator is -Lap - Q with Q constant on the sphere, so the eigenvalues are
// l(l+1)/R^2 - Q on spherical harmonics; only lambda_0 = -Q carries
// decisions.

struct StabilitySpectrum {
    double r = 0.0;
    double potential = 0.0;               // Q = 1/2 R_M - 1/R^2 + 3/4 H^2
    std::vector<double> eigenvalues;      // l = 0 .. l_max, ascending
    bool strongly_stable = false;         // lambda_0 >= -kStabilityTol
};

inline constexpr double kStabilityTol = 1e-9;

// |lambda_0| below this counts as a degenerate (marginally stable) horizon.
// A degenerate horizon sits exactly at a root bifurcation of H, so any
// numerically constructed instance carries a residual of this order.
inline constexpr double kDegenerateTol = 1e-6;

StabilitySpectrum stability_spectrum(const Metric& metric, double r, std::size_t l_max = 8);

bool is_strongly_stable(const Metric& metric, double r);

struct HorizonStability {
    double r_horizon = 0.0;
    double lambda_0 = 0.0;
    bool degenerate = false;   // |lambda_0| <= kDegenerateTol
    bool consistent = true;    // lambda_0 >= -kDegenerateTol; false
                               // contradicts the outermost hypothesis
    std::string note;
};

// Classifies the outermost minimal sphere as strictly stable or degenerate.
// Uses only the horizon location and the spectrum; it does not re-validate
// the whole exterior, so it stays usable on deliberately borderline inputs.
HorizonStability horizon_stability_check(const Metric& metric);

}  // namespace cmclab
