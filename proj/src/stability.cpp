#include "cmclab/stability.hpp"

#include <sstream>

#include "cmclab/error.hpp"
#include "cmclab/solver.hpp"
#include "cmclab/sphere.hpp"

namespace cmclab {

StabilitySpectrum stability_spectrum(const Metric& metric, double r, std::size_t l_max) {
    StabilitySpectrum s;
    s.r = r;
    const double big_r = areal_radius(metric, r);
    const double h = mean_curvature(metric, r);
    const double rm = metric.scalar_curvature(r);
    // Q = 1/2 R_M - 1/2 R_Sigma + 1/2 |Aring|^2 + 3/4 H^2 with the umbilic
    // |Aring|^2 = 0 and the round-sphere R_Sigma = 2/R^2.
    s.potential = 0.5 * rm - 1.0 / (big_r * big_r) + 0.75 * h * h;
    s.eigenvalues.reserve(l_max + 1);
    for (std::size_t l = 0; l <= l_max; ++l) {
        const double ll = static_cast<double>(l) * static_cast<double>(l + 1);
        s.eigenvalues.push_back(ll / (big_r * big_r) - s.potential);
    }
    s.strongly_stable = s.eigenvalues.front() >= -kStabilityTol;
    return s;
}

bool is_strongly_stable(const Metric& metric, double r) {
    return stability_spectrum(metric, r, 0).strongly_stable;
}

HorizonStability horizon_stability_check(const Metric& metric) {
    HorizonStability out;
    out.r_horizon = find_horizon(metric);
    out.lambda_0 = stability_spectrum(metric, out.r_horizon, 0).eigenvalues.front();
    out.degenerate = std::abs(out.lambda_0) <= kDegenerateTol;
    out.consistent = out.lambda_0 >= -kDegenerateTol;
    std::ostringstream os;
    if (!out.consistent) {
        os << "lambda_0 = " << out.lambda_0 << " < 0 contradicts the outermost property";
    } else if (out.degenerate) {
        os << "degenerate horizon: lambda_0 = " << out.lambda_0;
    } else {
        os << "strictly stable horizon: lambda_0 = " << out.lambda_0;
    }
    out.note = os.str();
    return out;
}

}  // namespace cmclab
