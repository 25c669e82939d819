#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cmclab {

// Cubic interpolating spline with not-a-knot end conditions.
// Not-a-knot reproduces cubic polynomials exactly and does not force the
// second derivative to vanish at the ends, which matters when the curvature
// of the data is nonzero at the boundary. Requires n >= 4 strictly
// increasing knots. Evaluation outside [x.front(), x.back()] throws.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double deriv(double x) const;
    double deriv2(double x) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::size_t segment(double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at the knots
};

using Fn = std::function<double(double)>;

// Adaptive Simpson quadrature to an absolute tolerance.
double integrate(const Fn& f, double a, double b, double abs_tol = 1e-9);

// Bisection on a bracketing interval; f(lo) and f(hi) must differ in sign
// (zero counts as either). Converges to rel_tol relative interval width.
double bisect(const Fn& f, double lo, double hi, double rel_tol = 1e-12);

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section search. Handles interior extrema and endpoint extrema alike;
// the returned point is the best sample seen, so value is exact for it.
Extremum golden_max(const Fn& f, double lo, double hi, double rel_tol = 1e-10);
Extremum golden_min(const Fn& f, double lo, double hi, double rel_tol = 1e-10);

// n points geometrically spaced from lo to hi inclusive; lo, hi > 0.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace cmclab
