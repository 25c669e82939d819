#include "cmclab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmclab {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 4 || y_.size() != n)
        throw std::invalid_argument("spline needs >= 4 knots, matching sizes");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("spline knots must be strictly increasing");

    std::vector<double> h(n - 1), s(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        s[i] = (y_[i + 1] - y_[i]) / h[i];
    }

    // Solve for the knot second derivatives m_[1..n-2]; the end values follow
    // from third-derivative continuity at the second and second-to-last knots:
    //   m0 = (1 + h0/h1) m1 - (h0/h1) m2, and mirrored at the far end.
    const std::size_t k = n - 2;
    std::vector<double> lower(k), diag(k), upper(k), rhs(k);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        lower[i - 1] = h[i - 1];
        diag[i - 1] = 2.0 * (h[i - 1] + h[i]);
        upper[i - 1] = h[i];
        rhs[i - 1] = 6.0 * (s[i] - s[i - 1]);
    }
    const double r0 = h[0] / h[1];
    diag[0] += h[0] * (1.0 + r0);
    upper[0] -= h[0] * r0;
    const double r1 = h[n - 2] / h[n - 3];
    diag[k - 1] += h[n - 2] * (1.0 + r1);
    lower[k - 1] -= h[n - 2] * r1;

    for (std::size_t i = 1; i < k; ++i) {
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    m_.assign(n, 0.0);
    m_[n - 2] = rhs[k - 1] / diag[k - 1];
    for (std::size_t i = k - 1; i-- > 0;)
        m_[i + 1] = (rhs[i] - upper[i] * m_[i + 2]) / diag[i];

    m_[0] = (1.0 + r0) * m_[1] - r0 * m_[2];
    m_[n - 1] = (1.0 + r1) * m_[n - 2] - r1 * m_[n - 3];
}

std::size_t CubicSpline::segment(double x) const {
    if (x < x_.front() || x > x_.back())
        throw std::out_of_range("spline evaluated outside knot range");
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i > 0) --i;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    return i;
}

double CubicSpline::operator()(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double a = x_[i + 1] - x, b = x - x_[i];
    return m_[i] * a * a * a / (6.0 * h) + m_[i + 1] * b * b * b / (6.0 * h) +
           (y_[i] / h - m_[i] * h / 6.0) * a + (y_[i + 1] / h - m_[i + 1] * h / 6.0) * b;
}

double CubicSpline::deriv(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double a = x_[i + 1] - x, b = x - x_[i];
    return -m_[i] * a * a / (2.0 * h) + m_[i + 1] * b * b / (2.0 * h) +
           (y_[i + 1] - y_[i]) / h - (m_[i + 1] - m_[i]) * h / 6.0;
}

double CubicSpline::deriv2(double x) const {
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    return (m_[i] * (x_[i + 1] - x) + m_[i + 1] * (x - x_[i])) / h;
}

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const Fn& f, double a, double m, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const Fn& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(a, b, fa, fm, fb);
    return adapt(f, a, m, b, fa, fm, fb, whole, abs_tol, 48);
}

double bisect(const Fn& f, double lo, double hi, double rel_tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bisect: interval does not bracket a root");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= rel_tol * std::max({std::abs(lo), std::abs(hi), 1e-300}))
            return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

Extremum golden(const Fn& f, double lo, double hi, double rel_tol, double sign) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = sign * f(c), fd = sign * f(d);
    Extremum best{c, fc};
    if (fd > best.value) best = {d, fd};
    while (b - a > rel_tol * std::max({std::abs(a), std::abs(b), 1e-300})) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = sign * f(c);
            if (fc > best.value) best = {c, fc};
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = sign * f(d);
            if (fd > best.value) best = {d, fd};
        }
    }
    // Endpoint extrema beat any interior sample only at the true ends.
    const double fa = sign * f(lo), fb = sign * f(hi);
    if (fa > best.value) best = {lo, fa};
    if (fb > best.value) best = {hi, fb};
    best.value *= sign;
    return best;
}

}  // namespace

Extremum golden_max(const Fn& f, double lo, double hi, double rel_tol) {
    return golden(f, lo, hi, rel_tol, 1.0);
}

Extremum golden_min(const Fn& f, double lo, double hi, double rel_tol) {
    return golden(f, lo, hi, rel_tol, -1.0);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw std::invalid_argument("log_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    const double ratio = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo * std::exp(ratio * static_cast<double>(i));
    g.front() = lo;
    g.back() = hi;
    return g;
}

}  // namespace cmclab
