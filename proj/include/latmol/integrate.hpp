#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace latmol {

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_step(F&& f, double a, double fa, double b, double fb,
                     double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double err = left + right - whole;
    if (depth <= 0)
        throw std::runtime_error("adaptive quadrature: recursion limit reached");
    if (std::abs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-10) {
    if (!(b > a)) throw std::invalid_argument("integration bounds: need b > a");
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = detail::simpson(a, fa, b, fb, fm);
    return detail::adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 60);
}

/// Adaptive quadrature over [a, b] for integrands whose features live at a
/// scale much smaller than the domain: the domain is pre-split into
/// geometrically growing pieces starting at `scale`, so narrow structure
/// near the lower end cannot be missed by the top-level error estimate.
template <typename F>
double integrate_adaptive_graded(F&& f, double a, double b, double scale,
                                 double tol = 1e-10) {
    if (!(b > a)) throw std::invalid_argument("integration bounds: need b > a");
    if (!(scale > 0)) throw std::invalid_argument("integration scale must be positive");
    std::size_t pieces = 1;
    for (double edge = scale; a + edge < b; edge *= 2.0) ++pieces;
    const double piece_tol = tol / double(pieces);
    double total = 0;
    double lo = a;
    for (double edge = scale; lo < b; edge *= 2.0) {
        const double hi = std::min(a + edge, b);
        total += integrate_adaptive(f, lo, hi, piece_tol);
        lo = hi;
    }
    return total;
}

} // namespace latmol
