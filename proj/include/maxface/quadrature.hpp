#pragma once

// Adaptive Gauss–Kronrod (7/15) quadrature for scalar or vector-valued
// integrands over a real parameter interval.

#include <array>
#include <cmath>
#include <complex>
#include <functional>

#include "errors.hpp"
#include "vec.hpp"

namespace maxface {

namespace detail {

inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(cplx v) { return std::abs(v); }
inline double magnitude(const CVec3& v) { return max_abs(v); }
inline double magnitude(const Vec3& v) { return max_abs(v); }

}  // namespace detail

template <class V>
struct QuadResult {
    V value{};
    double error = 0.0;
    double abs_integral = 0.0;  // integral of |f|, the roundoff scale
    int evaluations = 0;
};

// One G7/K15 panel on [a, b]: Kronrod value and |K15 - G7| as error estimate.
template <class V, class F>
QuadResult<V> gauss_kronrod_panel(F&& f, double a, double b) {
    using namespace detail;
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    V center = f(c);
    V kron = kronrod_w[7] * center;
    V gauss = gauss_w[3] * center;
    double absval = kronrod_w[7] * magnitude(center);
    for (int j = 0; j < 7; ++j) {
        double dx = h * kronrod_x[j];
        V lo = f(c - dx), hi = f(c + dx);
        V sum = lo + hi;
        kron = kron + kronrod_w[j] * sum;
        absval += kronrod_w[j] * (magnitude(lo) + magnitude(hi));
        if (j % 2 == 1) gauss = gauss + gauss_w[j / 2] * sum;
    }
    QuadResult<V> r;
    r.value = h * kron;
    r.error = magnitude(h * (kron - gauss));
    r.abs_integral = std::abs(h) * absval;
    r.evaluations = 15;
    return r;
}

// Recursive bisection until each panel's error is below its share of tol.
template <class V, class F>
QuadResult<V> integrate_adaptive(F&& f, double a, double b, double tol, int max_depth) {
    double total = std::abs(b - a);
    QuadResult<V> out;
    std::function<void(double, double, const QuadResult<V>&, int)> rec =
        [&](double lo, double hi, const QuadResult<V>& panel, int depth) {
            double share = tol * std::abs(hi - lo) / total;
            if (panel.error <= share || panel.error <= 1e-14 * panel.abs_integral) {
                out.value = out.value + panel.value;
                out.error += panel.error;
                out.abs_integral += panel.abs_integral;
                return;
            }
            if (depth >= max_depth)
                throw ConvergenceError("quadrature did not converge within the subdivision limit");
            double mid = 0.5 * (lo + hi);
            auto left = gauss_kronrod_panel<V>(f, lo, mid);
            auto right = gauss_kronrod_panel<V>(f, mid, hi);
            out.evaluations += 30;
            rec(lo, mid, left, depth + 1);
            rec(mid, hi, right, depth + 1);
        };
    auto first = gauss_kronrod_panel<V>(f, a, b);
    out.evaluations = 15;
    rec(a, b, first, 0);
    return out;
}

}  // namespace maxface
