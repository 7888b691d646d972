#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "vec.hpp"

namespace maxface {

// Sampling region in the parameter domain. Annuli are sampled log-polar:
// u ∈ [0,1] maps to radius rmin·(rmax/rmin)^u, v ∈ [0,1] to angle 2πv.
struct Window {
    enum class Kind { Rect, Annulus } kind = Kind::Rect;
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    cplx center{0.0};
    double rmin = 0.5, rmax = 2.0;

    static Window rect(double x0, double x1, double y0, double y1) {
        Window w;
        w.kind = Kind::Rect;
        w.xmin = x0;
        w.xmax = x1;
        w.ymin = y0;
        w.ymax = y1;
        return w;
    }
    static Window annulus(cplx c, double r0, double r1) {
        if (!(r0 > 0 && r1 > r0)) throw std::invalid_argument("annulus needs 0 < rmin < rmax");
        Window w;
        w.kind = Kind::Annulus;
        w.center = c;
        w.rmin = r0;
        w.rmax = r1;
        return w;
    }

    bool periodic_v() const { return kind == Kind::Annulus; }

    cplx at(double u, double v) const {
        if (kind == Kind::Rect) return {xmin + u * (xmax - xmin), ymin + v * (ymax - ymin)};
        double r = rmin * std::pow(rmax / rmin, u);
        return center + std::polar(r, 2 * pi * v);
    }

    // Jacobian factors d z / d u and d z / d v.
    std::pair<cplx, cplx> tangents(double u, double v) const {
        if (kind == Kind::Rect) return {cplx(xmax - xmin, 0.0), cplx(0.0, ymax - ymin)};
        cplx rel = at(u, v) - center;
        return {std::log(rmax / rmin) * rel, 2 * pi * I * rel};
    }

    bool contains(cplx z) const {
        if (kind == Kind::Rect) return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
        double r = std::abs(z - center);
        return r >= rmin && r <= rmax;
    }

    std::string describe() const {
        char buf[160];
        if (kind == Kind::Rect)
            std::snprintf(buf, sizeof buf, "rect [%g, %g] x [%g, %g]", xmin, xmax, ymin, ymax);
        else
            std::snprintf(buf, sizeof buf, "annulus center (%g, %g), %g <= r <= %g", center.real(), center.imag(),
                          rmin, rmax);
        return buf;
    }
};

}  // namespace maxface
