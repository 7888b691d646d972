// Profile curve of the catenoid-type example: sample the affine map on
// circles |z| = e^s, measure distance to the rotation axis and height, and
// compare with the closed-form profile (4((s + Re c3) sinh s - cosh s), sinh 2s + 2s).
//
// usage: sample_catenoid_profile [Re c3]

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "maxface/catalog.hpp"
#include "maxface/maxface.hpp"

int main(int argc, char** argv) {
    using namespace maxface;
    double a3 = argc > 1 ? std::atof(argv[1]) : 0.0;
    CatalogEntry e = build("catenoid", {{"c3", a3}});

    const int ring = 24;
    cplx one = 1.0;
    Vec3 base = psi(e.data, one, context_at(e.data, one));
    std::printf("%8s %14s %14s %14s %14s\n", "s", "radius", "profile", "height", "profile");
    for (int k = -8; k <= 8; ++k) {
        double s = 0.25 * k;
        Vec3 centre{};
        std::vector<Vec3> pts;
        for (int t = 0; t < ring; ++t) {
            cplx z = std::exp(cplx(s, 2 * pi * t / ring));
            pts.push_back(psi(e.data, z, context_at(e.data, z)));
            centre = centre + (1.0 / ring) * pts.back();
        }
        double radius = std::hypot(pts[0][0] - centre[0], pts[0][1] - centre[1]);
        double height = centre[2] - base[2];
        double r_closed = std::abs(4 * ((s + a3) * std::sinh(s) - std::cosh(s)));
        double h_closed = std::sinh(2 * s) + 2 * s;
        std::printf("%8.3f %14.9f %14.9f %14.9f %14.9f\n", s, radius, r_closed, height, h_closed);
    }
    return 0;
}
