#pragma once

// Shared helpers for the unit tests.

#include <random>
#include <vector>

#include "maxface/catalog.hpp"
#include "maxface/maxface.hpp"

namespace maxface::testing {

// Uniform points in a window, away from punctures by at least `gap`.
inline std::vector<cplx> sample_points(const CatalogEntry& e, int count, unsigned seed, double gap = 0.05) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> out;
    while (static_cast<int>(out.size()) < count) {
        cplx z = e.window.at(u(rng), u(rng));
        bool ok = true;
        for (cplx p : e.data.domain.punctures) ok = ok && std::abs(z - p) > gap;
        if (ok) out.push_back(z);
    }
    return out;
}

inline double max_diff(const CVec3& a, const CVec3& b) {
    double m = 0;
    for (int k = 0; k < 3; ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

inline double max_diff(const Vec3& a, const Vec3& b) {
    double m = 0;
    for (int k = 0; k < 3; ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace maxface::testing
