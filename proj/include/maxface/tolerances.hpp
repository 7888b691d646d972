#pragma once

namespace maxface {

// Numerical thresholds shared by all modules. Every field can be overridden
// from a job config or the CLI.
struct Tolerances {
    double quad = 1e-10;         // absolute target of adaptive quadrature
    int max_depth = 20;          // bisection levels per path piece
    double path_clearance = 1e-3;
    double period = 1e-8;
    double sing = 1e-9;          // |Λ| below sing·sigmaCoeff: ξ, K_h undefined
    double trace = 1e-10;        // Newton target for singular curve vertices
    double regime = 1e-8;        // relative band for |g| = 1
    double classify = 1e-6;      // relative threshold for decisive quantities
    int accumulation_circles = 12;
    int accumulation_samples = 720;
    int laurent_order = 12;
    double ray_length = 1e6;
};

}  // namespace maxface
