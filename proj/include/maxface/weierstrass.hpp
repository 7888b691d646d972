#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "expr.hpp"
#include "vec.hpp"

namespace maxface {

using Expr3 = std::array<Expr, 3>;

struct End {
    bool at_infinity = false;
    cplx point{};

    std::string label() const;
};

// Genus-0 domain: the plane minus finitely many punctures, optionally with an
// end at infinity.
struct DomainSpec {
    std::vector<cplx> punctures;
    bool end_at_infinity = true;
    int genus = 0;
    cplx basepoint{0.0};

    std::vector<End> ends() const {
        std::vector<End> out;
        for (cplx p : punctures) out.push_back({false, p});
        if (end_at_infinity) out.push_back({true, 0.0});
        return out;
    }
    int end_count() const { return static_cast<int>(punctures.size()) + (end_at_infinity ? 1 : 0); }
};

inline std::string End::label() const {
    if (at_infinity) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", point.real(), point.imag());
    return buf;
}

inline Expr3 cross(const Expr3& a, const Expr3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Symbolic 1/e that flips quotients instead of nesting them, so the result
// stays finite at poles of e.
inline Expr reciprocal(const Expr& e) {
    switch (e.op()) {
        case Op::Div: return e.rhs() / e.lhs();
        case Op::Pow: return pow(e.lhs(), -e.get()->n);
        case Op::Mul: return reciprocal(e.lhs()) * reciprocal(e.rhs());
        case Op::Neg: return -reciprocal(e.lhs());
        case Op::Exp: return exp(-e.lhs());
        default: return Expr::integer(1) / e;
    }
}

struct WeierstrassData {
    Expr g;
    Expr omega;          // ω = omega · dz
    CVec3 constants{};   // c, added outside the 1/2 of the integral
    DomainSpec domain;
    std::optional<Expr3> phi;              // closed form, constants included
    std::optional<Expr3> cross_primitive;  // closed-form antiderivative of Φ × Φ_z
    bool maxface = true;                   // false when Φ is not a null curve

    // Derived symbolic quantities, filled by finalize().
    Expr3 dphi, ddphi;
    Expr dg, ddg, domega, ginv, dginv;
};

inline void finalize(WeierstrassData& d) {
    if (d.phi) {
        for (int k = 0; k < 3; ++k) d.dphi[k] = differentiate((*d.phi)[k]);
    } else {
        Expr half = Expr::rational(1, 2);
        Expr one = Expr::integer(1);
        Expr g2 = pow(d.g, 2);
        d.dphi = {half * (one - g2) * d.omega, half * Expr::constant(I) * (one + g2) * d.omega,
                  d.g * d.omega};
    }
    for (int k = 0; k < 3; ++k) d.ddphi[k] = differentiate(d.dphi[k]);
    d.dg = differentiate(d.g);
    d.ddg = differentiate(d.dg);
    d.domega = differentiate(d.omega);
    // g ≡ 0 has no inverted chart; gauss_value never needs it there.
    if (!d.g.is_zero()) {
        d.ginv = reciprocal(d.g);
        d.dginv = differentiate(d.ginv);
    }
}

// Data from (g, ω̂) and constants; Φ is then obtained by numeric integration.
inline WeierstrassData make_weierstrass(Expr g, Expr omega, CVec3 constants, DomainSpec domain,
                                        std::optional<Expr3> phi = std::nullopt,
                                        std::optional<Expr3> cross_primitive = std::nullopt) {
    WeierstrassData d;
    d.g = std::move(g);
    d.omega = std::move(omega);
    d.constants = constants;
    d.domain = std::move(domain);
    d.phi = std::move(phi);
    d.cross_primitive = std::move(cross_primitive);
    finalize(d);
    // Numeric integration starts at the basepoint, where dΦ must evaluate.
    if (!d.phi) {
        try {
            for (const auto& e : d.dphi) eval(e, d.domain.basepoint);
        } catch (const PoleError&) {
            throw InadmissibleError("basepoint is a pole of g or omega; choose a regular basepoint");
        }
    }
    return d;
}

// Data given by Φ directly: ω̂ = Φ₁' − iΦ₂', g = Φ₃'/ω̂. The maxface flag records
// whether Φ' is a null vector at a few probe points.
inline WeierstrassData make_from_phi(Expr3 phi, DomainSpec domain, CVec3 constants = {},
                                     std::optional<Expr3> cross_primitive = std::nullopt) {
    WeierstrassData d;
    d.domain = std::move(domain);
    d.constants = constants;
    Expr3 dp{differentiate(phi[0]), differentiate(phi[1]), differentiate(phi[2])};
    d.omega = dp[0] - Expr::constant(I) * dp[1];
    d.g = dp[2] / d.omega;
    d.phi = std::move(phi);
    d.cross_primitive = std::move(cross_primitive);
    finalize(d);
    const cplx probes[] = {{0.83, 0.41}, {-0.37, 1.21}, {1.9, -0.7}, {-1.3, -0.55}};
    d.maxface = true;
    for (cplx z : probes) {
        try {
            CVec3 v{eval(d.dphi[0], z), eval(d.dphi[1], z), eval(d.dphi[2], z)};
            double scale = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
            if (std::abs(dot(v, v)) > 1e-10 * scale) d.maxface = false;
        } catch (const PoleError&) {
        }
    }
    return d;
}

}  // namespace maxface
