#pragma once

// Pointwise geometry of an affine maxface: Φ, conormal N, Gauss map ν,
// Lelieuvre point ψ, affine metric, affine normal and curvature.

#include <cmath>
#include <optional>
#include <vector>

#include "contour.hpp"
#include "weierstrass.hpp"

namespace maxface {

inline CVec3 eval3(const Expr3& e, cplx z, const BranchContext& ctx) {
    return {eval(e[0], z, ctx), eval(e[1], z, ctx), eval(e[2], z, ctx)};
}

// Every expression whose log/root branches must be carried along paths.
inline std::vector<Expr> tracked_exprs(const WeierstrassData& d) {
    std::vector<Expr> out;
    if (d.phi) out.insert(out.end(), d.phi->begin(), d.phi->end());
    if (d.cross_primitive) out.insert(out.end(), d.cross_primitive->begin(), d.cross_primitive->end());
    out.insert(out.end(), d.dphi.begin(), d.dphi.end());
    return out;
}

// Principal branches at the basepoint.
inline BranchContext base_context(const WeierstrassData& d) {
    BranchContext ctx(d.domain.basepoint, d.domain.punctures);
    auto tracked = tracked_exprs(d);
    ctx.track(tracked);
    return ctx;
}

// Basepoint context carried to z along a path that avoids the punctures.
inline BranchContext context_at(const WeierstrassData& d, cplx z, const Tolerances& tol = {}) {
    BranchContext ctx = base_context(d);
    auto tracked = tracked_exprs(d);
    Path path = plan_path(d.domain.basepoint, z, d.domain.punctures, tol.path_clearance);
    for (const auto& piece : path.pieces()) ctx.move_to(piece.end(), tracked);
    return ctx;
}

// Carry ctx along an explicit path (its start must be ctx.current()).
inline void transport(const WeierstrassData& d, BranchContext& ctx, const Path& path) {
    auto tracked = tracked_exprs(d);
    for (const auto& piece : path.pieces()) {
        if (!piece.arc) {
            ctx.move_to(piece.end(), tracked);
            continue;
        }
        auto [l, r] = piece.split();
        ctx.move_to(l.end(), tracked);
        ctx.move_to(r.end(), tracked);
    }
}

// Path from the basepoint to z that winds around each puncture as often as ctx records.
inline Path winding_path(const WeierstrassData& d, cplx z, const BranchContext& ctx, const Tolerances& tol) {
    const auto& punct = d.domain.punctures;
    std::vector<int> w(punct.size(), 0);
    if (ctx.punctures() == punct) w = ctx.windings();
    std::optional<Path> path;
    cplx cur = d.domain.basepoint;
    auto append = [&](const Path& p) {
        path = path ? path->then(p) : p;
        cur = p.end();
    };
    for (std::size_t k = 0; k < punct.size(); ++k) {
        if (w[k] == 0) continue;
        double r = default_residue_radius(punct[k], punct);
        cplx entry = punct[k] + r;
        if (cur != entry) append(plan_path(cur, entry, punct, tol.path_clearance));
        append(Path::circle(punct[k], r, w[k]));
    }
    if (cur != z || !path) append(plan_path(cur, z, punct, tol.path_clearance));
    return *path;
}

// Φ and ∫Φ×dΦ accumulated along a path.
struct Primitives {
    CVec3 phi{};
    CVec3 cross{};
};

// Integrate dΦ (and optionally Φ×dΦ) along path, starting from `start`.
// Closed-form Φ is used at quadrature nodes when available; otherwise Φ at a
// node comes from an inner integral from the piece start.
inline Primitives integrate_primitives(const WeierstrassData& d, const Path& path, Primitives start,
                                       BranchContext& ctx, const Tolerances& tol, bool want_cross) {
    auto tracked = tracked_exprs(d);
    Primitives acc = start;
    if (ctx.current() != path.start()) ctx.move_to(path.start(), tracked);
    double share = tol.quad / static_cast<double>(path.pieces().size());
    for (const auto& whole : path.pieces()) {
        std::vector<PathPiece> work{whole};
        while (!work.empty()) {
            PathPiece piece = work.back();
            work.pop_back();
            try {
                const BranchContext& frozen = ctx;
                auto dphi_at = [&](double t) -> CVec3 { return piece.velocity(t) * eval3(d.dphi, piece.at(t), frozen); };
                auto phi_at = [&](double t) -> CVec3 {
                    if (d.phi) return eval3(*d.phi, piece.at(t), frozen);
                    if (t == 0.0) return acc.phi;
                    return acc.phi + integrate_adaptive<CVec3>(dphi_at, 0.0, t, 0.1 * share, tol.max_depth).value;
                };
                CVec3 dphi_total = integrate_adaptive<CVec3>(dphi_at, 0.0, 1.0, share, tol.max_depth).value;
                CVec3 cross_total{};
                if (want_cross) {
                    auto cross_at = [&](double t) -> CVec3 {
                        return piece.velocity(t) * cross(phi_at(t), eval3(d.dphi, piece.at(t), frozen));
                    };
                    cross_total = integrate_adaptive<CVec3>(cross_at, 0.0, 1.0, share, tol.max_depth).value;
                }
                ctx.move_to(piece.end(), tracked);
                acc.phi = d.phi ? eval3(*d.phi, piece.end(), ctx) : acc.phi + dphi_total;
                acc.cross = acc.cross + cross_total;
            } catch (const BranchError&) {
                auto [l, r] = piece.split();
                work.push_back(r);
                work.push_back(l);
            }
        }
    }
    return acc;
}

inline CVec3 phi(const WeierstrassData& d, cplx z, const BranchContext& ctx, const Tolerances& tol = {}) {
    if (d.phi) return eval3(*d.phi, z, ctx);
    BranchContext walk = base_context(d);
    Path path = winding_path(d, z, ctx, tol);
    return integrate_primitives(d, path, {d.constants, {}}, walk, tol, false).phi;
}

inline Vec3 conormal(const WeierstrassData& d, cplx z, const BranchContext& ctx, const Tolerances& tol = {}) {
    return 2.0 * real(phi(d, z, ctx, tol));
}

// Inverse stereographic projection Π, with Π(∞) = (0, 0, 1).
inline Vec3 stereographic(cplx g) {
    double n = std::norm(g);
    return {2 * g.real() / (1 + n), 2 * g.imag() / (1 + n), (n - 1) / (1 + n)};
}
// Π(1/h), finite at h = 0.
inline Vec3 stereographic_inverted(cplx h) {
    double n = std::norm(h);
    return {2 * h.real() / (1 + n), -2 * h.imag() / (1 + n), (1 - n) / (1 + n)};
}
// ∂z of Π(g(z)) given g and g_z.
inline CVec3 stereographic_dz(cplx g, cplx gz) {
    double n = std::norm(g);
    cplx gb = std::conj(g);
    cplx s = gz / ((1 + n) * (1 + n));
    return {s * (1.0 - gb * gb), s * (-I) * (1.0 + gb * gb), s * 2.0 * gb};
}
// ∂z of Π(1/h(z)) given h and h_z.
inline CVec3 stereographic_inverted_dz(cplx h, cplx hz) {
    CVec3 v = stereographic_dz(h, hz);
    return {v[0], -v[1], -v[2]};
}

// Gauss map value, switching to the chart 1/g when |g| > 1 or g has a pole.
struct GaussValue {
    Vec3 nu{};
    CVec3 nu_z{};
    bool inverted = false;
    cplx g{}, g_z{};     // valid when !inverted
    cplx h{}, h_z{};     // 1/g and its derivative, valid when inverted
};

inline GaussValue gauss_value(const WeierstrassData& d, cplx z, const BranchContext& ctx) {
    GaussValue out;
    std::optional<cplx> g;
    try {
        g = eval(d.g, z, ctx);
    } catch (const PoleError&) {
    }
    if (g && std::abs(*g) <= 1.0) {
        out.g = *g;
        out.g_z = eval(d.dg, z, ctx);
        out.nu = stereographic(out.g);
        out.nu_z = stereographic_dz(out.g, out.g_z);
        return out;
    }
    out.inverted = true;
    out.h = eval(d.ginv, z, ctx);
    out.h_z = eval(d.dginv, z, ctx);
    out.nu = stereographic_inverted(out.h);
    out.nu_z = stereographic_inverted_dz(out.h, out.h_z);
    if (g) {
        out.g = *g;
        try {
            out.g_z = eval(d.dg, z, ctx);
        } catch (const PoleError&) {
            out.g_z = std::numeric_limits<double>::infinity();
        }
    } else {
        out.g = out.g_z = std::numeric_limits<double>::infinity();
    }
    return out;
}

inline Vec3 gauss_sphere(const WeierstrassData& d, cplx z, const BranchContext& ctx = {}) {
    return gauss_value(d, z, ctx).nu;
}

// ψ from Φ(z) and the integral of Φ×dΦ from the basepoint to z.
inline Vec3 psi_from(const CVec3& ph, const CVec3& cross_integral) {
    CVec3 pp = cross(ph, conj(ph));
    Vec3 out;
    for (int k = 0; k < 3; ++k) out[k] = (-I * pp[k]).real() - 2.0 * cross_integral[k].imag();
    return out;
}

// Closed-form ∫Φ×dΦ at the basepoint, subtracted so ψ uses the basepoint as lower limit.
inline CVec3 cross_primitive_at_base(const WeierstrassData& d) {
    BranchContext base = base_context(d);
    return eval3(*d.cross_primitive, d.domain.basepoint, base);
}

// Lelieuvre formula ψ = −iΦ×Φ̄ − 2 Im ∫_{z0}^{z} Φ×dΦ.
inline Vec3 psi(const WeierstrassData& d, cplx z, const BranchContext& ctx, const Tolerances& tol = {}) {
    if (d.phi && d.cross_primitive)
        return psi_from(eval3(*d.phi, z, ctx), eval3(*d.cross_primitive, z, ctx) - cross_primitive_at_base(d));
    BranchContext walk = base_context(d);
    Path path = winding_path(d, z, ctx, tol);
    Primitives start{d.phi ? eval3(*d.phi, d.domain.basepoint, walk) : d.constants, {}};
    auto prim = integrate_primitives(d, path, start, walk, tol, true);
    return psi_from(d.phi ? eval3(*d.phi, z, ctx) : prim.phi, prim.cross);
}

// ψ_u and ψ_v from dψ = 2 Re(i N × Φ_z dz), z = u + iv.
inline std::pair<Vec3, Vec3> psi_derivatives(const Vec3& N, const CVec3& phi_z) {
    CVec3 w = cross(complexify(N), phi_z);
    return {-2.0 * imag(w), -2.0 * real(w)};
}

struct Jet {
    cplx z{};
    CVec3 phi{}, phi_z{}, phi_zz{};
    Vec3 N{};
    Vec3 nu{};
    CVec3 nu_z{};
    cplx g{}, g_z{}, omega{}, omega_z{};
    bool g_infinite = false;   // g (or g_z) has a pole at z; ν came from the chart 1/g
    std::optional<Vec3> psi;
    double hCoeff = 0.0;
    double sigmaCoeff = 0.0;
    double Lambda = 0.0;
    cplx Lambda_z{};
    bool singular = false;     // |Λ| < ε_sing · sigmaCoeff: ξ and K_h undefined
    std::optional<Vec3> xi;
    std::optional<double> K_h;
};

// Jet from a known Φ(z) (and optionally ψ(z)), for callers that carry Φ along paths.
inline Jet jet_with(const WeierstrassData& d, cplx z, const BranchContext& ctx, const CVec3& phi_value,
                    std::optional<Vec3> psi_value, const Tolerances& tol = {}) {
    Jet j;
    j.z = z;
    j.phi = phi_value;
    j.psi = psi_value;
    j.phi_z = eval3(d.dphi, z, ctx);
    j.phi_zz = eval3(d.ddphi, z, ctx);
    j.N = 2.0 * real(j.phi);
    CVec3 pzc = conj(j.phi_z);
    CVec3 X = cross(j.phi_z, pzc);           // purely imaginary
    Vec3 area_normal = 2.0 * imag(X);        // −2i X, the normal of N scaled by its area density
    if (d.maxface) {
        GaussValue gv = gauss_value(d, z, ctx);
        j.nu = gv.nu;
        j.nu_z = gv.nu_z;
        j.g = gv.g;
        j.g_z = gv.g_z;
        j.g_infinite = !std::isfinite(std::abs(gv.g)) || !std::isfinite(std::abs(gv.g_z));
        try {
            j.omega = eval(d.omega, z, ctx);
            j.omega_z = eval(d.domega, z, ctx);
        } catch (const PoleError&) {
            j.omega = j.omega_z = std::numeric_limits<double>::infinity();
        }
        if (!gv.inverted && std::isfinite(std::abs(j.omega)))
            j.sigmaCoeff = std::pow(1 + std::norm(j.g), 2) * std::norm(j.omega);
        else
            j.sigmaCoeff = 2 * (std::norm(j.phi_z[0]) + std::norm(j.phi_z[1]) + std::norm(j.phi_z[2]));
    } else {
        // General affine maximal map: ν is the unit normal of N.
        double area = norm(area_normal);
        j.nu = (1.0 / area) * area_normal;
        CVec3 W_z = (-2.0 * I) * cross(j.phi_zz, pzc);
        cplx along = dot(complexify(j.nu), W_z);
        j.nu_z = (1.0 / area) * (W_z - along * complexify(j.nu));
        j.sigmaCoeff = area;
        try {
            j.g = eval(d.g, z, ctx);
            j.g_z = eval(d.dg, z, ctx);
            j.omega = eval(d.omega, z, ctx);
            j.omega_z = eval(d.domega, z, ctx);
        } catch (const PoleError&) {
            j.g_infinite = true;
        }
    }
    j.Lambda = dot(j.N, j.nu);
    j.Lambda_z = dot(j.phi_z, complexify(j.nu)) + dot(complexify(j.N), j.nu_z);
    j.hCoeff = dot(j.N, area_normal);
    j.singular = std::abs(j.Lambda) < tol.sing * j.sigmaCoeff;
    if (!j.singular) {
        double T = dot(j.N, imag(X));        // det(N, Φ_z, Φ̄_z) = iT
        j.xi = (1.0 / T) * imag(X);
        cplx num = det3(complexify(j.N), j.phi_zz, j.phi_z);
        j.K_h = std::norm(num) / (T * T * T);
    }
    return j;
}

inline Jet jet(const WeierstrassData& d, cplx z, const BranchContext& ctx, const Tolerances& tol = {},
               bool with_psi = true) {
    std::optional<Vec3> ps;
    if (with_psi) ps = psi(d, z, ctx, tol);
    return jet_with(d, z, ctx, phi(d, z, ctx, tol), ps, tol);
}

// Unit normal of N used for Λ: Π∘g for maxfaces, the normal of N otherwise.
inline Vec3 identifier_normal(const WeierstrassData& d, cplx z, const BranchContext& ctx) {
    if (d.maxface) return gauss_value(d, z, ctx).nu;
    CVec3 pz = eval3(d.dphi, z, ctx);
    return normalized(2.0 * imag(cross(pz, conj(pz))));
}

// Λ = ⟨N, ν⟩ from a known Φ(z).
inline double identifier_with(const WeierstrassData& d, cplx z, const BranchContext& ctx, const CVec3& phi_value) {
    return dot(2.0 * real(phi_value), identifier_normal(d, z, ctx));
}

// Left side of the singular-point equation N₁(g+ḡ) − iN₂(g−ḡ) + N₃(|g|²−1) = 0; equals (1+|g|²)Λ.
inline double singular_equation(const Vec3& N, cplx g) {
    return 2 * N[0] * g.real() + 2 * N[1] * g.imag() + N[2] * (std::norm(g) - 1);
}

}  // namespace maxface
