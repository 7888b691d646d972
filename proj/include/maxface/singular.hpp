#pragma once

// Singular set Λ = ⟨N, ν⟩ = 0: tracing, classification (degenerate, cuspidal
// edge, swallowtail) and the front certificate.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "maxface.hpp"
#include "sampling.hpp"
#include "window.hpp"

namespace maxface {

inline double identifier(const WeierstrassData& d, cplx z, const BranchContext& ctx, const Tolerances& tol = {}) {
    return identifier_with(d, z, ctx, phi(d, z, ctx, tol));
}

// Value and ∂/∂z of a function of (N, g, ḡ_z, ω̂), with a triangle-inequality
// bound on the magnitude of each, used to normalize criterion values.
struct Wz {
    cplx v{}, d{};
    double mv = 0.0, md = 0.0;

    static Wz constant(cplx c) { return {c, 0.0, std::abs(c), 0.0}; }
    static Wz holomorphic(cplx v, cplx dz) { return {v, dz, std::abs(v), std::abs(dz)}; }

    friend Wz operator+(const Wz& a, const Wz& b) { return {a.v + b.v, a.d + b.d, a.mv + b.mv, a.md + b.md}; }
    friend Wz operator-(const Wz& a, const Wz& b) { return {a.v - b.v, a.d - b.d, a.mv + b.mv, a.md + b.md}; }
    friend Wz operator*(const Wz& a, const Wz& b) {
        return {a.v * b.v, a.v * b.d + a.d * b.v, a.mv * b.mv, a.mv * b.md + a.md * b.mv};
    }
    friend Wz operator*(cplx s, const Wz& a) { return Wz::constant(s) * a; }

    // The z-derivative as a value in its own right (its derivative is not tracked).
    Wz derivative() const { return {d, 0.0, md, 0.0}; }
};

// |x| relative to its bound; 0 when the bound vanishes.
inline double relative(double x, double bound) { return bound > 0 ? std::abs(x) / bound : 0.0; }

enum class Verdict { degenerate, cuspidal_edge, swallowtail, front_nondegenerate_other, indeterminate };
enum class Regime { off_unit_circle, unit_real_part, unit_imag_part };

// Which factor the |g| = 1, Im g ≠ 0 subcase uses: (N₁ + iN₃ Im g) or (N₂ + iN₃ Im g).
enum class SubcaseReading { n1, n2 };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::degenerate: return "degenerate";
        case Verdict::cuspidal_edge: return "cuspidal_edge";
        case Verdict::swallowtail: return "swallowtail";
        case Verdict::front_nondegenerate_other: return "front_nondegenerate_other";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}
inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::off_unit_circle: return "abs_g_ne_1";
        case Regime::unit_real_part: return "abs_g_eq_1_re_g_ne_0";
        case Regime::unit_imag_part: return "abs_g_eq_1_im_g_ne_0";
    }
    return "?";
}
inline const char* to_string(SubcaseReading r) { return r == SubcaseReading::n1 ? "n1" : "n2"; }

struct CriterionValue {
    std::string name;
    double value = 0.0;       // the real quantity the criterion tests
    double normalized = 0.0;  // |value| over the product of its factor magnitudes
};

struct SingularPointReport {
    cplx z{};
    double Lambda = 0.0;
    cplx g{};
    cplx D{};
    double D_normalized = 0.0;
    bool nondegenerate = false;
    Regime regime = Regime::off_unit_circle;
    bool unit_band = false;       // | |g| − 1 | inside the regime band
    SubcaseReading reading = SubcaseReading::n1;
    std::vector<CriterionValue> criteria;
    std::optional<bool> readings_disagree;
    Verdict verdict = Verdict::indeterminate;
    std::string note;
};

struct ClassifyOptions {
    SubcaseReading reading = SubcaseReading::n1;
};

namespace detail {

struct CriterionInputs {
    std::array<Wz, 3> N;
    Wz g, gz_bar, omega, re_g, im_g;
    cplx g_z;
};

inline CriterionInputs criterion_inputs(const Jet& j) {
    CriterionInputs in;
    for (int k = 0; k < 3; ++k) in.N[k] = Wz::holomorphic(j.N[k], j.phi_z[k]);
    in.g = Wz::holomorphic(j.g, j.g_z);
    in.gz_bar = Wz::constant(std::conj(j.g_z));
    in.omega = Wz::holomorphic(j.omega, j.omega_z);
    in.re_g = {j.g.real(), 0.5 * j.g_z, std::abs(j.g.real()), 0.5 * std::abs(j.g_z)};
    in.im_g = {j.g.imag(), -0.5 * I * j.g_z, std::abs(j.g.imag()), 0.5 * std::abs(j.g_z)};
    in.g_z = j.g_z;
    return in;
}

// One regime's cusp quantity and swallowtail second condition.
struct RegimeValues {
    CriterionValue cusp;
    CriterionValue swallowtail_second;
};

inline RegimeValues off_unit_values(const CriterionInputs& in) {
    Wz one = Wz::constant(1.0);
    Wz g2 = in.g * in.g;
    Wz X = in.N[0] * (one + g2) + I * (in.N[1] * (one - g2));
    Wz F = X * X * in.gz_bar * in.omega;
    Wz gz = Wz::constant(in.g_z);
    Wz second = F.derivative() * X * gz;
    return {{"cusp_abs_g_ne_1", F.v.imag(), relative(F.v.imag(), F.mv)},
            {"swallowtail_abs_g_ne_1", second.v.real(), relative(second.v.real(), second.mv)}};
}

inline RegimeValues unit_values(const CriterionInputs& in, const Wz& Y, const std::string& tag) {
    Wz g2 = in.g * in.g;
    Wz cusp = Y * Y * in.gz_bar * g2 * in.omega;
    Wz first = Y * g2 * in.gz_bar * in.omega;
    Wz second = first.derivative() * in.g * in.gz_bar;
    return {{"cusp_" + tag, cusp.v.imag(), relative(cusp.v.imag(), cusp.mv)},
            {"swallowtail_" + tag, second.v.imag(), relative(second.v.imag(), second.mv)}};
}

inline Wz factor_real_part(const CriterionInputs& in) { return in.N[1] - I * (in.N[2] * in.re_g); }
inline Wz factor_imag_part(const CriterionInputs& in, SubcaseReading r) {
    return (r == SubcaseReading::n1 ? in.N[0] : in.N[1]) + I * (in.N[2] * in.im_g);
}

// Verdict of one regime once non-degeneracy is established.
inline Verdict regime_verdict(const RegimeValues& rv, const CriterionValue& nondeg, double eps) {
    if (rv.cusp.normalized > eps) return Verdict::cuspidal_edge;
    double weakest = std::min(nondeg.normalized, rv.swallowtail_second.normalized);
    if (weakest > eps) return Verdict::swallowtail;
    if (weakest < eps * eps) return Verdict::front_nondegenerate_other;
    return Verdict::indeterminate;
}

}  // namespace detail

inline SingularPointReport classify_jet(const WeierstrassData& d, const Jet& j, const Tolerances& tol = {},
                                        const ClassifyOptions& opt = {}) {
    SingularPointReport rep;
    rep.z = j.z;
    rep.Lambda = j.Lambda;
    rep.g = j.g;
    rep.reading = opt.reading;
    const double eps = tol.classify;
    if (!d.maxface) {
        rep.note = "data is not a maxface (dPhi is not a null curve); criteria do not apply";
        return rep;
    }
    if (j.g_infinite || !std::isfinite(std::abs(j.omega))) {
        rep.note = "g or omega has a pole here; criteria are stated in the chart of g";
        return rep;
    }
    auto in = detail::criterion_inputs(j);
    Wz one = Wz::constant(1.0);
    Wz g2 = in.g * in.g;
    Wz Y = in.N[0] * (one - g2) + I * (in.N[1] * (one + g2)) + 2.0 * (in.g * in.N[2]);
    Wz D = Y * Wz::constant(in.g_z);
    rep.D = D.v;
    rep.D_normalized = relative(std::abs(D.v), D.mv);
    rep.criteria.push_back({"nondegeneracy", std::abs(D.v), rep.D_normalized});
    if (rep.D_normalized <= eps) {
        rep.verdict = Verdict::degenerate;
        return rep;
    }
    rep.nondegenerate = true;

    // g_z ω̂ ⟨N, N_z̄⟩ with N_z̄ = conj(Φ_z).
    cplx inner = 0.0;
    double inner_bound = 0.0;
    for (int k = 0; k < 3; ++k) {
        inner += j.N[k] * std::conj(j.phi_z[k]);
        inner_bound += std::abs(j.N[k]) * std::abs(j.phi_z[k]);
    }
    cplx nd = j.g_z * j.omega * inner;
    CriterionValue nondeg{"swallowtail_nondegeneracy", std::abs(nd),
                          relative(std::abs(nd), std::abs(j.g_z) * std::abs(j.omega) * inner_bound)};
    rep.criteria.push_back(nondeg);

    double absg = std::abs(j.g);
    rep.unit_band = std::abs(absg - 1.0) < tol.regime;
    if (!rep.unit_band) {
        rep.regime = Regime::off_unit_circle;
        auto rv = detail::off_unit_values(in);
        rep.criteria.push_back(rv.cusp);
        rep.criteria.push_back(rv.swallowtail_second);
        rep.verdict = detail::regime_verdict(rv, nondeg, eps);
        return rep;
    }

    bool real_primary = std::abs(j.g.real()) >= std::abs(j.g.imag());
    rep.regime = real_primary ? Regime::unit_real_part : Regime::unit_imag_part;
    auto va = detail::unit_values(in, detail::factor_real_part(in), "re_g");
    auto vb = detail::unit_values(in, detail::factor_imag_part(in, opt.reading), std::string("im_g_") + to_string(opt.reading));
    SubcaseReading other = opt.reading == SubcaseReading::n1 ? SubcaseReading::n2 : SubcaseReading::n1;
    auto vb_other = detail::unit_values(in, detail::factor_imag_part(in, other), std::string("im_g_") + to_string(other));
    bool a_applies = std::abs(j.g.real()) > eps * absg;
    bool b_applies = std::abs(j.g.imag()) > eps * absg;
    std::optional<Verdict> va_verdict, vb_verdict;
    if (a_applies) {
        rep.criteria.push_back(va.cusp);
        rep.criteria.push_back(va.swallowtail_second);
        va_verdict = detail::regime_verdict(va, nondeg, eps);
    }
    if (b_applies) {
        rep.criteria.push_back(vb.cusp);
        rep.criteria.push_back(vb.swallowtail_second);
        rep.criteria.push_back(vb_other.cusp);
        rep.criteria.push_back(vb_other.swallowtail_second);
        vb_verdict = detail::regime_verdict(vb, nondeg, eps);
        rep.readings_disagree = vb_verdict != detail::regime_verdict(vb_other, nondeg, eps);
    }
    Verdict primary = real_primary ? *va_verdict : *vb_verdict;
    std::optional<Verdict> secondary = real_primary ? vb_verdict : va_verdict;
    if (secondary && *secondary != primary) {
        rep.verdict = Verdict::indeterminate;
        rep.note = "the two |g| = 1 subcases disagree";
        return rep;
    }
    rep.verdict = primary;
    return rep;
}

inline SingularPointReport classify(const WeierstrassData& d, cplx z, const BranchContext& ctx,
                                    const Tolerances& tol = {}, const ClassifyOptions& opt = {}) {
    return classify_jet(d, jet(d, z, ctx, tol, false), tol, opt);
}

struct FrontCertificate {
    bool front = false;
    std::string branch;          // "dpsi_nonzero" or "dpsi_zero_unit_normal_immersive"
    double dpsi_relative = 0.0;  // |dψ| over |N||Φ_z|
    double phi_immersion = 0.0;  // |Φ_z × Φ̄_z| / |Φ_z|²
    double normal_immersion = 0.0;  // |N| |n_z × n_z̄| for n = N/|N|
    double abs_g = 0.0;
};

// Certificate that ψ is a front at a singular point; throws if neither branch verifies.
inline FrontCertificate is_front(const WeierstrassData& d, cplx z, const BranchContext& ctx,
                                 const Tolerances& tol = {}) {
    Jet j = jet(d, z, ctx, tol, false);
    FrontCertificate c;
    c.abs_g = std::abs(j.g);
    auto [pu, pv] = psi_derivatives(j.N, j.phi_z);
    double scale = norm(j.N) * std::sqrt(std::norm(j.phi_z[0]) + std::norm(j.phi_z[1]) + std::norm(j.phi_z[2]));
    c.dpsi_relative = scale > 0 ? std::max(norm(pu), norm(pv)) / scale : 0.0;
    double pz2 = std::norm(j.phi_z[0]) + std::norm(j.phi_z[1]) + std::norm(j.phi_z[2]);
    c.phi_immersion = pz2 > 0 ? norm(imag(cross(j.phi_z, conj(j.phi_z)))) / pz2 : 0.0;
    double nN = norm(j.N);
    cplx nphi = dot(complexify(j.N), j.phi_z);
    CVec3 n_z = (1.0 / nN) * j.phi_z - (nphi / (nN * nN * nN)) * complexify(j.N);
    c.normal_immersion = nN * norm(imag(cross(n_z, conj(n_z))));
    const double thr = 1e-8;
    if (c.dpsi_relative > thr && c.phi_immersion > thr) {
        c.front = true;
        c.branch = "dpsi_nonzero";
    } else if (c.dpsi_relative <= thr && std::abs(c.abs_g - 1.0) > tol.regime && c.normal_immersion > thr) {
        c.front = true;
        c.branch = "dpsi_zero_unit_normal_immersive";
    } else {
        throw FrontCertificateError("neither front certificate branch verifies at this point");
    }
    return c;
}

struct SingularCurve {
    std::vector<cplx> points;
    std::vector<double> lambda;    // Λ at each vertex after refinement
    std::vector<bool> refined;     // Newton reached the trace tolerance
    std::vector<Verdict> tags;     // filled when classification was requested
    bool closed = false;
};

struct TraceOptions {
    int nu = 64, nv = 64;
    bool classify_vertices = false;
    ClassifyOptions classify;
};

// Newton iteration along ∇Λ: Λ(z + δ) ≈ Λ + 2 Re(Λ_z δ), δ = −Λ conj(Λ_z) / (2|Λ_z|²).
inline std::pair<cplx, Jet> refine_singular_point(const WeierstrassData& d, cplx z, double max_step,
                                                  const Tolerances& tol, bool& converged) {
    BranchContext ctx = context_at(d, z, tol);
    Jet j = jet(d, z, ctx, tol, false);
    converged = false;
    for (int it = 0; it < 40; ++it) {
        if (std::abs(j.Lambda) < tol.trace * std::max(j.sigmaCoeff, 1e-300)) {
            converged = true;
            break;
        }
        double lz2 = std::norm(j.Lambda_z);
        if (!(lz2 > 0)) break;
        cplx step = -j.Lambda * std::conj(j.Lambda_z) / (2 * lz2);
        if (std::abs(step) > max_step) step *= max_step / std::abs(step);
        cplx next = z + step;
        try {
            BranchContext c2 = ctx;
            Path p = plan_path(z, next, d.domain.punctures, tol.path_clearance);
            transport(d, c2, p);
            Jet j2 = jet(d, next, c2, tol, false);
            if (!std::isfinite(j2.Lambda)) break;
            z = next;
            ctx = std::move(c2);
            j = j2;
        } catch (const std::runtime_error&) {
            break;
        }
    }
    return {z, j};
}

// Λ on the window grid, as a (nu+1) × nv' array (nv' = nv for annuli, nv+1 otherwise).
struct IdentifierGrid {
    Window window;
    std::vector<double> us, vs;
    std::vector<double> values;  // row-major [i][j]; NaN where evaluation failed
    double at(std::size_t i, std::size_t j) const { return values[i * vs.size() + j]; }
};

inline IdentifierGrid identifier_grid(const WeierstrassData& d, const Window& w, int nu, int nv,
                                      const Tolerances& tol = {}) {
    IdentifierGrid grid;
    grid.window = w;
    grid.us = uniform_nodes(nu, false);
    grid.vs = uniform_nodes(nv, w.periodic_v());
    grid.values.assign(grid.us.size() * grid.vs.size(), std::numeric_limits<double>::quiet_NaN());
    walk_grid(d, w, grid.us, grid.vs, tol, {}, [&](const GridSample& s) {
        if (!s.ctx) return;
        try {
            grid.values[s.i * grid.vs.size() + s.j] = identifier_with(d, s.z, *s.ctx, s.phi);
        } catch (const std::runtime_error&) {
        }
    });
    return grid;
}

namespace detail {

// Edge key: (orientation, i, j); orientation 0 joins (i,j)-(i+1,j), 1 joins (i,j)-(i,j+1).
using EdgeKey = std::tuple<int, int, int>;

struct Segment {
    EdgeKey a, b;
};

inline std::vector<std::vector<EdgeKey>> stitch(const std::vector<Segment>& segs, std::vector<bool>& closed) {
    std::map<EdgeKey, std::vector<int>> at;
    for (int k = 0; k < static_cast<int>(segs.size()); ++k) {
        at[segs[k].a].push_back(k);
        at[segs[k].b].push_back(k);
    }
    std::vector<bool> used(segs.size(), false);
    std::vector<std::vector<EdgeKey>> chains;
    auto other_end = [&](int s, const EdgeKey& e) { return segs[s].a == e ? segs[s].b : segs[s].a; };
    auto next_segment = [&](const EdgeKey& e) {
        for (int s : at[e])
            if (!used[s]) return s;
        return -1;
    };
    // Open chains start at edges touched once.
    std::vector<EdgeKey> starts;
    for (const auto& [e, list] : at)
        if (list.size() == 1) starts.push_back(e);
    for (const auto& [e, list] : at) starts.push_back(e);
    for (const auto& start : starts) {
        int s = next_segment(start);
        if (s < 0) continue;
        std::vector<EdgeKey> chain{start};
        EdgeKey cur = start;
        while (s >= 0) {
            used[s] = true;
            cur = other_end(s, cur);
            chain.push_back(cur);
            s = next_segment(cur);
        }
        bool is_closed = chain.size() > 2 && chain.front() == chain.back();
        if (is_closed) chain.pop_back();
        closed.push_back(is_closed);
        chains.push_back(std::move(chain));
    }
    return chains;
}

}  // namespace detail

// Marching squares on Λ over the window, then Newton refinement of each vertex.
inline std::vector<SingularCurve> trace_singular_set(const WeierstrassData& d, const Window& w,
                                                     const TraceOptions& opt = {}, const Tolerances& tol = {}) {
    if (opt.nu < 16 || opt.nv < 16) throw std::invalid_argument("grid resolution must be at least 16");
    IdentifierGrid grid = identifier_grid(d, w, opt.nu, opt.nv, tol);
    const int NU = static_cast<int>(grid.us.size()), NV = static_cast<int>(grid.vs.size());
    const bool periodic = w.periodic_v();
    const int cells_v = periodic ? NV : NV - 1;
    auto val = [&](int i, int j) { return grid.at(i, periodic ? j % NV : j); };
    auto wrap = [&](int j) { return periodic ? j % NV : j; };
    auto positive = [](double x) { return x >= 0.0; };

    std::vector<detail::Segment> segs;
    for (int i = 0; i + 1 < NU; ++i)
        for (int j = 0; j < cells_v; ++j) {
            double a = val(i, j), b = val(i + 1, j), c = val(i + 1, j + 1), e = val(i, j + 1);
            if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(e)) continue;
            detail::EdgeKey bottom{0, i, wrap(j)}, right{1, i + 1, wrap(j)}, top{0, i, wrap(j + 1)}, left{1, i, wrap(j)};
            std::vector<detail::EdgeKey> cut;
            if (positive(a) != positive(b)) cut.push_back(bottom);
            if (positive(b) != positive(c)) cut.push_back(right);
            if (positive(c) != positive(e)) cut.push_back(top);
            if (positive(e) != positive(a)) cut.push_back(left);
            if (cut.size() == 2) {
                segs.push_back({cut[0], cut[1]});
            } else if (cut.size() == 4) {
                // Saddle: the centre value decides which corners connect.
                bool centre = positive(0.25 * (a + b + c + e));
                if (centre == positive(a)) {
                    segs.push_back({bottom, right});
                    segs.push_back({top, left});
                } else {
                    segs.push_back({bottom, left});
                    segs.push_back({right, top});
                }
            }
        }

    std::vector<bool> closed;
    auto chains = detail::stitch(segs, closed);
    double du = 1.0 / opt.nu, dv = 1.0 / opt.nv;
    auto crossing = [&](const detail::EdgeKey& e) {
        auto [o, i, j] = e;
        int i2 = o == 0 ? i + 1 : i, j2 = o == 0 ? j : j + 1;
        double fa = val(i, j), fb = val(i2, j2);
        double t = fa / (fa - fb);
        double u = grid.us[i] + (o == 0 ? t * du : 0.0);
        double v = grid.vs[j] + (o == 1 ? t * dv : 0.0);
        return w.at(u, v);
    };
    double cell = 0.0;
    {
        cplx z0 = w.at(0.5, 0.5);
        cplx z1 = w.at(0.5 + du, 0.5 + dv);
        cell = std::abs(z1 - z0);
        auto [tu, tv] = w.tangents(0.5, 0.5);
        cell = std::max(cell, std::hypot(std::abs(tu) * du, std::abs(tv) * dv));
    }

    std::vector<SingularCurve> curves;
    for (std::size_t k = 0; k < chains.size(); ++k) {
        SingularCurve sc;
        sc.closed = closed[k];
        for (const auto& e : chains[k]) {
            cplx z = crossing(e);
            bool ok = false;
            try {
                auto [zr, j] = refine_singular_point(d, z, 0.5 * cell, tol, ok);
                sc.points.push_back(zr);
                sc.lambda.push_back(j.Lambda);
                sc.refined.push_back(ok);
                if (opt.classify_vertices) sc.tags.push_back(classify_jet(d, j, tol, opt.classify).verdict);
            } catch (const std::runtime_error&) {
                sc.points.push_back(z);
                sc.lambda.push_back(std::numeric_limits<double>::quiet_NaN());
                sc.refined.push_back(false);
                if (opt.classify_vertices) sc.tags.push_back(Verdict::indeterminate);
            }
        }
        if (sc.points.size() >= 2) curves.push_back(std::move(sc));
    }
    return curves;
}

}  // namespace maxface
