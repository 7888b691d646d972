#pragma once

// Global invariants: degree of g and total curvature, Osserman-type
// inequality, end regularity, accumulation of the singular set at ends,
// weak completeness along rays, and the completeness taxonomy.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "maxface.hpp"
#include "rational.hpp"
#include "sampling.hpp"
#include "window.hpp"

namespace maxface {

inline std::optional<int> gauss_map_degree(const WeierstrassData& d) { return rational_degree(d.g); }

struct TotalCurvature {
    std::optional<int> degree;
    std::optional<double> exact;  // −4π deg(g) when g is rational
    std::optional<double> numeric;
    std::string note;
};

namespace detail {

// 8-point Gauss–Legendre nodes/weights on [0, 1].
inline const std::array<std::pair<double, double>, 8>& gauss_legendre8() {
    static const std::array<std::pair<double, double>, 8> table = [] {
        const double x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
        const double wt[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
        std::array<std::pair<double, double>, 8> t{};
        for (int k = 0; k < 4; ++k) {
            t[2 * k] = {0.5 * (1 - x[k]), 0.5 * wt[k]};
            t[2 * k + 1] = {0.5 * (1 + x[k]), 0.5 * wt[k]};
        }
        return t;
    }();
    return table;
}

// Composite Gauss–Legendre nodes and weights on [0, 1] with `panels` panels.
inline std::pair<std::vector<double>, std::vector<double>> composite_nodes(int panels) {
    std::vector<double> x, w;
    for (int p = 0; p < panels; ++p)
        for (auto [t, wt] : gauss_legendre8()) {
            x.push_back((p + t) / panels);
            w.push_back(wt / panels);
        }
    return {x, w};
}

// K dA = −4|g_z|² / (1+|g|²)² dx dy, using the chart 1/g where |g| > 1.
inline double curvature_density(const WeierstrassData& d, cplx z, const BranchContext& ctx) {
    GaussValue gv = gauss_value(d, z, ctx);
    if (gv.inverted) return -4 * std::norm(gv.h_z) / std::pow(1 + std::norm(gv.h), 2);
    return -4 * std::norm(gv.g_z) / std::pow(1 + std::norm(gv.g), 2);
}

}  // namespace detail

// ∫ K_{dσ²} dA over the window by a composite Gauss–Legendre product rule.
inline double numeric_total_curvature(const WeierstrassData& d, const Window& w, int panels_u = 64,
                                      int panels_v = 64, const Tolerances& tol = {}) {
    auto [us, wu] = detail::composite_nodes(panels_u);
    auto [vs, wv] = detail::composite_nodes(panels_v);
    std::vector<double> row_sums(us.size(), 0.0);
    WalkOptions opt;
    opt.want_phi = false;
    walk_grid(d, w, us, vs, tol, opt, [&](const GridSample& s) {
        if (!s.ctx) return;
        double k;
        try {
            k = detail::curvature_density(d, s.z, *s.ctx);
        } catch (const std::runtime_error&) {
            return;
        }
        if (!std::isfinite(k)) return;
        auto [tu, tv] = w.tangents(us[s.i], vs[s.j]);
        double jac = std::abs((std::conj(tu) * tv).imag());
        row_sums[s.i] += wv[s.j] * k * jac;
    });
    double total = 0.0;
    for (std::size_t i = 0; i < us.size(); ++i) total += wu[i] * row_sums[i];
    return total;
}

inline TotalCurvature total_curvature(const WeierstrassData& d, std::optional<Window> window = std::nullopt) {
    TotalCurvature tc;
    tc.degree = gauss_map_degree(d);
    if (tc.degree) {
        tc.exact = -4 * pi * *tc.degree;
    } else {
        tc.note = "g is not rational: degree undefined, total curvature unbounded/undefined";
    }
    if (window) tc.numeric = numeric_total_curvature(d, *window);
    return tc;
}

enum class Regularity { regular, irregular, inconclusive };
enum class Accumulation { accumulates, bounded_away, inconclusive };

inline const char* to_string(Regularity r) {
    return r == Regularity::regular ? "regular" : r == Regularity::irregular ? "irregular" : "inconclusive";
}
inline const char* to_string(Accumulation a) {
    return a == Accumulation::accumulates ? "accumulates"
           : a == Accumulation::bounded_away ? "bounded_away"
                                             : "inconclusive";
}

struct EndRegularity {
    End end;
    Regularity regularity = Regularity::inconclusive;
    std::optional<int> pole_order;          // of dΦ in the local chart
    std::vector<int> component_pole_orders;
    bool embedded_candidate = false;
    bool low_confidence = false;
    double radius_mismatch = 0.0;           // Laurent coefficients at the two radii
};

namespace detail {

// Local chart radius and centre for an end: w = z − p, or w = 1/z at ∞.
inline double end_chart_radius(const DomainSpec& dom, const End& e) {
    if (!e.at_infinity) return default_residue_radius(e.point, dom.punctures);
    double far = 0.0;
    for (cplx p : dom.punctures) far = std::max(far, std::abs(p));
    return far > 0 ? std::min(1.0, 0.5 / far) : 1.0;
}

inline cplx end_point(const End& e, cplx w) { return e.at_infinity ? 1.0 / w : e.point + w; }

// Samples of dΦ/dw on |w| = r (M points), carried continuously around the circle.
inline std::vector<CVec3> chart_samples(const WeierstrassData& d, const End& e, double r, int M,
                                        const Tolerances& tol) {
    std::vector<CVec3> out(M);
    cplx z0 = end_point(e, r);
    BranchContext ctx = context_at(d, z0, tol);
    auto tracked = tracked_exprs(d);
    for (int k = 0; k < M; ++k) {
        cplx w = std::polar(r, 2 * pi * k / M);
        cplx z = end_point(e, w);
        if (k > 0) ctx.move_to(z, tracked);
        CVec3 dz = eval3(d.dphi, z, ctx);
        // dz/dw = −1/w² in the chart at ∞.
        out[k] = e.at_infinity ? (-1.0 / (w * w)) * dz : dz;
    }
    return out;
}

// Laurent coefficients a_k, k ∈ [kmin, kmax], by the trapezoid rule.
inline std::vector<CVec3> laurent_coefficients(const std::vector<CVec3>& samples, double r, int kmin, int kmax) {
    const int M = static_cast<int>(samples.size());
    std::vector<CVec3> a;
    for (int k = kmin; k <= kmax; ++k) {
        CVec3 acc{};
        for (int m = 0; m < M; ++m) {
            cplx basis = std::polar(std::pow(r, -k), -2 * pi * k * m / M);
            acc = acc + (basis / static_cast<double>(M)) * samples[m];
        }
        a.push_back(acc);
    }
    return a;
}

}  // namespace detail

// Fits the Laurent expansion of dΦ at an end from two circles (radius r and r/2).
inline EndRegularity end_regularity(const WeierstrassData& d, const End& e, const Tolerances& tol = {}) {
    EndRegularity er;
    er.end = e;
    const int K = tol.laurent_order;
    const int M = 256;
    const int kmin = -K - 8, kmax = 8;
    double r1 = detail::end_chart_radius(d.domain, e);
    double radii[2] = {r1, 0.5 * r1};
    std::vector<CVec3> coef[2];
    bool tail_clean[2];
    std::array<int, 3> orders[2];
    for (int q = 0; q < 2; ++q) {
        auto samples = detail::chart_samples(d, e, radii[q], M, tol);
        coef[q] = detail::laurent_coefficients(samples, radii[q], kmin, kmax);
        // Size of each term on the circle, relative to the largest.
        double biggest = 0.0;
        for (std::size_t k = 0; k < coef[q].size(); ++k)
            for (int c = 0; c < 3; ++c)
                biggest = std::max(biggest, std::abs(coef[q][k][c]) * std::pow(radii[q], kmin + static_cast<int>(k)));
        double thresh = 1e-9 * biggest;
        tail_clean[q] = true;
        orders[q] = {0, 0, 0};
        for (int c = 0; c < 3; ++c) {
            int lowest = kmax + 1;
            for (std::size_t k = 0; k < coef[q].size(); ++k) {
                int power = kmin + static_cast<int>(k);
                if (std::abs(coef[q][k][c]) * std::pow(radii[q], power) > thresh) {
                    lowest = std::min(lowest, power);
                    if (power < -K) tail_clean[q] = false;
                }
            }
            orders[q][c] = lowest > kmax ? 0 : std::max(0, -lowest);
        }
    }
    // Coefficients of a genuine Laurent expansion do not depend on the radius.
    double scale = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < coef[0].size(); ++k) {
        int power = kmin + static_cast<int>(k);
        if (power < -K) continue;
        for (int c = 0; c < 3; ++c) {
            scale = std::max(scale, std::abs(coef[0][k][c]) * std::pow(radii[1], power));
            diff = std::max(diff, std::abs(coef[0][k][c] - coef[1][k][c]) * std::pow(radii[1], power));
        }
    }
    er.radius_mismatch = scale > 0 ? diff / scale : 0.0;
    if (tail_clean[0] && tail_clean[1] && er.radius_mismatch < 1e-6) {
        er.regularity = Regularity::regular;
        er.component_pole_orders = {orders[1][0], orders[1][1], orders[1][2]};
        er.pole_order = std::max({orders[1][0], orders[1][1], orders[1][2]});
        bool some_lower = std::any_of(er.component_pole_orders.begin(), er.component_pole_orders.end(),
                                      [](int o) { return o < 2; });
        er.embedded_candidate = *er.pole_order == 2 && some_lower;
    } else if (!tail_clean[0] && !tail_clean[1]) {
        er.regularity = Regularity::irregular;
        er.low_confidence = er.radius_mismatch >= 1e-6;
    } else {
        er.regularity = Regularity::inconclusive;
        er.low_confidence = true;
    }
    return er;
}

struct AccumulationProbe {
    End end;
    Accumulation verdict = Accumulation::inconclusive;
    std::vector<double> radii;
    std::vector<int> sign_changes;   // per circle
    std::vector<double> min_abs;     // min |Λ| per circle
    std::vector<int> valid_samples;
};

// Λ on circles shrinking to the end (or growing, at ∞).
inline AccumulationProbe accumulation_probe(const WeierstrassData& d, const End& e, const Tolerances& tol = {}) {
    AccumulationProbe pr;
    pr.end = e;
    const int K = tol.accumulation_circles, M = tol.accumulation_samples;
    double r0 = e.at_infinity ? 2.0 : 0.5;
    if (e.at_infinity) {
        for (cplx p : d.domain.punctures) r0 = std::max(r0, 2 * std::abs(p) + 2);
    } else {
        r0 = std::min(r0, default_residue_radius(e.point, d.domain.punctures));
    }
    std::vector<double> vs = uniform_nodes(M, true);
    for (int k = 1; k <= K; ++k) {
        double r = e.at_infinity ? r0 * std::pow(1.5, k) : r0 / std::pow(1.5, k);
        pr.radii.push_back(r);
        Window circle = Window::annulus(e.at_infinity ? cplx(0.0) : e.point, r, 2 * r);
        std::vector<double> us{0.0};
        std::vector<double> lam(vs.size(), std::numeric_limits<double>::quiet_NaN());
        WalkOptions opt;
        opt.parallel = false;
        walk_grid(d, circle, us, vs, tol, opt, [&](const GridSample& s) {
            if (!s.ctx) return;
            try {
                lam[s.j] = identifier_with(d, s.z, *s.ctx, s.phi);
            } catch (const std::runtime_error&) {
            }
        });
        int changes = 0, valid = 0;
        double mn = std::numeric_limits<double>::infinity();
        int last_sign = 0, first_sign = 0;
        for (double x : lam) {
            if (!std::isfinite(x)) continue;
            ++valid;
            mn = std::min(mn, std::abs(x));
            int sg = x >= 0 ? 1 : -1;
            if (last_sign != 0 && sg != last_sign) ++changes;
            if (first_sign == 0) first_sign = sg;
            last_sign = sg;
        }
        pr.sign_changes.push_back(changes);
        pr.min_abs.push_back(mn);
        pr.valid_samples.push_back(valid);
    }
    const int tail = 6;
    bool all_change = true, none_change = true, growing = true;
    for (int k = K - tail; k < K; ++k) {
        if (pr.valid_samples[k] == 0) {
            all_change = none_change = false;
            continue;
        }
        if (pr.sign_changes[k] == 0) all_change = false;
        if (pr.sign_changes[k] != 0) none_change = false;
        if (k > K - tail && !(pr.min_abs[k] >= pr.min_abs[k - 1] * (1 - 1e-9))) growing = false;
    }
    if (all_change) {
        pr.verdict = Accumulation::accumulates;
    } else if (none_change && growing) {
        pr.verdict = Accumulation::bounded_away;
    }
    return pr;
}

struct RayTest {
    End end;
    std::vector<double> lengths;  // dσ²-length along each ray (inf when it overflows)
    bool divergent = false;       // every ray exceeds the length threshold
};

// dσ²-length of radial rays toward an end, with ds = √2 |Φ_z| |dz|.
inline RayTest ray_test(const WeierstrassData& d, const End& e, const Tolerances& tol = {}, int rays = 16) {
    RayTest rt;
    rt.end = e;
    double r_start = e.at_infinity ? 2.0 : 0.5;
    if (e.at_infinity) {
        for (cplx p : d.domain.punctures) r_start = std::max(r_start, 2 * std::abs(p) + 2);
    } else {
        r_start = std::min(r_start, default_residue_radius(e.point, d.domain.punctures));
    }
    double r_stop = e.at_infinity ? 1e8 : 1e-10;
    double s0 = std::log(r_start), s1 = std::log(r_stop);
    const int steps = static_cast<int>(std::ceil(std::abs(s1 - s0) / 0.05));
    auto [xs, ws] = detail::composite_nodes(1);
    rt.divergent = true;
    auto tracked = tracked_exprs(d);
    for (int a = 0; a < rays; ++a) {
        double theta = 2 * pi * (a + 0.5) / rays;
        cplx dir = std::polar(1.0, theta);
        cplx center = e.at_infinity ? cplx(0.0) : e.point;
        double length = 0.0;
        try {
            BranchContext ctx = context_at(d, center + r_start * dir, tol);
            for (int k = 0; k < steps && length <= tol.ray_length; ++k) {
                double sa = s0 + (s1 - s0) * k / steps, sb = s0 + (s1 - s0) * (k + 1) / steps;
                for (std::size_t q = 0; q < xs.size(); ++q) {
                    double s = sa + (sb - sa) * xs[q];
                    double r = std::exp(s);
                    cplx z = center + r * dir;
                    ctx.move_to(z, tracked);
                    CVec3 pz = eval3(d.dphi, z, ctx);
                    double speed = std::sqrt(2 * (std::norm(pz[0]) + std::norm(pz[1]) + std::norm(pz[2])));
                    length += ws[q] * std::abs(sb - sa) * r * speed;
                }
                if (!std::isfinite(length)) length = std::numeric_limits<double>::infinity();
            }
        } catch (const std::runtime_error&) {
            // An evaluation that overflows toward the end counts as divergence.
            length = std::numeric_limits<double>::infinity();
        }
        rt.lengths.push_back(length);
        if (!(length > tol.ray_length)) rt.divergent = false;
    }
    return rt;
}

enum class OssermanVerdict { strict, equality, violated, inapplicable };
enum class CompletenessClass { complete_regular, weakly_complete_only, not_weakly_complete, unknown };

inline const char* to_string(OssermanVerdict v) {
    switch (v) {
        case OssermanVerdict::strict: return "strict";
        case OssermanVerdict::equality: return "equality";
        case OssermanVerdict::violated: return "violated";
        case OssermanVerdict::inapplicable: return "inapplicable";
    }
    return "?";
}
inline const char* to_string(CompletenessClass c) {
    switch (c) {
        case CompletenessClass::complete_regular: return "complete_regular";
        case CompletenessClass::weakly_complete_only: return "weakly_complete_only";
        case CompletenessClass::not_weakly_complete: return "not_weakly_complete";
        case CompletenessClass::unknown: return "unknown";
    }
    return "?";
}

struct OssermanCheck {
    std::optional<int> degree;
    int genus = 0, end_count = 0;
    std::optional<int> lhs;
    int rhs = 0;
    OssermanVerdict verdict = OssermanVerdict::inapplicable;
};

// 2 deg(g) ≥ 2γ − 2 + 2n.
inline OssermanCheck osserman_check(std::optional<int> degree, int genus, int end_count) {
    OssermanCheck oc;
    oc.degree = degree;
    oc.genus = genus;
    oc.end_count = end_count;
    oc.rhs = 2 * genus - 2 + 2 * end_count;
    if (!degree) return oc;
    oc.lhs = 2 * *degree;
    oc.verdict = *oc.lhs > oc.rhs ? OssermanVerdict::strict
                 : *oc.lhs == oc.rhs ? OssermanVerdict::equality
                                     : OssermanVerdict::violated;
    return oc;
}

struct EndReport {
    EndRegularity regularity;
    AccumulationProbe accumulation;
    RayTest rays;
};

struct GlobalReport {
    bool maxface = true;
    TotalCurvature curvature;
    OssermanCheck osserman;
    bool embedded_consistent = true;   // equality ⇒ every end is an embedded candidate
    std::vector<EndReport> ends;
    CompletenessClass completeness = CompletenessClass::unknown;
    std::string note;
};

inline CompletenessClass completeness_classify(const std::optional<int>& degree, const std::vector<EndReport>& ends) {
    bool weakly = true;
    for (const auto& e : ends)
        if (!e.rays.divergent) weakly = false;
    if (!weakly) return CompletenessClass::not_weakly_complete;
    bool all_regular = true, all_bounded = true, some_accumulates = false, some_irregular = false;
    for (const auto& e : ends) {
        if (e.regularity.regularity != Regularity::regular) all_regular = false;
        if (e.regularity.regularity == Regularity::irregular) some_irregular = true;
        if (e.accumulation.verdict != Accumulation::bounded_away) all_bounded = false;
        if (e.accumulation.verdict == Accumulation::accumulates) some_accumulates = true;
    }
    if (degree && all_regular && all_bounded) return CompletenessClass::complete_regular;
    if (some_accumulates || some_irregular || !degree) return CompletenessClass::weakly_complete_only;
    return CompletenessClass::unknown;
}

inline GlobalReport global_report(const WeierstrassData& d, std::optional<Window> window = std::nullopt,
                                  const Tolerances& tol = {}) {
    GlobalReport rep;
    rep.maxface = d.maxface;
    rep.curvature = total_curvature(d, window);
    rep.osserman = osserman_check(d.maxface ? rep.curvature.degree : std::nullopt, d.domain.genus,
                                  d.domain.end_count());
    for (const End& e : d.domain.ends()) {
        EndReport er;
        er.regularity = end_regularity(d, e, tol);
        er.accumulation = accumulation_probe(d, e, tol);
        er.rays = ray_test(d, e, tol);
        rep.ends.push_back(std::move(er));
    }
    if (rep.osserman.verdict == OssermanVerdict::equality)
        for (const auto& e : rep.ends)
            if (!e.regularity.embedded_candidate) rep.embedded_consistent = false;
    rep.completeness = completeness_classify(rep.curvature.degree, rep.ends);
    rep.note = "completeness verdicts are numeric diagnostics (ray lengths, Laurent fits, sign probes), not proofs";
    if (!d.maxface) rep.note += "; data is not a maxface, so the Osserman inequality does not apply";
    return rep;
}

}  // namespace maxface
