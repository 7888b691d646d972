#pragma once

// Period conditions on loops around each finite puncture:
//   (1) Re ∮ dΦ = 0          (N = Φ + Φ̄ single-valued)
//   (2) Re(i ∮ N × dΦ) = 0   (ψ single-valued)

#include <string>
#include <vector>

#include "maxface.hpp"

namespace maxface {

struct LoopPeriod {
    cplx puncture{};
    double radius = 0.0;
    CVec3 loop_dphi{};       // ∮ dΦ
    CVec3 loop_n_cross{};    // ∮ N × dΦ
    double residual_conormal = 0.0;  // max_k |Re ∮ dΦ_k|
    double residual_psi = 0.0;       // max_k |Re(i ∮ (N × dΦ)_k)|
};

struct PeriodReport {
    std::vector<LoopPeriod> loops;
    double tolerance = 0.0;
    bool pass = true;
    std::string note;
};

// ∮ dΦ and ∮ N × dΦ along a closed path, with N continued from the path start.
inline std::pair<CVec3, CVec3> loop_integrals(const WeierstrassData& d, const Path& loop, const Tolerances& tol) {
    BranchContext ctx = context_at(d, loop.start(), tol);
    auto tracked = tracked_exprs(d);
    CVec3 phi_start = phi(d, loop.start(), ctx, tol);
    CVec3 total_dphi{}, total_cross{};
    CVec3 acc_phi = phi_start;
    double share = tol.quad / static_cast<double>(loop.pieces().size());
    for (const auto& whole : loop.pieces()) {
        std::vector<PathPiece> work{whole};
        while (!work.empty()) {
            PathPiece piece = work.back();
            work.pop_back();
            try {
                const BranchContext& frozen = ctx;
                auto dphi_at = [&](double t) -> CVec3 {
                    return piece.velocity(t) * eval3(d.dphi, piece.at(t), frozen);
                };
                auto phi_at = [&](double t) -> CVec3 {
                    if (d.phi) return eval3(*d.phi, piece.at(t), frozen);
                    if (t == 0.0) return acc_phi;
                    return acc_phi + integrate_adaptive<CVec3>(dphi_at, 0.0, t, 0.1 * share, tol.max_depth).value;
                };
                auto n_cross_at = [&](double t) -> CVec3 {
                    CVec3 N = complexify(2.0 * real(phi_at(t)));
                    return piece.velocity(t) * cross(N, eval3(d.dphi, piece.at(t), frozen));
                };
                CVec3 dphi = integrate_adaptive<CVec3>(dphi_at, 0.0, 1.0, share, tol.max_depth).value;
                CVec3 nc = integrate_adaptive<CVec3>(n_cross_at, 0.0, 1.0, share, tol.max_depth).value;
                ctx.move_to(piece.end(), tracked);
                total_dphi = total_dphi + dphi;
                total_cross = total_cross + nc;
                acc_phi = d.phi ? eval3(*d.phi, piece.end(), ctx) : acc_phi + dphi;
            } catch (const BranchError&) {
                auto [l, r] = piece.split();
                work.push_back(r);
                work.push_back(l);
            }
        }
    }
    return {total_dphi, total_cross};
}

inline PeriodReport check_periods(const WeierstrassData& d, const Tolerances& tol = {}) {
    PeriodReport rep;
    rep.tolerance = tol.period;
    if (d.domain.punctures.empty()) {
        rep.note = "simply connected domain: no generator loops";
        return rep;
    }
    for (cplx p : d.domain.punctures) {
        LoopPeriod lp;
        lp.puncture = p;
        lp.radius = default_residue_radius(p, d.domain.punctures);
        Path loop = Path::circle(p, lp.radius);
        auto [dphi, nc] = loop_integrals(d, loop, tol);
        lp.loop_dphi = dphi;
        lp.loop_n_cross = nc;
        for (int k = 0; k < 3; ++k) {
            lp.residual_conormal = std::max(lp.residual_conormal, std::abs(dphi[k].real()));
            lp.residual_psi = std::max(lp.residual_psi, std::abs((I * nc[k]).real()));
        }
        if (lp.residual_conormal >= tol.period || lp.residual_psi >= tol.period) rep.pass = false;
        rep.loops.push_back(lp);
    }
    return rep;
}

}  // namespace maxface
